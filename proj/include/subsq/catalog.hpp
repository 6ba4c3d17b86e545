#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "subsq/core.hpp"

// Append-only, line-delimited catalog of found squares, deduplicated by
// canonical form. Survives crashes: a truncated final line is tolerated on
// load so long searches can resume.

namespace subsq {

struct CatalogRecord {
    Square representative;     // first-discovered square in the class
    std::vector<Value> canonical_key;
    Value residuum = 0;
    std::string source;        // config fingerprint (mode, seed, worker)
};

// Builds a record from a square, computing the canonical key and residuum.
// Throws if the square is not magic.
CatalogRecord make_record(const Square& square, const std::string& source);

struct CatalogStats {
    std::size_t record_count = 0;
    std::size_t skipped_partial = 0;  // truncated trailing line, if any
    std::map<int, std::size_t> per_order;
    std::map<Value, std::size_t> per_residuum;
};

class Catalog {
public:
    // Opens (creating if absent) and hydrates the dedup key set from
    // existing records. Throws std::runtime_error on malformed content.
    explicit Catalog(std::string path);

    // Inserts iff the canonical key is unseen; flushes before returning.
    // Re-verifies the record invariants and rejects violations.
    bool append(const CatalogRecord& record);

    std::size_t size() const { return keys_.size(); }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::set<std::vector<Value>> keys_;
};

struct CatalogContents {
    std::vector<CatalogRecord> records;
    CatalogStats stats;
};

// Reads all complete records. A malformed final line is skipped and
// counted (crash-resume); a malformed line elsewhere is a hard error
// reported with its line number.
CatalogContents load_catalog(const std::string& path);

}  // namespace subsq
