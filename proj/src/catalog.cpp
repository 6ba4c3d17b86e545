#include "subsq/catalog.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "subsq/transform.hpp"

namespace subsq {

namespace {

nlohmann::json record_to_json(const CatalogRecord& record) {
    const Square& s = record.representative;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < s.order(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < s.order(); ++j)
            row.push_back(s.at(i, j));
        rows.push_back(std::move(row));
    }
    const bool canonical = s.cells() == record.canonical_key;
    return {{"n", s.order()},          {"cells", rows},
            {"residuum", record.residuum}, {"canonical", canonical},
            {"source", record.source}};
}

CatalogRecord record_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("cells") ||
        !doc.contains("residuum"))
        throw std::runtime_error("missing record fields");
    const int n = doc.at("n").get<int>();
    std::vector<Value> cells;
    for (const auto& row : doc.at("cells"))
        for (const auto& v : row)
            cells.push_back(v.get<Value>());
    Square rep(n, std::move(cells));
    CatalogRecord record{rep, canonical_form(rep).cells(),
                         doc.at("residuum").get<Value>(),
                         doc.value("source", std::string{})};
    return record;
}

void check_invariants(const CatalogRecord& record) {
    if (record.canonical_key != canonical_form(record.representative).cells())
        throw std::invalid_argument(
            "catalog record: canonical key does not match the square");
    const auto report = verify(record.representative);
    if (!report.is_magic || *report.residuum != record.residuum)
        throw std::invalid_argument(
            "catalog record: stored residuum fails verification");
}

}  // namespace

CatalogRecord make_record(const Square& square, const std::string& source) {
    const auto report = verify(square);
    if (!report.is_magic)
        throw std::invalid_argument("make_record: square is not magic");
    return CatalogRecord{square, canonical_form(square).cells(),
                         *report.residuum, source};
}

Catalog::Catalog(std::string path) : path_(std::move(path)) {
    CatalogContents existing = load_catalog(path_);
    for (const CatalogRecord& record : existing.records)
        keys_.insert(record.canonical_key);
}

bool Catalog::append(const CatalogRecord& record) {
    check_invariants(record);
    if (!keys_.insert(record.canonical_key).second)
        return false;
    std::ofstream out(path_, std::ios::app);
    if (!out)
        throw std::runtime_error("catalog: cannot open " + path_);
    out << record_to_json(record).dump() << '\n';
    out.flush();
    if (!out)
        throw std::runtime_error("catalog: write failed on " + path_);
    return true;
}

CatalogContents load_catalog(const std::string& path) {
    CatalogContents contents;
    std::ifstream in(path);
    if (!in)
        return contents;  // absent file: empty catalog

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::pair<std::size_t, std::string>> pending;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        pending.emplace_back(line_no, line);
    }
    for (std::size_t i = 0; i < pending.size(); ++i) {
        try {
            CatalogRecord record = record_from_json(
                nlohmann::json::parse(pending[i].second));
            check_invariants(record);
            contents.stats.per_order[record.representative.order()]++;
            contents.stats.per_residuum[record.residuum]++;
            contents.records.push_back(std::move(record));
        } catch (const std::exception& e) {
            if (i + 1 == pending.size()) {
                contents.stats.skipped_partial = 1;  // crash-resume
            } else {
                throw std::runtime_error("catalog " + path + " line " +
                                         std::to_string(pending[i].first) +
                                         ": " + e.what());
            }
        }
    }
    contents.stats.record_count = contents.records.size();
    return contents;
}

}  // namespace subsq
