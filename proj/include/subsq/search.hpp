#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "subsq/core.hpp"

// Exhaustive backtracking enumeration with residuum-bound pruning and
// symmetry breaking for small orders, and seeded randomized restart search
// for larger ones (notably order 6 with residuum 18).

namespace subsq {

enum class SearchMode { Exhaustive, Randomized };

struct SearchConfig {
    int order = 4;
    SearchMode mode = SearchMode::Exhaustive;
    std::optional<Value> target_residuum;
    std::uint64_t seed = 0;          // randomized mode
    int worker_count = 1;
    std::optional<std::uint64_t> limit;  // randomized: squares to emit
    bool count_only = false;
    bool prune = true;  // debug switch; disabling must not change counts
    // Exhaustive only: pin the first cells of the fill schedule (row 1
    // left to right first) to these values, restricting the search to
    // that subspace.
    std::vector<Value> fixed_prefix;
    std::uint64_t restart_node_cap = 500'000;  // randomized mode
};

struct EnumerationResult {
    std::uint64_t raw_count = 0;       // magic squares in all 8 orientations
    std::uint64_t distinct_count = 0;  // D4 equivalence classes
    std::uint64_t nodes_visited = 0;
    double elapsed_seconds = 0.0;
    SearchConfig config;
};

// Sound bounds on the residuum of any completion of a partial line with
// slots_remaining distinct values drawn from available. Exact for small
// completion spaces, otherwise a cheap interval relaxation; never excludes
// an achievable residuum.
std::pair<Value, Value> residuum_bounds(std::span<const Value> partial,
                                        int slots_remaining,
                                        std::span<const Value> available);

using SquareSink = std::function<void(const Square&)>;

// Visits every normal square of the given order (up to a corner-based
// symmetry break), collects the magic ones by canonical form, and reports
// exact raw and distinct counts. Emits one representative per D4 class in
// lexicographic order of the canonical form. Counts are identical for any
// worker_count. Requires n^2 <= 64.
EnumerationResult enumerate_exhaustive(const SearchConfig& config,
                                       const SquareSink& sink = nullptr);

// Restart-based randomized backtracking. Emits verified normal magic
// squares of subtraction until the limit is reached; the stream is a
// deterministic function of (seed, worker_count, limit). Output is ordered
// by (worker id, discovery index).
void search_randomized(const SearchConfig& config, const SquareSink& sink);

// Number of distinct canonical forms among squares of equal order.
std::size_t count_distinct(const std::vector<Square>& squares);

}  // namespace subsq
