#include "subsq/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "subsq/transform.hpp"

namespace subsq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Backtracking engine over the cell schedule: row 1 left to right, then
// the rest of column 1 downward, then the rest of row 2, and so on in
// shrinking L-shells. Each line is checked the moment its last scheduled
// cell is placed; incomplete lines are cut with interval residuum bounds.
struct Engine {
    int n = 0;
    int nn = 0;
    std::vector<int> schedule;                    // cell id per depth
    std::vector<std::array<int, 5>> cell_lines;   // line ids, -1 terminated
    std::vector<std::vector<int>> line_members;   // cell ids per line
    std::vector<int> corner_depths;               // depths of corners != (0,0)

    // mutable search state
    std::array<int, 64> grid{};
    std::uint64_t used = 0;
    std::uint64_t full = 0;
    std::vector<int> placed;    // per line
    std::vector<int> line_min;  // over placed values
    std::vector<int> line_max;

    bool prune = true;
    std::vector<int> forced;  // values pinned for the first depths
    std::uint64_t nodes = 0;

    explicit Engine(int order) : n(order), nn(order * order) {
        if (nn > 64)
            throw std::invalid_argument(
                "search: order too large for the 64-bit value mask");
        full = (nn == 64) ? ~0ULL : ((1ULL << nn) - 1);

        for (int k = 0; k < n; ++k) {
            for (int j = k; j < n; ++j)
                schedule.push_back(k * n + j);  // rest of row k
            for (int i = k + 1; i < n; ++i)
                schedule.push_back(i * n + k);  // rest of column k
        }

        const int rows = n, cols = n;
        line_members.resize(2 * n + 2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                line_members[i].push_back(i * n + j);
                line_members[rows + j].push_back(i * n + j);
            }
        for (int i = 0; i < n; ++i) {
            line_members[rows + cols].push_back(i * n + i);
            line_members[rows + cols + 1].push_back(i * n + (n - 1 - i));
        }

        std::vector<std::array<int, 5>> by_cell(nn, {-1, -1, -1, -1, -1});
        for (int l = 0; l < 2 * n + 2; ++l)
            for (int c : line_members[l]) {
                auto& slots = by_cell[c];
                for (int& s : slots)
                    if (s < 0) {
                        s = l;
                        break;
                    }
            }
        cell_lines.resize(nn);
        for (int d = 0; d < nn; ++d)
            cell_lines[d] = by_cell[schedule[d]];

        if (n >= 2)
            for (int d = 0; d < nn; ++d) {
                int c = schedule[d];
                if (c == n - 1 || c == n * (n - 1) || c == nn - 1)
                    corner_depths.push_back(d);
            }

        placed.assign(2 * n + 2, 0);
        line_min.assign(2 * n + 2, 0);
        line_max.assign(2 * n + 2, 0);
    }

    bool is_corner_depth(int depth) const {
        return std::find(corner_depths.begin(), corner_depths.end(), depth) !=
               corner_depths.end();
    }

    int line_residuum(int l) const {
        int buf[8];
        const auto& members = line_members[l];
        int len = static_cast<int>(members.size());
        for (int k = 0; k < len; ++k) {
            int v = grid[members[k]];
            int p = k;
            while (p > 0 && buf[p - 1] < v) {
                buf[p] = buf[p - 1];
                --p;
            }
            buf[p] = v;  // descending insertion
        }
        int res = 0;
        for (int k = 0; k < len; ++k)
            res += (k % 2 == 0) ? buf[k] : -buf[k];
        return res;
    }

    // Places v at the scheduled cell; checks completed lines against the
    // branch residuum (target < 0 means not fixed yet) and bounds-prunes
    // incomplete ones. Returns false with all state rolled back on a cut.
    bool try_place(int depth, int v, int& branch_res) {
        const int cell = schedule[depth];
        grid[cell] = v;
        used |= 1ULL << (v - 1);

        int saved_min[5], saved_max[5], applied = 0;
        bool ok = true;
        int res = branch_res;
        for (int s = 0; s < 5 && cell_lines[depth][s] >= 0; ++s) {
            const int l = cell_lines[depth][s];
            saved_min[applied] = line_min[l];
            saved_max[applied] = line_max[l];
            ++applied;
            if (placed[l] == 0) {
                line_min[l] = line_max[l] = v;
            } else {
                line_min[l] = std::min(line_min[l], v);
                line_max[l] = std::max(line_max[l], v);
            }
            ++placed[l];
            const int len = static_cast<int>(line_members[l].size());
            if (placed[l] == len) {
                const int r = line_residuum(l);
                if (res < 0)
                    res = r;
                else if (r != res) {
                    ok = false;
                    break;
                }
            } else if (prune && res >= 0) {
                const std::uint64_t free = ~used & full;
                const int fmin = std::countr_zero(free) + 1;
                const int fmax = 64 - std::countl_zero(free);
                const int hi = std::max(line_max[l], fmax);
                const int lo = std::min(line_min[l], fmin);
                if (len % 2 == 0) {
                    if (res > hi - lo) {
                        ok = false;
                        break;
                    }
                } else if (res < lo || res > hi) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) {
            for (int s = applied - 1; s >= 0; --s) {
                const int l = cell_lines[depth][s];
                --placed[l];
                line_min[l] = saved_min[s];
                line_max[l] = saved_max[s];
            }
            grid[cell] = 0;
            used &= ~(1ULL << (v - 1));
            return false;
        }
        branch_res = res;
        return true;
    }

    void unplace(int depth, int v) {
        const int cell = schedule[depth];
        for (int s = 0; s < 5 && cell_lines[depth][s] >= 0; ++s) {
            const int l = cell_lines[depth][s];
            --placed[l];
            line_min[l] = 0;
            line_max[l] = 0;
            if (placed[l] > 0) {
                int mn = 1 << 30, mx = 0;
                int seen = 0;
                for (int c : line_members[l])
                    if (grid[c] != 0 && c != cell) {
                        mn = std::min(mn, grid[c]);
                        mx = std::max(mx, grid[c]);
                        ++seen;
                    }
                (void)seen;
                line_min[l] = mn;
                line_max[l] = mx;
            }
        }
        grid[cell] = 0;
        used &= ~(1ULL << (v - 1));
    }

    template <typename OnSolution>
    void dfs_exhaustive(int depth, int branch_res, const OnSolution& emit) {
        if (depth == nn) {
            emit(grid.data());
            return;
        }
        const bool corner = is_corner_depth(depth);
        std::uint64_t avail = ~used & full;
        if (depth < static_cast<int>(forced.size()))
            avail &= 1ULL << (forced[depth] - 1);
        while (avail) {
            const int v = std::countr_zero(avail) + 1;
            avail &= avail - 1;
            if (corner && v < grid[0])
                continue;  // ties impossible for distinct values
            int res = branch_res;
            if (!try_place(depth, v, res))
                continue;
            ++nodes;
            dfs_exhaustive(depth + 1, res, emit);
            unplace(depth, v);
        }
    }

    // Randomized variant: values tried in the restart's shuffled order,
    // bounded node budget, unwinds after the first solution.
    template <typename OnSolution>
    bool dfs_randomized(int depth, int branch_res,
                        const std::vector<int>& value_order,
                        std::uint64_t budget, const OnSolution& emit) {
        if (depth == nn) {
            emit(grid.data());
            return true;
        }
        const bool corner = is_corner_depth(depth);
        for (int v : value_order) {
            if (used & (1ULL << (v - 1)))
                continue;
            if (corner && v < grid[0])
                continue;
            int res = branch_res;
            if (!try_place(depth, v, res))
                continue;
            if (++nodes > budget) {
                unplace(depth, v);
                return false;
            }
            if (dfs_randomized(depth + 1, res, value_order, budget, emit)) {
                unplace(depth, v);
                return true;
            }
            if (nodes > budget) {
                unplace(depth, v);
                return false;
            }
            unplace(depth, v);
        }
        return false;
    }
};

void validate_common(const SearchConfig& config) {
    if (config.order < 1)
        throw std::invalid_argument("search: order must be >= 1");
    if (config.worker_count < 1)
        throw std::invalid_argument("search: worker_count must be >= 1");
    if (config.target_residuum && *config.target_residuum < 0)
        throw std::invalid_argument("search: target residuum must be >= 0");
}

using CanonKey = std::vector<Value>;

Square square_from_grid(int n, const int* grid) {
    std::vector<Value> cells(grid, grid + n * n);
    return Square(n, std::move(cells));
}

}  // namespace

std::pair<Value, Value> residuum_bounds(std::span<const Value> partial,
                                        int slots_remaining,
                                        std::span<const Value> available) {
    if (slots_remaining < 0)
        throw std::invalid_argument("residuum_bounds: negative slot count");
    if (static_cast<std::size_t>(slots_remaining) > available.size())
        throw std::invalid_argument(
            "residuum_bounds: more slots than available values");
    if (partial.empty() && slots_remaining == 0)
        throw std::invalid_argument("residuum_bounds: empty line");

    if (slots_remaining == 0) {
        Value r = residuum(partial);
        return {r, r};
    }

    // Exact when the completion space is small: residuum ignores order, so
    // subsets of the available values suffice.
    const std::size_t a = available.size();
    const std::size_t s = static_cast<std::size_t>(slots_remaining);
    double combos = 1.0;
    for (std::size_t i = 0; i < s; ++i)
        combos *= static_cast<double>(a - i) / static_cast<double>(i + 1);
    if (combos <= 512.0) {
        std::vector<Value> line(partial.begin(), partial.end());
        Value lo = 0, hi = 0;
        bool first = true;
        std::vector<std::size_t> idx(s);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            for (std::size_t i = 0; i < s; ++i)
                line.push_back(available[idx[i]]);
            const Value r = residuum(line);
            line.resize(partial.size());
            if (first || r < lo)
                lo = r;
            if (first || r > hi)
                hi = r;
            first = false;
            // next combination
            std::size_t i = s;
            while (i > 0 && idx[i - 1] == a - s + (i - 1))
                --i;
            if (i == 0)
                break;
            ++idx[i - 1];
            for (std::size_t j = i; j < s; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        return {lo, hi};
    }

    // Interval relaxation: any completed line has its maximum in [lo_all,
    // hi_all]; an even-length residuum telescopes to at most max - min.
    Value hi_all = available[0], lo_all = available[0];
    for (Value v : available) {
        hi_all = std::max(hi_all, v);
        lo_all = std::min(lo_all, v);
    }
    for (Value v : partial) {
        hi_all = std::max(hi_all, v);
        lo_all = std::min(lo_all, v);
    }
    const std::size_t total = partial.size() + s;
    if (total % 2 == 0)
        return {0, hi_all - lo_all};
    return {lo_all, hi_all};
}

EnumerationResult enumerate_exhaustive(const SearchConfig& config,
                                       const SquareSink& sink) {
    validate_common(config);
    if (config.mode != SearchMode::Exhaustive)
        throw std::invalid_argument(
            "enumerate_exhaustive: config is not exhaustive");
    const int n = config.order;
    const int nn = n * n;
    if (nn > 64)
        throw std::invalid_argument(
            "enumerate_exhaustive: n^2 exceeds the 64-bit mask");
    {
        std::uint64_t seen = 0;
        if (config.fixed_prefix.size() > static_cast<std::size_t>(nn))
            throw std::invalid_argument("fixed_prefix longer than the square");
        for (Value v : config.fixed_prefix) {
            if (v < 1 || v > nn)
                throw std::invalid_argument("fixed_prefix value out of range");
            if (seen & (1ULL << (v - 1)))
                throw std::invalid_argument("fixed_prefix repeats a value");
            seen |= 1ULL << (v - 1);
        }
    }

    const auto t0 = std::chrono::steady_clock::now();

    // Work units: all assignments of the first cells of the schedule,
    // processed by workers in any order; the canonical-key merge makes the
    // result independent of scheduling.
    const int unit_len = std::min(2, nn);
    std::vector<std::vector<int>> units;
    {
        std::vector<int> unit(unit_len);
        auto matches_prefix = [&](int depth, int v) {
            return depth >= static_cast<int>(config.fixed_prefix.size()) ||
                   config.fixed_prefix[depth] == v;
        };
        if (unit_len == 1) {
            for (int v = 1; v <= nn; ++v)
                if (matches_prefix(0, v))
                    units.push_back({v});
        } else {
            for (int v0 = 1; v0 <= nn; ++v0) {
                if (!matches_prefix(0, v0))
                    continue;
                for (int v1 = 1; v1 <= nn; ++v1)
                    if (v1 != v0 && matches_prefix(1, v1))
                        units.push_back({v0, v1});
            }
        }
    }

    std::atomic<std::size_t> next_unit{0};
    std::vector<std::set<CanonKey>> worker_sets(config.worker_count);
    std::vector<std::uint64_t> worker_nodes(config.worker_count, 0);

    auto worker = [&](int w) {
        Engine engine(n);
        engine.prune = config.prune;
        const int target =
            config.target_residuum ? static_cast<int>(*config.target_residuum)
                                   : -1;
        auto emit = [&](const int* grid) {
            Square found = square_from_grid(n, grid);
            worker_sets[w].insert(canonical_form(found).cells());
        };
        for (;;) {
            const std::size_t u = next_unit.fetch_add(1);
            if (u >= units.size())
                break;
            engine.forced.assign(units[u].begin(), units[u].end());
            for (std::size_t d = engine.forced.size();
                 d < config.fixed_prefix.size(); ++d)
                engine.forced.push_back(
                    static_cast<int>(config.fixed_prefix[d]));
            engine.dfs_exhaustive(0, target, emit);
        }
        worker_nodes[w] = engine.nodes;
    };

    if (config.worker_count == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < config.worker_count; ++w)
            threads.emplace_back(worker, w);
        for (auto& t : threads)
            t.join();
    }

    std::set<CanonKey> merged;
    for (auto& s : worker_sets)
        merged.merge(s);

    EnumerationResult result;
    result.config = config;
    result.distinct_count = merged.size();
    for (const CanonKey& key : merged) {
        Square rep(n, key);
        result.raw_count += orbit_size(rep);
        if (sink && !config.count_only)
            sink(rep);
    }
    for (std::uint64_t w : worker_nodes)
        result.nodes_visited += w;
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return result;
}

void search_randomized(const SearchConfig& config, const SquareSink& sink) {
    validate_common(config);
    if (config.mode != SearchMode::Randomized)
        throw std::invalid_argument(
            "search_randomized: config is not randomized");
    if (config.order < 4)
        throw std::invalid_argument("search_randomized: order must be >= 4");
    if (config.order * config.order > 64)
        throw std::invalid_argument(
            "search_randomized: order too large for the value mask");
    if (!config.limit && config.worker_count > 1)
        throw std::invalid_argument(
            "search_randomized: unbounded stream needs worker_count 1");
    if (config.limit && *config.limit == 0)
        return;

    const int n = config.order;
    const int nn = n * n;

    auto run_worker = [&](int w, std::uint64_t quota,
                          const SquareSink& emit_sink) {
        Engine engine(n);
        engine.prune = config.prune;
        std::mt19937_64 rng(splitmix64(config.seed + 0x10001ULL * w));
        std::vector<int> value_order(nn);
        std::iota(value_order.begin(), value_order.end(), 1);
        const int target =
            config.target_residuum ? static_cast<int>(*config.target_residuum)
                                   : -1;
        std::uint64_t emitted = 0;
        while (emitted < quota) {
            std::shuffle(value_order.begin(), value_order.end(), rng);
            engine.nodes = 0;
            auto emit = [&](const int* grid) {
                Square found = square_from_grid(n, grid);
                const auto report = verify(found);
                if (!report.is_magic || !report.is_normal)
                    throw std::logic_error(
                        "randomized search produced a non-magic square");
                if (config.target_residuum &&
                    *report.residuum != *config.target_residuum)
                    throw std::logic_error(
                        "randomized search missed the target residuum");
                emit_sink(found);
                ++emitted;
            };
            engine.dfs_randomized(0, target, value_order,
                                  config.restart_node_cap, emit);
        }
    };

    if (config.worker_count == 1) {
        const std::uint64_t quota =
            config.limit ? *config.limit
                         : std::numeric_limits<std::uint64_t>::max();
        run_worker(0, quota, sink);
        return;
    }

    const std::uint64_t limit = *config.limit;
    const int workers = config.worker_count;
    std::vector<std::vector<Square>> outputs(workers);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t quota =
            limit / workers + (static_cast<std::uint64_t>(w) < limit % workers);
        threads.emplace_back([&, w, quota] {
            run_worker(w, quota,
                       [&, w](const Square& s) { outputs[w].push_back(s); });
        });
    }
    for (auto& t : threads)
        t.join();
    for (const auto& out : outputs)
        for (const Square& s : out)
            sink(s);
}

std::size_t count_distinct(const std::vector<Square>& squares) {
    std::set<CanonKey> keys;
    int order = -1;
    for (const Square& s : squares) {
        if (order < 0)
            order = s.order();
        else if (s.order() != order)
            throw std::invalid_argument("count_distinct: mixed orders");
        keys.insert(canonical_form(s).cells());
    }
    return keys.size();
}

}  // namespace subsq
