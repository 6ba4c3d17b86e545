#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "subsq/catalog.hpp"
#include "subsq/construct.hpp"
#include "subsq/core.hpp"
#include "subsq/search.hpp"
#include "subsq/transform.hpp"

namespace {

using namespace subsq;

Square read_square(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return parse_json(text);
    return parse_text(text);
}

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    void open(const std::string& path) {
        if (path.empty())
            return;
        file.open(path);
        if (!file)
            throw std::invalid_argument("cannot open " + path);
        stream = &file;
    }
};

void write_square(std::ostream& out, const Square& square, bool json) {
    if (json)
        out << to_json(square) << '\n';
    else
        out << to_text(square);
    out.flush();
}

int cmd_construct(int order, const std::string& method,
                  const std::string& base_path, std::optional<int> k,
                  const std::string& variant, bool json) {
    Square result = Square::filled(1);
    if (!variant.empty()) {
        const std::string odd5 = "efgh", four = "abcd";
        auto pos5 = odd5.find(variant[0]);
        auto pos4 = four.find(variant[0]);
        if (variant.size() != 1 || (pos5 == std::string::npos &&
                                    pos4 == std::string::npos)) {
            std::cerr << "unknown variant '" << variant << "'\n";
            return 2;
        }
        result = pos5 != std::string::npos ? order5_variants()[pos5]
                                           : order4_fixtures()[pos4];
    } else {
        if (order < 1) {
            std::cerr << "--order is required\n";
            return 2;
        }
        std::string chosen = method;
        if (chosen.empty())
            chosen = (order % 2 == 1) ? "odd" : "doubly-even";
        if (chosen == "odd") {
            result = odd_square(order);
        } else if (chosen == "doubly-even") {
            if (order % 4 != 0) {
                std::cerr << "doubly-even construction needs order "
                             "divisible by 4\n";
                return 2;
            }
            const Square base = base_path.empty() ? order4_fixtures()[0]
                                                  : read_square(base_path);
            result = doubly_even_square(base, k.value_or(order / 4));
        } else {
            std::cerr << "unknown method '" << chosen << "'\n";
            return 2;
        }
    }
    write_square(std::cout, result, json);
    return 0;
}

int cmd_verify(const std::string& path, bool json) {
    const Square square = read_square(path);
    const VerificationReport report = verify(square);
    if (json) {
        std::cout << "{\"is_magic\": " << (report.is_magic ? "true" : "false")
                  << ", \"is_normal\": " << (report.is_normal ? "true" : "false");
        if (report.residuum)
            std::cout << ", \"residuum\": " << *report.residuum;
        std::cout << "}\n";
    } else if (report.is_magic) {
        std::cout << "magic, residuum " << *report.residuum << ", "
                  << (report.is_normal ? "normal" : "not normal") << '\n';
    } else {
        std::cout << "not magic\n";
        for (const auto& [line, res] : report.per_line)
            std::cout << "  " << line_name(line) << ": residuum " << res
                      << '\n';
    }
    return report.is_magic ? 0 : 1;
}

int cmd_transform(const std::string& op, const std::string& path, bool json) {
    const Square square = read_square(path);
    Square result = Square::filled(1);
    if (op == "fig8") {
        result = fig8_transform(square);
    } else {
        auto g = d4_from_name(op);
        if (!g) {
            std::cerr << "unknown transform '" << op << "'\n";
            return 2;
        }
        result = d4_apply(square, *g);
    }
    write_square(std::cout, result, json);
    return 0;
}

std::string config_fingerprint(const SearchConfig& config) {
    std::ostringstream out;
    out << (config.mode == SearchMode::Exhaustive ? "exhaustive"
                                                  : "randomized")
        << " order=" << config.order;
    if (config.mode == SearchMode::Randomized)
        out << " seed=" << config.seed;
    out << " workers=" << config.worker_count;
    return out.str();
}

int cmd_enumerate(const SearchConfig& config, const std::string& out_path,
                  bool json) {
    Output out;
    out.open(out_path);
    const EnumerationResult result = enumerate_exhaustive(
        config, [&](const Square& s) { write_square(*out.stream, s, json); });
    std::ostringstream summary;
    summary << "{\"order\": " << config.order
            << ", \"raw_count\": " << result.raw_count
            << ", \"distinct_count\": " << result.distinct_count
            << ", \"nodes\": " << result.nodes_visited
            << ", \"elapsed_seconds\": " << result.elapsed_seconds << "}";
    if (json)
        *out.stream << summary.str() << '\n';
    std::cerr << "order " << config.order << ": " << result.raw_count
              << " magic squares, " << result.distinct_count
              << " distinct classes (" << result.nodes_visited << " nodes, "
              << result.elapsed_seconds << " s)\n";
    return result.distinct_count > 0 ? 0 : 1;
}

int cmd_search(const SearchConfig& config, const std::string& out_path,
               const std::string& catalog_path, bool json) {
    Output out;
    out.open(out_path);
    std::unique_ptr<Catalog> catalog;
    if (!catalog_path.empty())
        catalog = std::make_unique<Catalog>(catalog_path);
    std::uint64_t emitted = 0;
    search_randomized(config, [&](const Square& s) {
        write_square(*out.stream, s, json);
        ++emitted;
        if (catalog)
            catalog->append(make_record(s, config_fingerprint(config)));
    });
    std::cerr << "found " << emitted << " squares\n";
    return emitted > 0 ? 0 : 1;
}

int cmd_catalog_stats(const std::string& path) {
    const CatalogContents contents = load_catalog(path);
    std::cout << "records: " << contents.stats.record_count << '\n';
    for (const auto& [order, count] : contents.stats.per_order)
        std::cout << "order " << order << ": " << count << '\n';
    for (const auto& [res, count] : contents.stats.per_residuum)
        std::cout << "residuum " << res << ": " << count << '\n';
    if (contents.stats.skipped_partial)
        std::cout << "skipped partial trailing records: "
                  << contents.stats.skipped_partial << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Magic squares of subtraction: construct, verify, "
                 "transform, enumerate, search"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "structured (JSON) output");

    auto* construct = app.add_subcommand("construct", "build a square");
    int c_order = 0;
    std::string c_method, c_base, c_variant;
    std::optional<int> c_k;
    construct->add_option("--order", c_order, "square order");
    construct->add_option("--method", c_method, "odd | doubly-even");
    construct->add_option("--base", c_base, "order-4 base square file");
    construct->add_option("--k", c_k, "block count per side (order 4k)");
    construct->add_option("--variant", c_variant,
                          "classical square: a-d (order 4), e-h (order 5)");

    auto* verify_cmd = app.add_subcommand("verify", "verify a square");
    std::string v_path = "-";
    verify_cmd->add_option("file", v_path, "square file, or - for stdin");

    auto* transform = app.add_subcommand("transform", "transform a square");
    std::string t_op, t_path = "-";
    transform->add_option("--op", t_op,
                          "rot90|rot180|rot270|flip-h|flip-v|transpose|fig8")
        ->required();
    transform->add_option("file", t_path, "square file, or - for stdin");

    auto* canon = app.add_subcommand("canon", "canonical D4 form");
    std::string n_path = "-";
    canon->add_option("file", n_path, "square file, or - for stdin");

    auto* enumerate = app.add_subcommand("enumerate", "exhaustive census");
    SearchConfig e_config;
    std::string e_out;
    std::optional<long long> e_res;
    enumerate->add_option("--order", e_config.order, "square order")
        ->required();
    enumerate->add_option("--residuum", e_res, "pin the residuum");
    enumerate->add_option("--threads", e_config.worker_count, "worker count");
    enumerate->add_flag("--count-only", e_config.count_only,
                        "counts only, no square output");
    bool e_no_prune = false;
    enumerate->add_flag("--no-prune", e_no_prune,
                        "disable residuum-bound pruning (debug)");
    enumerate->add_option("--out", e_out, "output file");

    auto* search = app.add_subcommand("search", "randomized search");
    SearchConfig s_config;
    s_config.mode = SearchMode::Randomized;
    s_config.limit = 1;
    std::string s_out, s_catalog;
    std::optional<long long> s_res;
    search->add_option("--order", s_config.order, "square order")->required();
    search->add_option("--residuum", s_res, "target residuum");
    search->add_option("--seed", s_config.seed, "random seed")->required();
    search->add_option("--threads", s_config.worker_count, "worker count");
    std::uint64_t s_limit = 1;
    search->add_option("--limit", s_limit, "squares to emit (default 1)");
    search->add_option("--out", s_out, "output file");
    search->add_option("--catalog", s_catalog, "append findings to catalog");

    auto* stats = app.add_subcommand("catalog-stats", "summarize a catalog");
    std::string st_path;
    stats->add_option("file", st_path, "catalog file")->required();

    for (CLI::App* sub : app.get_subcommands({}))
        sub->fallthrough();  // allow --json after the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*construct)
            return cmd_construct(c_order, c_method, c_base, c_k, c_variant,
                                 json);
        if (*verify_cmd)
            return cmd_verify(v_path, json);
        if (*transform)
            return cmd_transform(t_op, t_path, json);
        if (*canon) {
            write_square(std::cout, canonical_form(read_square(n_path)), json);
            return 0;
        }
        if (*enumerate) {
            if (e_res)
                e_config.target_residuum = *e_res;
            e_config.prune = !e_no_prune;
            return cmd_enumerate(e_config, e_out, json);
        }
        if (*search) {
            if (s_res)
                s_config.target_residuum = *s_res;
            s_config.limit = s_limit;
            return cmd_search(s_config, s_out, s_catalog, json);
        }
        if (*stats)
            return cmd_catalog_stats(st_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
