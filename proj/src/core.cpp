#include "subsq/core.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace subsq {

Square::Square(int order, std::vector<Value> cells)
    : order_(order), cells_(std::move(cells)) {
    if (order < 1)
        throw std::invalid_argument("square order must be >= 1");
    if (cells_.size() != static_cast<std::size_t>(order) * order)
        throw std::invalid_argument("cell count does not match order");
}

Square Square::filled(int order, Value value) {
    if (order < 1)
        throw std::invalid_argument("square order must be >= 1");
    return Square(order, std::vector<Value>(
                             static_cast<std::size_t>(order) * order, value));
}

std::string line_name(const Line& line) {
    switch (line.kind) {
    case LineKind::Row:
        return "row " + std::to_string(line.index + 1);
    case LineKind::Column:
        return "column " + std::to_string(line.index + 1);
    case LineKind::MainDiagonal:
        return "main diagonal";
    case LineKind::AntiDiagonal:
        return "antidiagonal";
    }
    return "?";
}

int wrap_index(std::int64_t k, int n) {
    if (n < 1)
        throw std::invalid_argument("wrap_index: n must be >= 1");
    std::int64_t r = (k - 1) % n;
    if (r < 0)
        r += n;
    return static_cast<int>(r) + 1;
}

Value residuum(std::span<const Value> values) {
    if (values.empty())
        throw std::invalid_argument("residuum of an empty line");
    std::vector<Value> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    Value res = 0;
    Value sign = 1;
    for (Value v : sorted) {
        res += sign * v;
        sign = -sign;
    }
    return res;
}

Value residuum(const Line& line) { return residuum(std::span(line.values)); }

std::vector<Line> extract_lines(const Square& square) {
    const int n = square.order();
    std::vector<Line> lines;
    lines.reserve(2 * n + 2);
    for (int i = 0; i < n; ++i) {
        Line row{LineKind::Row, i, {}};
        row.values.reserve(n);
        for (int j = 0; j < n; ++j)
            row.values.push_back(square.at(i, j));
        lines.push_back(std::move(row));
    }
    for (int j = 0; j < n; ++j) {
        Line col{LineKind::Column, j, {}};
        col.values.reserve(n);
        for (int i = 0; i < n; ++i)
            col.values.push_back(square.at(i, j));
        lines.push_back(std::move(col));
    }
    Line diag{LineKind::MainDiagonal, 0, {}};
    Line adiag{LineKind::AntiDiagonal, 0, {}};
    for (int i = 0; i < n; ++i) {
        diag.values.push_back(square.at(i, i));
        adiag.values.push_back(square.at(i, n - 1 - i));
    }
    lines.push_back(std::move(diag));
    lines.push_back(std::move(adiag));
    return lines;
}

bool is_normal(const Square& square) {
    std::vector<Value> sorted = square.cells();
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<Value>(i) + 1)
            return false;
    return true;
}

VerificationReport verify(const Square& square) {
    VerificationReport report;
    report.is_normal = is_normal(square);
    bool all_equal = true;
    std::optional<Value> common;
    for (Line& line : extract_lines(square)) {
        Value res = residuum(line);
        if (!common)
            common = res;
        else if (*common != res)
            all_equal = false;
        report.per_line.emplace_back(std::move(line), res);
    }
    report.is_magic = all_equal;
    if (all_equal)
        report.residuum = common;
    return report;
}

std::string to_text(const Square& square) {
    std::ostringstream out;
    const int n = square.order();
    out << n << '\n';
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j)
                out << ' ';
            out << square.at(i, j);
        }
        out << '\n';
    }
    return out.str();
}

Square parse_text(std::istream& in) {
    int n = 0;
    if (!(in >> n) || n < 1)
        throw std::invalid_argument("square text: bad or missing order");
    std::vector<Value> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n * n; ++i) {
        Value v;
        if (!(in >> v))
            throw std::invalid_argument("square text: expected " +
                                        std::to_string(n * n) +
                                        " integers, got " + std::to_string(i));
        cells.push_back(v);
    }
    std::string rest;
    if (in >> rest)
        throw std::invalid_argument("square text: trailing content '" + rest +
                                    "'");
    return Square(n, std::move(cells));
}

Square parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_text(in);
}

std::string to_json(const Square& square) {
    nlohmann::json rows = nlohmann::json::array();
    const int n = square.order();
    for (int i = 0; i < n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < n; ++j)
            row.push_back(square.at(i, j));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"n", n}, {"cells", rows}}.dump();
}

Square parse_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("square json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("cells") ||
        !doc["n"].is_number_integer() || !doc["cells"].is_array())
        throw std::invalid_argument("square json: need {\"n\", \"cells\"}");
    int n = doc["n"].get<int>();
    if (n < 1)
        throw std::invalid_argument("square json: order must be >= 1");
    if (doc["cells"].size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("square json: wrong row count");
    std::vector<Value> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : doc["cells"]) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("square json: ragged row");
        for (const auto& v : row) {
            if (!v.is_number_integer())
                throw std::invalid_argument("square json: non-integer cell");
            cells.push_back(v.get<Value>());
        }
    }
    return Square(n, std::move(cells));
}

}  // namespace subsq
