#include "subsq/construct.hpp"

#include <stdexcept>
#include <string>

namespace subsq {

PreMatrix::PreMatrix(int order, std::vector<Value> cells)
    : order_(order), cells_(std::move(cells)) {
    if (order < 1 || order % 2 == 0)
        throw std::invalid_argument("pre-matrix order must be odd and >= 1");
    if (cells_.size() != static_cast<std::size_t>(order) * order)
        throw std::invalid_argument("cell count does not match order");
}

Value pre_entry(int i, int j, int n) {
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument("pre_entry: n must be odd and >= 1");
    if (i < 1 || i > n || j < 1 || j > n)
        throw std::invalid_argument("pre_entry: indices out of range");
    const Value m = (n + 1) / 2;
    const Value sign = (j % 2 == 0) ? 1 : -1;
    return (m - i) * sign + static_cast<Value>(n) * (n - j) + m;
}

PreMatrix pre_matrix(int n) {
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument("pre_matrix: n must be odd and >= 1");
    std::vector<Value> cells(static_cast<std::size_t>(n) * n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            cells[(i - 1) * n + (j - 1)] = pre_entry(i, j, n);
    return PreMatrix(n, std::move(cells));
}

Square skew_wrap(const PreMatrix& pre) {
    const int n = pre.order();
    const int m = pre.middle();
    Square out = Square::filled(n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            int a, b;
            if ((i + j) % 2 == 0) {
                a = (i + j) / 2;
                b = (j - i) / 2 + m;
            } else {
                a = wrap_index((i + j + n) / 2, n);
                b = wrap_index((j - i + n) / 2 + m, n);
            }
            out.at(i - 1, j - 1) = pre.at(a - 1, b - 1);
        }
    }
    return out;
}

Square odd_square(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("odd_square: n must be odd and >= 3");
    return skew_wrap(pre_matrix(n));
}

Square doubly_even_square(const Square& base, int k) {
    if (base.order() != 4)
        throw std::invalid_argument("doubly_even_square: base must be 4x4");
    if (k < 1)
        throw std::invalid_argument("doubly_even_square: k must be >= 1");
    if (!verify(base).is_magic)
        throw std::invalid_argument(
            "doubly_even_square: base is not a magic square of subtraction");
    const int n = 4 * k;
    Square out = Square::filled(n);
    for (int bi = 0; bi < k; ++bi)
        for (int bj = 0; bj < k; ++bj) {
            const Value offset =
                (static_cast<Value>(k) * bi + bj) * 16;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    out.at(4 * bi + i, 4 * bj + j) = base.at(i, j) + offset;
        }
    return out;
}

std::vector<Square> order4_fixtures() {
    const Square a(4, {1, 6, 13, 2, 10, 5, 14, 9, 7, 12, 11, 16, 8, 3, 4, 15});
    const Square b(4, {1, 15, 8, 2, 5, 11, 12, 14, 10, 16, 7, 9, 6, 4, 3, 13});
    // (1,2,3,4) -> (3,1,4,2) applied to both rows and columns.
    const int perm[4] = {2, 0, 3, 1};
    auto permuted = [&](const Square& s) {
        Square out = Square::filled(4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                out.at(i, j) = s.at(perm[i], perm[j]);
        return out;
    };
    return {a, b, permuted(a), permuted(b)};
}

}  // namespace subsq
