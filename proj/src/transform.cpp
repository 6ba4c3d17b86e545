#include "subsq/transform.hpp"

#include <algorithm>
#include <stdexcept>

namespace subsq {

std::string d4_name(D4 g) {
    switch (g) {
    case D4::Identity: return "identity";
    case D4::Rot90: return "rot90";
    case D4::Rot180: return "rot180";
    case D4::Rot270: return "rot270";
    case D4::FlipH: return "flip-h";
    case D4::FlipV: return "flip-v";
    case D4::FlipMainDiag: return "transpose";
    case D4::FlipAntiDiag: return "flip-anti-diag";
    }
    return "?";
}

std::optional<D4> d4_from_name(const std::string& name) {
    for (D4 g : kD4Elements)
        if (d4_name(g) == name)
            return g;
    return std::nullopt;
}

Square d4_apply(const Square& square, D4 g) {
    const int n = square.order();
    Square out = Square::filled(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int si = i, sj = j;
            switch (g) {
            case D4::Identity: break;
            case D4::Rot90: si = n - 1 - j; sj = i; break;
            case D4::Rot180: si = n - 1 - i; sj = n - 1 - j; break;
            case D4::Rot270: si = j; sj = n - 1 - i; break;
            case D4::FlipH: si = i; sj = n - 1 - j; break;
            case D4::FlipV: si = n - 1 - i; sj = j; break;
            case D4::FlipMainDiag: si = j; sj = i; break;
            case D4::FlipAntiDiag: si = n - 1 - j; sj = n - 1 - i; break;
            }
            out.at(i, j) = square.at(si, sj);
        }
    }
    return out;
}

std::array<Square, 8> d4_images(const Square& square) {
    return {d4_apply(square, D4::Identity),     d4_apply(square, D4::Rot90),
            d4_apply(square, D4::Rot180),       d4_apply(square, D4::Rot270),
            d4_apply(square, D4::FlipH),        d4_apply(square, D4::FlipV),
            d4_apply(square, D4::FlipMainDiag), d4_apply(square, D4::FlipAntiDiag)};
}

Square canonical_form(const Square& square) {
    auto images = d4_images(square);
    const Square* best = &images[0];
    for (const Square& img : images)
        if (img.cells() < best->cells())
            best = &img;
    return *best;
}

int orbit_size(const Square& square) {
    auto images = d4_images(square);
    std::vector<std::vector<Value>> keys;
    for (const Square& img : images)
        keys.push_back(img.cells());
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return static_cast<int>(keys.size());
}

IndexPermutation::IndexPermutation(std::vector<int> mapping)
    : mapping_(std::move(mapping)) {
    const int n = static_cast<int>(mapping_.size());
    if (n < 1)
        throw std::invalid_argument("permutation must be nonempty");
    std::vector<bool> seen(n, false);
    for (int v : mapping_) {
        if (v < 1 || v > n || seen[v - 1])
            throw std::invalid_argument("mapping is not a permutation of 1..n");
        seen[v - 1] = true;
    }
}

IndexPermutation IndexPermutation::identity(int n) {
    std::vector<int> mapping(n);
    for (int i = 0; i < n; ++i)
        mapping[i] = i + 1;
    return IndexPermutation(std::move(mapping));
}

PreMatrix permute_pre(const PreMatrix& matrix, const IndexPermutation& row_perm,
                      const IndexPermutation& col_perm) {
    const int n = matrix.order();
    const int m = matrix.middle();
    if (row_perm.order() != n || col_perm.order() != n)
        throw std::invalid_argument("permute_pre: permutation order mismatch");
    if (!row_perm.fixes(m) || !col_perm.fixes(m))
        throw std::invalid_argument(
            "permute_pre: permutation must fix the middle index");
    std::vector<Value> cells(static_cast<std::size_t>(n) * n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            cells[(i - 1) * n + (j - 1)] =
                matrix.at(row_perm(i) - 1, col_perm(j) - 1);
    return PreMatrix(n, std::move(cells));
}

PreMatrix transpose_pre(const PreMatrix& matrix) {
    const int n = matrix.order();
    std::vector<Value> cells(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cells[i * n + j] = matrix.at(j, i);
    return PreMatrix(n, std::move(cells));
}

Square fig8_transform(const Square& square) {
    if (square.order() != 4)
        throw std::invalid_argument("fig8_transform: order must be 4");
    // new(i,j) <- old(src[i][j]), 1-based pairs.
    static constexpr int kSource[4][4][2] = {
        {{1, 1}, {4, 4}, {4, 1}, {1, 4}},
        {{2, 2}, {3, 3}, {3, 2}, {2, 3}},
        {{2, 1}, {3, 4}, {3, 1}, {2, 4}},
        {{1, 2}, {4, 3}, {4, 2}, {1, 3}},
    };
    Square out = Square::filled(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out.at(i, j) =
                square.at(kSource[i][j][0] - 1, kSource[i][j][1] - 1);
    return out;
}

std::vector<Square> order5_variants() {
    const PreMatrix base = pre_matrix(5);
    const PreMatrix a1 =
        permute_pre(transpose_pre(base), IndexPermutation({4, 5, 3, 1, 2}),
                    IndexPermutation({4, 1, 3, 5, 2}));
    const PreMatrix a2 = permute_pre(base, IndexPermutation({2, 5, 3, 1, 4}),
                                     IndexPermutation({1, 4, 3, 2, 5}));
    const IndexPermutation both({5, 2, 3, 4, 1});
    const PreMatrix a3 = permute_pre(base, both, both);
    return {skew_wrap(base), skew_wrap(a1), skew_wrap(a2), skew_wrap(a3)};
}

}  // namespace subsq
