#pragma once

#include <vector>

#include "subsq/core.hpp"

// Closed-form constructions: odd orders by writing 1..n^2 along diagonals
// and skew-wrapping the result, doubly-even orders by block composition of
// an order-4 square, plus the four classical order-4 squares as fixtures.

namespace subsq {

// The matrix written along diagonals before the 45-degree rotation.
// Odd order only; middle index m = (n+1)/2.
class PreMatrix {
public:
    PreMatrix(int order, std::vector<Value> cells);

    int order() const { return order_; }
    int middle() const { return (order_ + 1) / 2; }  // 1-based
    Value at(int row, int col) const { return cells_[row * order_ + col]; }
    Value& at(int row, int col) { return cells_[row * order_ + col]; }
    const std::vector<Value>& cells() const { return cells_; }

    bool operator==(const PreMatrix&) const = default;

private:
    int order_;
    std::vector<Value> cells_;
};

// Entry (i,j) of the diagonal-written matrix: (m-i)(-1)^j + n(n-j) + m
// with m = (n+1)/2. Arguments are 1-based, matching the formula.
Value pre_entry(int i, int j, int n);

// The full diagonal-written matrix; its cells are a permutation of 1..n^2.
PreMatrix pre_matrix(int n);

// Rotate the pre-matrix 45 degrees counterclockwise and wrap entries that
// land outside the n x n box back inside via [.]_n on both indices.
Square skew_wrap(const PreMatrix& pre);

// skew_wrap(pre_matrix(n)): a normal magic square of subtraction with
// residuum (n^2+1)/2. Requires odd n >= 3.
Square odd_square(int n);

// Block square of order 4k: block (i,j) is P + (k(i-1)+j-1)*16, so blocks
// cover disjoint value ranges and each line's residuum is k * res(P).
// P must verify as an order-4 magic square of subtraction.
Square doubly_even_square(const Square& base, int k);

// The four classical order-4 squares: the zigzag square, its fixed-position
// rearrangement, and the images of both under the row+column permutation
// (1,2,3,4) -> (3,1,4,2). All have residuum 8.
std::vector<Square> order4_fixtures();

}  // namespace subsq
