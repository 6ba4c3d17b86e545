#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "subsq/construct.hpp"
#include "subsq/core.hpp"

// Symmetry and permutation machinery: the dihedral group of the square,
// canonical forms for deduplication, middle-fixed pre-matrix permutations,
// and the fixed order-4 position rearrangement.

namespace subsq {

enum class D4 {
    Identity,
    Rot90,  // clockwise
    Rot180,
    Rot270,
    FlipH,  // left-right mirror
    FlipV,  // top-bottom mirror
    FlipMainDiag,  // transpose
    FlipAntiDiag,
};

inline constexpr std::array<D4, 8> kD4Elements = {
    D4::Identity,     D4::Rot90, D4::Rot180,       D4::Rot270,
    D4::FlipH,        D4::FlipV, D4::FlipMainDiag, D4::FlipAntiDiag};

std::string d4_name(D4 g);
std::optional<D4> d4_from_name(const std::string& name);

Square d4_apply(const Square& square, D4 g);

// Lexicographically smallest of the 8 dihedral images (row-major flattened
// comparison). Equal for D4-equivalent squares, idempotent.
Square canonical_form(const Square& square);

std::array<Square, 8> d4_images(const Square& square);

// Number of distinct images among the 8; divides 8.
int orbit_size(const Square& square);

// A permutation of 1..n stored as "new index i takes old index map[i]".
class IndexPermutation {
public:
    // mapping uses 1-based values, e.g. {4,5,3,1,2}.
    explicit IndexPermutation(std::vector<int> mapping);
    static IndexPermutation identity(int n);

    int order() const { return static_cast<int>(mapping_.size()); }
    int operator()(int i) const { return mapping_[i - 1]; }  // 1-based
    bool fixes(int i) const { return mapping_[i - 1] == i; }

private:
    std::vector<int> mapping_;
};

// result(i,j) = matrix(row_perm(i), col_perm(j)). Both permutations must
// fix the middle index m: the middle column of the pre-matrix becomes the
// square's diagonal after the skew wrap, so it cannot move.
PreMatrix permute_pre(const PreMatrix& matrix, const IndexPermutation& row_perm,
                      const IndexPermutation& col_perm);

PreMatrix transpose_pre(const PreMatrix& matrix);

// Fixed position rearrangement of an order-4 square (the classical
// transformation producing the second order-4 square from the first).
Square fig8_transform(const Square& square);

// The four classical order-5 squares: the plain skew wrap of pre_matrix(5)
// and three variants built from transposed/permuted pre-matrices. All have
// residuum 13.
std::vector<Square> order5_variants();

}  // namespace subsq
