#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "subsq/construct.hpp"
#include "subsq/transform.hpp"

using namespace subsq;

namespace {

const Square kFig1 = order4_fixtures()[0];

Square random_square(std::mt19937_64& rng, int n) {
    std::vector<Value> cells(static_cast<std::size_t>(n) * n);
    std::iota(cells.begin(), cells.end(), 1);
    std::shuffle(cells.begin(), cells.end(), rng);
    return Square(n, cells);
}

IndexPermutation random_middle_fixed(std::mt19937_64& rng, int n) {
    const int m = (n + 1) / 2;
    std::vector<int> rest;
    for (int i = 1; i <= n; ++i)
        if (i != m)
            rest.push_back(i);
    std::shuffle(rest.begin(), rest.end(), rng);
    std::vector<int> mapping;
    std::size_t k = 0;
    for (int i = 1; i <= n; ++i)
        mapping.push_back(i == m ? m : rest[k++]);
    return IndexPermutation(std::move(mapping));
}

}  // namespace

TEST_CASE("d4_apply basics") {
    CHECK(d4_apply(kFig1, D4::Identity) == kFig1);
    Square s = kFig1;
    for (int i = 0; i < 4; ++i)
        s = d4_apply(s, D4::Rot90);
    CHECK(s == kFig1);
    const auto transposed = d4_apply(kFig1, D4::FlipMainDiag);
    CHECK(transposed.at(0, 1) == kFig1.at(1, 0));
    CHECK(*verify(transposed).residuum == 8);
}

TEST_CASE("the eight symmetries form a group") {
    std::mt19937_64 rng(5);
    const Square probe = random_square(rng, 4);
    auto key = [](const Square& s) { return s.cells(); };

    std::set<std::vector<Value>> images;
    for (D4 g : kD4Elements)
        images.insert(key(d4_apply(probe, g)));
    CHECK(images.size() == 8);  // trivial stabilizer for a random square

    // closure: composing any two elements lands back in the set
    for (D4 g : kD4Elements)
        for (D4 h : kD4Elements)
            CHECK(images.count(key(d4_apply(d4_apply(probe, g), h))) == 1);

    // inverses: every element undoes to the identity
    for (D4 g : kD4Elements) {
        bool has_inverse = false;
        for (D4 h : kD4Elements)
            if (d4_apply(d4_apply(probe, g), h) == probe)
                has_inverse = true;
        CHECK(has_inverse);
    }
}

TEST_CASE("d4_apply preserves magic, residuum and normality") {
    std::mt19937_64 rng(17);
    std::vector<Square> probes = order4_fixtures();
    probes.push_back(odd_square(5));
    for (int t = 0; t < 20; ++t)
        probes.push_back(random_square(rng, 3 + static_cast<int>(rng() % 4)));
    for (const Square& s : probes) {
        const auto base = verify(s);
        for (D4 g : kD4Elements) {
            const auto image = verify(d4_apply(s, g));
            CHECK(image.is_magic == base.is_magic);
            CHECK(image.residuum == base.residuum);
            CHECK(image.is_normal == base.is_normal);
        }
    }
}

TEST_CASE("canonical_form is idempotent and class-constant") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 50; ++t) {
        const Square s = random_square(rng, 2 + static_cast<int>(rng() % 4));
        const Square canon = canonical_form(s);
        CHECK(canonical_form(canon) == canon);
        for (D4 g : kD4Elements)
            CHECK(canonical_form(d4_apply(s, g)) == canon);
        // the canonical form is the minimum of the orbit
        for (D4 g : kD4Elements)
            CHECK(canon.cells() <= d4_apply(s, g).cells());
    }
}

TEST_CASE("orbit sizes divide 8") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 50; ++t) {
        const int size = orbit_size(random_square(rng, 2 + t % 4));
        CHECK(8 % size == 0);
    }
    CHECK(orbit_size(Square(1, {1})) == 1);
}

TEST_CASE("transpose_pre") {
    const auto t = transpose_pre(pre_matrix(5));
    const std::vector<Value> first_row = {21, 22, 23, 24, 25};
    for (int j = 0; j < 5; ++j)
        CHECK(t.at(0, j) == first_row[j]);
    CHECK(transpose_pre(t) == pre_matrix(5));
    auto a = t.cells();
    auto b = pre_matrix(5).cells();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
}

TEST_CASE("permute_pre reproduces the printed variant matrices") {
    const auto base = pre_matrix(5);

    const auto a1 = permute_pre(transpose_pre(base),
                                IndexPermutation({4, 5, 3, 1, 2}),
                                IndexPermutation({4, 1, 3, 5, 2}));
    CHECK(a1.cells() == std::vector<Value>{7,  10, 8,  6,  9,  4,  1,  3, 5,
                                           2,  14, 11, 13, 15, 12, 24, 21, 23,
                                           25, 22, 17, 20, 18, 16, 19});

    const auto a2 = permute_pre(base, IndexPermutation({2, 5, 3, 1, 4}),
                                IndexPermutation({1, 4, 3, 2, 5}));
    const std::vector<Value> a2_row = {22, 9, 12, 19, 2};
    for (int j = 0; j < 5; ++j)
        CHECK(a2.at(0, j) == a2_row[j]);

    const IndexPermutation both({5, 2, 3, 4, 1});
    const auto a3 = permute_pre(base, both, both);
    const std::vector<Value> a3_row = {5, 16, 15, 6, 25};
    for (int j = 0; j < 5; ++j)
        CHECK(a3.at(0, j) == a3_row[j]);

    SUBCASE("identity permutations leave the matrix unchanged") {
        const auto id = IndexPermutation::identity(5);
        CHECK(permute_pre(base, id, id) == base);
    }
}

TEST_CASE("permute_pre rejects permutations moving the middle index") {
    const auto base = pre_matrix(5);
    CHECK_THROWS_AS(permute_pre(base, IndexPermutation({3, 2, 1, 4, 5}),
                                IndexPermutation::identity(5)),
                    std::invalid_argument);
    CHECK_THROWS_AS(permute_pre(base, IndexPermutation::identity(3),
                                IndexPermutation::identity(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(IndexPermutation({1, 1, 3}), std::invalid_argument);
}

TEST_CASE("middle-fixed permutations preserve the magic property") {
    std::mt19937_64 rng(41);
    for (int n : {5, 7, 9}) {
        const auto base = pre_matrix(n);
        const Value expected = (static_cast<Value>(n) * n + 1) / 2;
        for (int t = 0; t < 30; ++t) {
            const auto permuted =
                permute_pre(base, random_middle_fixed(rng, n),
                            random_middle_fixed(rng, n));
            const auto report = verify(skew_wrap(permuted));
            CHECK(report.is_magic);
            CHECK(*report.residuum == expected);
        }
    }
}

TEST_CASE("fig8_transform maps the first square to the second") {
    const auto fixtures = order4_fixtures();
    const auto transformed = fig8_transform(fixtures[0]);
    CHECK(transformed == fixtures[1]);
    CHECK(transformed.at(0, 0) == fixtures[0].at(0, 0));  // fixed corner

    auto a = transformed.cells();
    auto b = fixtures[0].cells();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);

    CHECK_THROWS_AS(fig8_transform(Square(3, {1, 2, 3, 4, 5, 6, 7, 8, 9})),
                    std::invalid_argument);
}

TEST_CASE("order-5 variants verify with residuum 13") {
    const auto variants = order5_variants();
    REQUIRE(variants.size() == 4);
    CHECK(variants[0] == skew_wrap(pre_matrix(5)));
    for (const Square& v : variants) {
        const auto report = verify(v);
        CHECK(report.is_magic);
        CHECK(report.is_normal);
        CHECK(*report.residuum == 13);
    }
}
