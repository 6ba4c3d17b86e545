#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "naive_oracle.hpp"
#include "subsq/core.hpp"
#include "subsq/transform.hpp"

using namespace subsq;

namespace {

const Square kFig1(4, {1, 6, 13, 2, 10, 5, 14, 9, 7, 12, 11, 16, 8, 3, 4, 15});

const Square kOrder6(6, {1,  11, 12, 13, 29, 2,  17, 5,  19, 20, 8,  33,
                         34, 14, 6,  9,  28, 23, 32, 16, 10, 7,  24, 25,
                         35, 26, 27, 22, 21, 15, 3,  36, 18, 31, 30, 4});

}  // namespace

TEST_CASE("wrap_index brings any integer into 1..n") {
    CHECK(wrap_index(6, 5) == 1);
    CHECK(wrap_index(5, 5) == 5);
    CHECK(wrap_index(0, 5) == 5);
    CHECK(wrap_index(-4, 5) == 1);
    for (int k = -20; k <= 20; ++k)
        CHECK(wrap_index(k, 7) == wrap_index(k + 7, 7));
    CHECK_THROWS_AS(wrap_index(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(wrap_index(3, -2), std::invalid_argument);
}

TEST_CASE("residuum examples") {
    CHECK(residuum(std::vector<Value>{11, 24, 9, 16, 3}) == 13);
    CHECK(residuum(std::vector<Value>{1, 6, 13, 2}) == 8);
    CHECK(residuum(std::vector<Value>{5}) == 5);
    CHECK(residuum(std::vector<Value>{3, 3}) == 0);
    CHECK_THROWS_AS(residuum(std::vector<Value>{}), std::invalid_argument);
}

TEST_CASE("residuum is permutation invariant") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 2000; ++t) {
        auto values = testing::random_line(rng);
        const Value expected = residuum(values);
        std::shuffle(values.begin(), values.end(), rng);
        CHECK(residuum(values) == expected);
    }
}

TEST_CASE("residuum parity, shift and scale laws") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Value> shift(-50, 50);
    std::uniform_int_distribution<Value> scale(0, 9);
    for (int t = 0; t < 2000; ++t) {
        const auto values = testing::random_line(rng);
        const Value r = residuum(values);
        Value sum = 0;
        for (Value v : values)
            sum += v;
        CHECK(((r - sum) % 2 + 2) % 2 == 0);

        const Value c = shift(rng);
        std::vector<Value> shifted = values;
        for (Value& v : shifted)
            v += c;
        if (values.size() % 2 == 0)
            CHECK(residuum(shifted) == r);
        else
            CHECK(residuum(shifted) == r + c);

        const Value f = scale(rng);
        std::vector<Value> scaled = values;
        for (Value& v : scaled)
            v *= f;
        CHECK(residuum(scaled) == f * r);

        const Value hi = *std::max_element(values.begin(), values.end());
        const Value lo = *std::min_element(values.begin(), values.end());
        CHECK(r >= 0);
        CHECK(r <= hi);
        if (values.size() % 2 == 1)
            CHECK(r >= lo);
    }
}

TEST_CASE("extract_lines covers rows, columns and diagonals") {
    SUBCASE("order 1") {
        const auto lines = extract_lines(Square(1, {7}));
        REQUIRE(lines.size() == 4);
        for (const Line& line : lines)
            CHECK(line.values == std::vector<Value>{7});
    }
    SUBCASE("order 4 fixture") {
        const auto lines = extract_lines(kFig1);
        REQUIRE(lines.size() == 10);
        CHECK(lines[0].values == std::vector<Value>{1, 6, 13, 2});
        CHECK(lines[8].kind == LineKind::MainDiagonal);
        CHECK(lines[8].values == std::vector<Value>{1, 5, 11, 15});
    }
    SUBCASE("order 2") {
        const auto lines = extract_lines(Square(2, {1, 2, 3, 4}));
        REQUIRE(lines.size() == 6);
        CHECK(lines[0].values == std::vector<Value>{1, 2});
        CHECK(lines[1].values == std::vector<Value>{3, 4});
        CHECK(lines[2].values == std::vector<Value>{1, 3});
        CHECK(lines[3].values == std::vector<Value>{2, 4});
        CHECK(lines[4].values == std::vector<Value>{1, 4});
        CHECK(lines[5].values == std::vector<Value>{2, 3});
    }
}

TEST_CASE("verify the classical squares") {
    const auto fig1 = verify(kFig1);
    CHECK(fig1.is_magic);
    CHECK(*fig1.residuum == 8);
    CHECK(fig1.is_normal);

    const auto order6 = verify(kOrder6);
    CHECK(order6.is_magic);
    CHECK(*order6.residuum == 18);
    CHECK(order6.is_normal);

    const auto bad = verify(Square(2, {1, 2, 3, 4}));
    CHECK_FALSE(bad.is_magic);
    CHECK_FALSE(bad.residuum.has_value());
    CHECK(bad.per_line.size() == 6);
}

TEST_CASE("verify is invariant under the dihedral symmetries") {
    std::mt19937_64 rng(3);
    std::vector<Square> squares{kFig1, kOrder6, Square(2, {1, 2, 3, 4})};
    std::vector<Value> cells(9);
    std::iota(cells.begin(), cells.end(), 1);
    std::shuffle(cells.begin(), cells.end(), rng);
    squares.emplace_back(3, cells);
    for (const Square& s : squares) {
        const auto base = verify(s);
        for (D4 g : kD4Elements) {
            const auto image = verify(d4_apply(s, g));
            CHECK(image.is_magic == base.is_magic);
            CHECK(image.residuum == base.residuum);
            CHECK(image.is_normal == base.is_normal);
        }
    }
}

TEST_CASE("square construction rejects bad shapes") {
    CHECK_THROWS_AS(Square(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(Square(2, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("text format round trip and rejection") {
    CHECK(to_text(kFig1) == "4\n1 6 13 2\n10 5 14 9\n7 12 11 16\n8 3 4 15\n");
    CHECK(parse_text(to_text(kFig1)) == kFig1);
    CHECK(parse_text(to_text(kOrder6)) == kOrder6);

    CHECK_THROWS_AS(parse_text("2\n1 2\n3\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text("2\n1 2\n3 x\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text("2\n1 2\n3 4\n5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_text("0\n"), std::invalid_argument);
}

TEST_CASE("json format round trip and rejection") {
    CHECK(parse_json(to_json(kFig1)) == kFig1);
    CHECK(parse_json(R"({"n":1,"cells":[[7]]})") == Square(1, {7}));
    CHECK_THROWS_AS(parse_json(R"({"n":2,"cells":[[1,2],[3]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_json(R"({"n":3,"cells":[[1,2],[3,4]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_json(R"({"n":2,"cells":[[1,2],[3,4.5]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_json("not json"), std::invalid_argument);
}

TEST_CASE("random parse/print round trips") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        const int n = 1 + static_cast<int>(rng() % 9);
        std::vector<Value> cells(static_cast<std::size_t>(n) * n);
        for (Value& v : cells)
            v = static_cast<Value>(rng() % 10000) + 1;
        const Square s(n, cells);
        CHECK(parse_text(to_text(s)) == s);
        CHECK(parse_json(to_json(s)) == s);
    }
}
