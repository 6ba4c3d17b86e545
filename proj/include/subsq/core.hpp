#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Core types and the residuum function for magic squares of subtraction:
// a square arrangement where every row, column and both diagonals, sorted
// in decreasing order and alternately subtracted, leave the same value.

namespace subsq {

using Value = std::int64_t;

// An n x n grid of integers, row-major. Rows/columns are 0-based in code;
// file formats and CLI output speak 1-based like the literature does.
class Square {
public:
    Square(int order, std::vector<Value> cells);
    static Square filled(int order, Value value = 0);

    int order() const { return order_; }
    Value at(int row, int col) const { return cells_[row * order_ + col]; }
    Value& at(int row, int col) { return cells_[row * order_ + col]; }
    const std::vector<Value>& cells() const { return cells_; }

    bool operator==(const Square&) const = default;

private:
    int order_;
    std::vector<Value> cells_;
};

enum class LineKind { Row, Column, MainDiagonal, AntiDiagonal };

struct Line {
    LineKind kind;
    int index;  // row/column number (0-based); 0 for diagonals
    std::vector<Value> values;
};

std::string line_name(const Line& line);

struct VerificationReport {
    bool is_magic = false;
    std::optional<Value> residuum;  // set iff is_magic
    bool is_normal = false;
    std::vector<std::pair<Line, Value>> per_line;
};

// [k]_n = ((k-1) mod n) + 1, with mathematical modulo, so the result is
// always in 1..n even for k <= 0. Throws std::invalid_argument if n < 1.
int wrap_index(std::int64_t k, int n);

// Alternating sum of the values sorted in decreasing order. Throws on an
// empty span. Tie order among equal values does not affect the result.
Value residuum(std::span<const Value> values);
Value residuum(const Line& line);

// The n rows (top to bottom), n columns (left to right), main diagonal
// and antidiagonal: 2n+2 lines in that order.
std::vector<Line> extract_lines(const Square& square);

// A square is magic iff all 2n+2 line residua agree; normal iff its cells
// are exactly 1..n^2.
VerificationReport verify(const Square& square);

bool is_normal(const Square& square);

// Plain text format: first line n, then n lines of n space-separated
// integers, trailing newline.
std::string to_text(const Square& square);
Square parse_text(std::istream& in);
Square parse_text(const std::string& text);

// Structured format: {"n": <int>, "cells": [[...], ...]} (row-major rows).
std::string to_json(const Square& square);
Square parse_json(const std::string& text);

}  // namespace subsq
