#pragma once

#include <cstdint>
#include <vector>

#include "echosculpt/model.hpp"

namespace echosculpt {

// A +/-1 row; entries are exact integers so products and comparisons never
// see floating drift.
using SignRow = std::vector<std::int8_t>;

// Sequency-ordered Walsh function W_n of the given power-of-two length:
// first entry +1, exactly n regularly spaced sign changes, zero sum for
// n >= 1. Requires length > n.
SignRow walsh_function(int n, int length);

// Element-wise product. For Walsh inputs of equal length this is
// W_p o W_q = W_{p XOR q}.
SignRow schur_product(const SignRow& a, const SignRow& b);

int sign_change_count(const SignRow& row);

// One-spin sign assignments per column; two-spin rows are always derived as
// Schur products so S^{ij} = S^i * S^j holds exactly by construction.
struct SignMatrix {
    int q = 0;
    std::vector<SignRow> one_spin_rows;  // q rows, equal lengths

    int column_count() const { return q ? static_cast<int>(one_spin_rows[0].size()) : 0; }
    SignRow two_spin_row(int i, int j) const {
        return schur_product(one_spin_rows.at(i), one_spin_rows.at(j));
    }
    SignRow row(const Interaction& x) const {
        return x.is_coupling() ? two_spin_row(x.spin_a, x.spin_b) : one_spin_rows.at(x.spin_a);
    }
    // Column m as q one-spin signs.
    std::vector<std::int8_t> column(int m) const {
        std::vector<std::int8_t> col(q);
        for (int i = 0; i < q; ++i) col[i] = one_spin_rows[i][m];
        return col;
    }
};

// Overcomplete basis with one-spin rows W_{2^j}, j = 0..q-1, of length 2^q.
// Row labels (single bits and pairs of bits) are all distinct, so every
// interaction is independently controllable.
SignMatrix build_full_sign_matrix(int q);

// Deterministic bijection between [0, 2^q) and one-spin sign columns:
// spin j reads bit j (LSB = spin 0), bit 0 -> +1, bit 1 -> -1. The induced
// column set equals the full Walsh matrix's column set.
std::vector<std::int8_t> column_from_index(std::uint64_t m, int q);

// Assemble a SignMatrix from explicit columns (RROS bases, reduced bases).
SignMatrix matrix_from_columns(int q, const std::vector<std::vector<std::int8_t>>& columns);

}  // namespace echosculpt
