#include "echosculpt/walsh.hpp"

#include <bit>
#include <stdexcept>

namespace echosculpt {

SignRow walsh_function(int n, int length) {
    if (n < 0) throw std::invalid_argument("walsh_function: n must be nonnegative");
    if (length <= 0 || (length & (length - 1)) != 0)
        throw std::invalid_argument("walsh_function: length must be a power of 2");
    if (n >= length)
        throw std::invalid_argument("walsh_function: length must exceed n");

    const int bits = std::countr_zero(static_cast<unsigned>(length));
    const unsigned gray = static_cast<unsigned>(n) ^ (static_cast<unsigned>(n) >> 1);
    SignRow row(length);
    for (int x = 0; x < length; ++x) {
        // Bit b of gray(n) pairs with bit (bits-1-b) of the position index;
        // this is the sequency ordering (n equally spaced sign changes).
        int parity = 0;
        for (int b = 0; b < bits; ++b)
            if ((gray >> b) & 1u) parity ^= (x >> (bits - 1 - b)) & 1;
        row[x] = parity ? -1 : 1;
    }
    return row;
}

SignRow schur_product(const SignRow& a, const SignRow& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("schur_product: length mismatch");
    SignRow out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = static_cast<std::int8_t>(a[i] * b[i]);
    return out;
}

int sign_change_count(const SignRow& row) {
    int changes = 0;
    for (std::size_t i = 1; i < row.size(); ++i)
        if (row[i] != row[i - 1]) ++changes;
    return changes;
}

SignMatrix build_full_sign_matrix(int q) {
    if (q < 1) throw std::invalid_argument("build_full_sign_matrix: q must be at least 1");
    if (q > 25) throw std::invalid_argument("build_full_sign_matrix: q too large to materialize");
    const int length = 1 << q;
    SignMatrix s;
    s.q = q;
    s.one_spin_rows.reserve(q);
    for (int j = 0; j < q; ++j) s.one_spin_rows.push_back(walsh_function(1 << j, length));
    return s;
}

std::vector<std::int8_t> column_from_index(std::uint64_t m, int q) {
    if (q < 1 || q > 63 || m >= (1ull << q))
        throw std::out_of_range("column_from_index: index out of range");
    std::vector<std::int8_t> col(q);
    for (int j = 0; j < q; ++j) col[j] = ((m >> j) & 1ull) ? -1 : 1;
    return col;
}

SignMatrix matrix_from_columns(int q, const std::vector<std::vector<std::int8_t>>& columns) {
    SignMatrix s;
    s.q = q;
    s.one_spin_rows.assign(q, SignRow(columns.size()));
    for (std::size_t m = 0; m < columns.size(); ++m) {
        if (static_cast<int>(columns[m].size()) != q)
            throw std::invalid_argument("matrix_from_columns: column length mismatch");
        for (int i = 0; i < q; ++i) s.one_spin_rows[i][m] = columns[m][i];
    }
    return s;
}

}  // namespace echosculpt
