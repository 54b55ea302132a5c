#include "presdist/field.hpp"

#include <stdexcept>

namespace presdist {

bool is_prime_modulus(std::uint32_t q) {
    if (q < 2 || q > 251) return false;
    for (std::uint32_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) return false;
    }
    return true;
}

namespace {

void require_prime(std::uint32_t q) {
    if (!is_prime_modulus(q)) {
        throw std::invalid_argument("field modulus must be a prime <= 251, got " +
                                    std::to_string(q));
    }
}

}  // namespace

std::uint32_t field_add(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return (a + b) % q;
}

std::uint32_t field_sub(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return (a + q - b % q) % q;
}

std::uint32_t field_mul(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return (a * b) % q;
}

std::uint32_t field_neg(std::uint32_t a, std::uint32_t q) {
    return a % q == 0 ? 0 : q - a % q;
}

std::uint32_t field_inv(std::uint32_t a, std::uint32_t q) {
    a %= q;
    if (a == 0) throw std::invalid_argument("inverse of zero in GF(q)");
    // extended Euclid on (a, q)
    std::int64_t t = 0, new_t = 1, r = q, new_r = a;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        std::int64_t tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += q;
    return static_cast<std::uint32_t>(t);
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t q)
    : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 0) {
    require_prime(q);
}

FieldMatrix FieldMatrix::identity(std::size_t n, std::uint32_t q) {
    FieldMatrix m(n, n, q);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FieldMatrix FieldMatrix::from_rows(const std::vector<std::vector<std::uint32_t>>& rows,
                                   std::uint32_t q) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    FieldMatrix m(r, c, q);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

void FieldMatrix::set(std::size_t i, std::size_t j, std::uint32_t v) {
    data_[i * cols_ + j] = v % q_;
}

std::vector<std::uint32_t> FieldMatrix::row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<std::uint32_t> FieldMatrix::col(std::size_t j) const {
    std::vector<std::uint32_t> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = get(i, j);
    return out;
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix t(cols_, rows_, q_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, get(i, j));
    }
    return t;
}

std::vector<std::uint32_t> FieldMatrix::apply(const std::vector<std::uint32_t>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch in apply");
    std::vector<std::uint32_t> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint32_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            acc = (acc + get(i, j) * (v[j] % q_)) % q_;
        }
        out[i] = acc;
    }
    return out;
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.modulus() != b.modulus()) throw std::invalid_argument("modulus mismatch in mat_mul");
    if (a.cols() != b.rows()) throw std::invalid_argument("shape mismatch in mat_mul");
    FieldMatrix out(a.rows(), b.cols(), a.modulus());
    const std::uint32_t q = a.modulus();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::uint32_t aik = a.get(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out.set(i, j, (out.get(i, j) + aik * b.get(k, j)) % q);
            }
        }
    }
    return out;
}

namespace {

// In-place reduced row echelon form, pivoting only on the first
// `pivot_cols` columns; returns the number of pivots. Pivot choice is the
// first row with a nonzero entry, so results are reproducible.
std::size_t echelonize(std::vector<std::vector<std::uint32_t>>& m, std::uint32_t q,
                       std::size_t pivot_cols) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    const std::size_t pcols = std::min(pivot_cols, cols);
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < pcols && pivot_row < rows; ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows && m[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[pivot_row]);
        const std::uint32_t inv = field_inv(m[pivot_row][col], q);
        for (std::size_t j = col; j < cols; ++j) {
            m[pivot_row][j] = (m[pivot_row][j] * inv) % q;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row || m[i][col] == 0) continue;
            const std::uint32_t f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) {
                m[i][j] = (m[i][j] + (q - f) * m[pivot_row][j]) % q;
            }
        }
        ++pivot_row;
    }
    return pivot_row;
}

}  // namespace

std::size_t rank(const FieldMatrix& m) {
    std::vector<std::vector<std::uint32_t>> work(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) work[i] = m.row(i);
    return echelonize(work, m.modulus(), m.cols());
}

std::optional<FieldMatrix> invert(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("invert needs a square matrix");
    const std::size_t n = m.rows();
    const std::uint32_t q = m.modulus();
    std::vector<std::vector<std::uint32_t>> work(n, std::vector<std::uint32_t>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) work[i][j] = m.get(i, j);
        work[i][n + i] = 1;
    }
    if (echelonize(work, q, n) < n) return std::nullopt;
    FieldMatrix out(n, n, q);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.set(i, j, work[i][n + j]);
    }
    return out;
}

std::optional<std::vector<std::uint32_t>> solve_membership(
    const std::vector<std::vector<std::uint32_t>>& basis,
    const std::vector<std::uint32_t>& v, std::uint32_t q) {
    require_prime(q);
    const std::size_t dim = v.size();
    for (const auto& b : basis) {
        if (b.size() != dim) throw std::invalid_argument("basis vector length mismatch");
    }
    const std::size_t k = basis.size();
    // Augmented system: columns are the basis vectors, last column is v.
    std::vector<std::vector<std::uint32_t>> work(dim, std::vector<std::uint32_t>(k + 1, 0));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < k; ++j) work[i][j] = basis[j][i] % q;
        work[i][k] = v[i] % q;
    }
    echelonize(work, q, k);
    std::vector<std::uint32_t> coeffs(k, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t lead = 0;
        while (lead < k && work[i][lead] == 0) ++lead;
        if (lead == k) {
            if (work[i][k] != 0) return std::nullopt;  // inconsistent row
            continue;
        }
        coeffs[lead] = work[i][k];
    }
    return coeffs;
}

}  // namespace presdist
