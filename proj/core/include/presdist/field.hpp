#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace presdist {

bool is_prime_modulus(std::uint32_t q);

/// An element of GF(q) for prime q <= 251.
struct FieldElem {
    std::uint32_t value = 0;
    std::uint32_t q = 2;
};

std::uint32_t field_add(std::uint32_t a, std::uint32_t b, std::uint32_t q);
std::uint32_t field_sub(std::uint32_t a, std::uint32_t b, std::uint32_t q);
std::uint32_t field_mul(std::uint32_t a, std::uint32_t b, std::uint32_t q);
std::uint32_t field_neg(std::uint32_t a, std::uint32_t q);
std::uint32_t field_inv(std::uint32_t a, std::uint32_t q);

/// Dense row-major matrix over GF(q). Values are immutable after
/// construction apart from set(), which is only used while assembling.
class FieldMatrix {
  public:
    FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t q);

    static FieldMatrix identity(std::size_t n, std::uint32_t q);
    static FieldMatrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows,
                                 std::uint32_t q);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return q_; }

    std::uint32_t get(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, std::uint32_t v);
    FieldElem at(std::size_t i, std::size_t j) const { return FieldElem{get(i, j), q_}; }

    std::vector<std::uint32_t> row(std::size_t i) const;
    std::vector<std::uint32_t> col(std::size_t j) const;

    FieldMatrix transpose() const;

    /// Matrix * column vector.
    std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& v) const;

    bool operator==(const FieldMatrix& other) const = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::uint32_t q_;
    std::vector<std::uint32_t> data_;
};

/// Product over GF(q); throws std::invalid_argument on shape or modulus
/// mismatch.
FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);

/// Rank by Gaussian elimination with first-nonzero pivots.
std::size_t rank(const FieldMatrix& m);

/// Gauss-Jordan inverse; nullopt when the matrix is singular. Throws on
/// non-square input.
std::optional<FieldMatrix> invert(const FieldMatrix& m);

/// Coefficients c with sum_i c_i * basis_i = v, or nullopt when v is outside
/// the span. The basis vectors need not be independent; free coefficients
/// are fixed to zero.
std::optional<std::vector<std::uint32_t>> solve_membership(
    const std::vector<std::vector<std::uint32_t>>& basis,
    const std::vector<std::uint32_t>& v, std::uint32_t q);

}  // namespace presdist
