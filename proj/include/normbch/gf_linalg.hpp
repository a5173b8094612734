#ifndef NORMBCH_GF_LINALG_HPP
#define NORMBCH_GF_LINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

// Dense linear algebra over a prime field GF(q).
namespace nbch::gf {

using Row = std::vector<std::uint32_t>;
using Matrix = std::vector<Row>;

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(Matrix& a, std::uint32_t q);

std::size_t rank(Matrix a, std::uint32_t q);

/// Basis of the right kernel {x : A x = 0}, one vector per free column.
Matrix kernel(Matrix a, std::size_t cols, std::uint32_t q);

/// Some solution of A x = b, or nullopt when inconsistent.
std::optional<Row> solve(Matrix a, const Row& b, std::uint32_t q);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a, std::uint32_t q);

}  // namespace nbch::gf

#endif  // NORMBCH_GF_LINALG_HPP
