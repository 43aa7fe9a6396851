#pragma once

// Dense matrices over a FiniteField and the handful of exact linear-algebra
// routines the rest of the library needs. Row vectors act on the left:
// a vector u is mapped by a matrix A to u * A.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chaingeom/field.hpp"

namespace chaingeom {

using Vec = std::vector<Elem>;

struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  static Mat identity(std::size_t n);
  static Mat from_rows(std::size_t cols, std::span<const Vec> rows);

  Elem& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::span<const Elem> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  Vec row_vec(std::size_t i) const { return {data.begin() + static_cast<std::ptrdiff_t>(i * cols), data.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols)}; }
  bool empty() const { return rows == 0; }

  /// Byte key usable in hash maps.
  std::string key() const;

  bool operator==(const Mat&) const = default;
  auto operator<=>(const Mat&) const = default;
};

namespace linalg {

Mat mul(const FiniteField& K, const Mat& a, const Mat& b);
Mat add(const FiniteField& K, const Mat& a, const Mat& b);
Mat sub(const FiniteField& K, const Mat& a, const Mat& b);
Mat scale(const FiniteField& K, Elem c, const Mat& a);
Mat transpose(const Mat& a);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);

Vec vec_mul(const FiniteField& K, std::span<const Elem> v, const Mat& a);
Vec vec_scale(const FiniteField& K, Elem c, std::span<const Elem> v);
Vec vec_add(const FiniteField& K, std::span<const Elem> a, std::span<const Elem> b);
bool is_zero(std::span<const Elem> v);
/// Scales v so that its first nonzero entry is one. v must be nonzero.
Vec normalized(const FiniteField& K, std::span<const Elem> v);

struct Echelon {
  Mat form;                          // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row
};

Echelon rref(const FiniteField& K, Mat m);
std::size_t rank(const FiniteField& K, const Mat& m);
std::optional<Mat> inverse(const FiniteField& K, const Mat& m);
/// Rows form a basis (in reduced echelon form) of {x : m * x^T = 0}.
Mat right_kernel(const FiniteField& K, const Mat& m);
/// Rows form a basis (in reduced echelon form) of {v : v * m = 0}.
Mat left_kernel(const FiniteField& K, const Mat& m);

/// Every nonzero vector of K^n up to scalars, normalized, in increasing
/// base-q code order. Throws CapExceeded beyond cap points.
std::vector<Vec> projective_points(const FiniteField& K, std::size_t n, std::size_t cap = 100000);

}  // namespace linalg
}  // namespace chaingeom
