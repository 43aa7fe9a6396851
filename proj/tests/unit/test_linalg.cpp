#include <set>

#include "chaingeom/error.hpp"
#include "chaingeom/linalg.hpp"
#include "doctest.h"

using namespace chaingeom;
using namespace chaingeom::linalg;

namespace {

Mat from_code(const FiniteField& K, std::size_t r, std::size_t c, std::uint64_t code) {
  Mat m(r, c);
  for (auto& e : m.data) {
    e = static_cast<Elem>(code % K.order());
    code /= K.order();
  }
  return m;
}

// every K-combination of the rows, as a set
std::set<Vec> row_space(const FiniteField& K, const Mat& m) {
  std::set<Vec> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m.rows; ++i) total *= K.order();
  for (std::uint64_t code = 0; code < total; ++code) {
    Vec v(m.cols, 0);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < m.rows; ++i) {
      v = vec_add(K, v, vec_scale(K, static_cast<Elem>(c % K.order()), m.row(i)));
      c /= K.order();
    }
    out.insert(v);
  }
  return out;
}

std::size_t log_q(std::size_t n, std::size_t q) {
  std::size_t k = 0;
  while (n > 1) {
    n /= q;
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("rank equals log_q of the row space size") {
  for (std::uint32_t q : {2U, 3U}) {
    const FieldPtr K = make_field_of_order(q);
    std::uint64_t total = 1;
    for (int i = 0; i < 6; ++i) total *= q;
    for (std::uint64_t code = 0; code < total; code += (q == 2 ? 1 : 7)) {
      const Mat m = from_code(*K, 2, 3, code);
      const auto space = row_space(*K, m);
      CHECK(rank(*K, m) == log_q(space.size(), q));
      const Echelon e = rref(*K, m);
      CHECK(row_space(*K, e.form) == space);
      CHECK(e.pivots.size() == e.form.rows);
    }
  }
}

TEST_CASE("inverse exists iff full rank") {
  const FieldPtr K = make_field_of_order(3);
  std::size_t invertible = 0;
  for (std::uint64_t code = 0; code < 81; ++code) {
    const Mat m = from_code(*K, 2, 2, code);
    const auto inv = inverse(*K, m);
    CHECK(inv.has_value() == (rank(*K, m) == 2));
    if (inv) {
      ++invertible;
      CHECK(mul(*K, m, *inv) == Mat::identity(2));
      CHECK(mul(*K, *inv, m) == Mat::identity(2));
    }
  }
  CHECK(invertible == 48);
}

TEST_CASE("kernels contain exactly the annihilated vectors") {
  const FieldPtr K = make_field_of_order(2);
  for (std::uint64_t code = 0; code < 512; code += 5) {
    const Mat m = from_code(*K, 3, 3, code);
    const Mat lk = left_kernel(*K, m);
    const Mat rk = right_kernel(*K, m);
    std::set<Vec> left, right;
    for (std::uint64_t v = 0; v < 8; ++v) {
      const Vec x{static_cast<Elem>(v & 1U), static_cast<Elem>((v >> 1U) & 1U), static_cast<Elem>((v >> 2U) & 1U)};
      if (is_zero(vec_mul(*K, x, m))) left.insert(x);
      if (is_zero(vec_mul(*K, x, transpose(m)))) right.insert(x);
    }
    CHECK(row_space(*K, lk) == left);
    CHECK(row_space(*K, rk) == right);
  }
}

TEST_CASE("projective points") {
  for (std::uint32_t q : {2U, 3U, 4U}) {
    const FieldPtr K = make_field_of_order(q);
    const auto pts = projective_points(*K, 4);
    CHECK(pts.size() == (q * q * q * q - 1) / (q - 1));
    std::set<Vec> seen(pts.begin(), pts.end());
    CHECK(seen.size() == pts.size());
    for (const Vec& v : pts) CHECK(normalized(*K, v) == v);
  }
  CHECK_THROWS_AS(projective_points(*make_field_of_order(3), 8, 100), CapExceeded);
}

TEST_CASE("stacking and transpose") {
  const FieldPtr K = make_field_of_order(5);
  const Mat a = from_code(*K, 2, 3, 12345);
  const Mat b = from_code(*K, 2, 3, 999);
  const Mat h = hstack(a, b);
  CHECK(h.cols == 6);
  CHECK(h(1, 4) == b(1, 1));
  const Mat v = vstack(a, b);
  CHECK(v.rows == 4);
  CHECK(v(3, 2) == b(1, 2));
  CHECK(transpose(transpose(a)) == a);
  CHECK(sub(*K, add(*K, a, b), b) == a);
}
