#include "chaingeom/linalg.hpp"

#include <algorithm>

#include "chaingeom/error.hpp"

namespace chaingeom {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(std::size_t cols, std::span<const Vec> rows) {
  Mat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidArgument("row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.data.begin() + static_cast<std::ptrdiff_t>(i * cols));
  }
  return m;
}

std::string Mat::key() const {
  std::string k;
  k.reserve(data.size() * 2 + 2);
  k.push_back(static_cast<char>(rows));
  k.push_back(static_cast<char>(cols));
  for (Elem e : data) {
    k.push_back(static_cast<char>(e & 0xFFU));
    k.push_back(static_cast<char>(e >> 8U));
  }
  return k;
}

namespace linalg {

Mat mul(const FiniteField& K, const Mat& a, const Mat& b) {
  if (a.cols != b.rows) throw InvalidArgument("matrix product shape mismatch");
  Mat c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Elem aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = K.add(c(i, j), K.mul(aik, b(k, j)));
    }
  }
  return c;
}

Mat add(const FiniteField& K, const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw InvalidArgument("matrix sum shape mismatch");
  Mat c(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = K.add(a.data[i], b.data[i]);
  return c;
}

Mat sub(const FiniteField& K, const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw InvalidArgument("matrix difference shape mismatch");
  Mat c(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = K.sub(a.data[i], b.data[i]);
  return c;
}

Mat scale(const FiniteField& K, Elem s, const Mat& a) {
  Mat c = a;
  for (Elem& e : c.data) e = K.mul(s, e);
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  }
  return t;
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows != b.rows) throw InvalidArgument("hstack row mismatch");
  Mat c(a.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols; ++j) c(i, a.cols + j) = b(i, j);
  }
  return c;
}

Mat vstack(const Mat& a, const Mat& b) {
  if (a.rows == 0) return b;
  if (b.rows == 0) return a;
  if (a.cols != b.cols) throw InvalidArgument("vstack column mismatch");
  Mat c(a.rows + b.rows, a.cols);
  std::copy(a.data.begin(), a.data.end(), c.data.begin());
  std::copy(b.data.begin(), b.data.end(), c.data.begin() + static_cast<std::ptrdiff_t>(a.data.size()));
  return c;
}

Vec vec_mul(const FiniteField& K, std::span<const Elem> v, const Mat& a) {
  if (v.size() != a.rows) throw InvalidArgument("vector-matrix shape mismatch");
  Vec out(a.cols, 0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols; ++j) out[j] = K.add(out[j], K.mul(v[i], a(i, j)));
  }
  return out;
}

Vec vec_scale(const FiniteField& K, Elem c, std::span<const Elem> v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = K.mul(c, v[i]);
  return out;
}

Vec vec_add(const FiniteField& K, std::span<const Elem> a, std::span<const Elem> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = K.add(a[i], b[i]);
  return out;
}

bool is_zero(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

Vec normalized(const FiniteField& K, std::span<const Elem> v) {
  for (Elem e : v) {
    if (e != 0) return vec_scale(K, K.inv(e), v);
  }
  throw InvalidArgument("cannot normalize the zero vector");
}

Echelon rref(const FiniteField& K, Mat m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t sel = r;
    while (sel < m.rows && m(sel, c) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != r) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(sel, j), m(r, j));
    }
    const Elem inv = K.inv(m(r, c));
    for (std::size_t j = 0; j < m.cols; ++j) m(r, j) = K.mul(inv, m(r, j));
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Elem f = m(i, c);
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = K.sub(m(i, j), K.mul(f, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  m.rows = r;
  m.data.resize(r * m.cols);
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const FiniteField& K, const Mat& m) { return rref(K, m).pivots.size(); }

std::optional<Mat> inverse(const FiniteField& K, const Mat& m) {
  if (m.rows != m.cols) throw InvalidArgument("inverse of a non-square matrix");
  const std::size_t n = m.rows;
  auto e = rref(K, hstack(m, Mat::identity(n)));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.form(i, n + j);
  }
  return inv;
}

Mat right_kernel(const FiniteField& K, const Mat& m) {
  auto e = rref(K, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    Vec x(m.cols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = K.neg(e.form(r, f));
    basis.push_back(std::move(x));
  }
  if (basis.empty()) return Mat(0, m.cols);
  return rref(K, Mat::from_rows(m.cols, basis)).form;
}

Mat left_kernel(const FiniteField& K, const Mat& m) { return right_kernel(K, transpose(m)); }

std::vector<Vec> projective_points(const FiniteField& K, std::size_t n, std::size_t cap) {
  const std::uint64_t q = K.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  if ((total - 1) / (q - 1) > cap) {
    throw CapExceeded("projective space of dimension " + std::to_string(n - 1) + " over " + K.descriptor() +
                      " exceeds the point cap");
  }
  std::vector<Vec> out;
  Vec v(n, 0);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    // most significant coordinate first so that codes increase with lex order
    for (std::size_t i = n; i-- > 0;) {
      v[i] = static_cast<Elem>(c % q);
      c /= q;
    }
    auto lead = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
    if (*lead == 1) out.push_back(v);
  }
  return out;
}

}  // namespace linalg
}  // namespace chaingeom
