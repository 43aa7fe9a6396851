#include "chaingeom/geometry.hpp"

#include <algorithm>
#include <set>

#include "chaingeom/error.hpp"

namespace chaingeom {

Subspace::Subspace(const FiniteField& K, const Mat& generators) : basis_(linalg::rref(K, generators).form) {}

bool Subspace::contains(const FiniteField& K, std::span<const Elem> v) const {
  if (v.size() != ambient()) throw InvalidArgument("vector length does not match the ambient space");
  // reduce v by the echelon basis; v is inside iff the residue vanishes
  Vec r(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.rows; ++i) {
    std::size_t pivot = 0;
    while (basis_(i, pivot) == 0) ++pivot;
    const Elem f = r[pivot];
    if (f == 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = K.sub(r[j], K.mul(f, basis_(i, j)));
  }
  return linalg::is_zero(r);
}

Subspace join(const FiniteField& K, const Subspace& a, const Subspace& b) {
  return Subspace(K, linalg::vstack(a.basis(), b.basis()));
}

Subspace meet(const FiniteField& K, const Subspace& a, const Subspace& b) {
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient());
  const Mat ker = linalg::left_kernel(K, linalg::vstack(a.basis(), b.basis()));
  if (ker.rows == 0) return Subspace::zero(a.ambient());
  Mat coeffs(ker.rows, a.dim());
  for (std::size_t i = 0; i < ker.rows; ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) coeffs(i, j) = ker(i, j);
  }
  return Subspace(K, linalg::mul(K, coeffs, a.basis()));
}

std::size_t meet_dim(const FiniteField& K, const Subspace& a, const Subspace& b) {
  return a.dim() + b.dim() - linalg::rank(K, linalg::vstack(a.basis(), b.basis()));
}

bool is_contained(const FiniteField& K, const Subspace& a, const Subspace& b) { return meet_dim(K, a, b) == a.dim(); }

std::vector<Vec> points_of(const FiniteField& K, const Subspace& s) {
  std::vector<Vec> out;
  if (s.dim() == 0) return out;
  for (const Vec& c : linalg::projective_points(K, s.dim())) out.push_back(linalg::vec_mul(K, c, s.basis()));
  return out;
}

Subspace span_of(const FiniteField& K, std::span<const Vec> vectors, std::size_t ambient) {
  if (vectors.empty()) return Subspace::zero(ambient);
  return Subspace(K, Mat::from_rows(ambient, vectors));
}

namespace {

void require_pairwise_skew(const FiniteField& K, const Subspace& l1, const Subspace& l2, const Subspace& l3) {
  for (const Subspace* l : {&l1, &l2, &l3}) {
    if (l->ambient() != 4 || l->dim() != 2) throw InvalidArgument("regulus construction needs lines of PG(3,q)");
  }
  if (meet_dim(K, l1, l2) != 0 || meet_dim(K, l1, l3) != 0 || meet_dim(K, l2, l3) != 0) {
    throw InvalidArgument("lines are not pairwise skew");
  }
}

// Line through the point p meeting the skew lines m and n (p on neither).
Subspace line_through_meeting(const FiniteField& K, const Vec& p, const Subspace& m, const Subspace& n) {
  const Subspace pt = span_of(K, std::span<const Vec>(&p, 1), 4);
  const Subspace plane = join(K, pt, m);
  const Subspace q = meet(K, plane, n);
  if (q.dim() != 1) throw InternalError("plane through a point and a skew line misses the third line");
  return join(K, pt, q);
}

}  // namespace

std::vector<Subspace> transversals_of_three(const FiniteField& K, const Subspace& l1, const Subspace& l2,
                                            const Subspace& l3) {
  require_pairwise_skew(K, l1, l2, l3);
  std::vector<Subspace> out;
  for (const Vec& p : points_of(K, l1)) out.push_back(line_through_meeting(K, p, l2, l3));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> regulus_through_three(const FiniteField& K, const Subspace& l1, const Subspace& l2,
                                            const Subspace& l3) {
  const auto t = transversals_of_three(K, l1, l2, l3);
  std::vector<Subspace> out;
  for (const Vec& p : points_of(K, t[0])) out.push_back(line_through_meeting(K, p, t[1], t[2]));
  std::sort(out.begin(), out.end());
  for (const Subspace& l : out) {
    for (const Subspace& tr : t) {
      if (meet_dim(K, l, tr) != 1) throw InternalError("regulus line misses a transversal");
    }
  }
  return out;
}

bool is_regulus(const FiniteField& K, std::span<const Subspace> lines) {
  if (lines.size() != K.order() + 1U) return false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].ambient() != 4 || lines[i].dim() != 2) return false;
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (meet_dim(K, lines[i], lines[j]) != 0) return false;
    }
  }
  std::vector<Subspace> sorted(lines.begin(), lines.end());
  std::sort(sorted.begin(), sorted.end());
  return regulus_through_three(K, lines[0], lines[1], lines[2]) == sorted;
}

Pg3::Pg3(FieldPtr K) : K_(std::move(K)) {
  const FiniteField& F = *K_;
  const std::size_t q = F.order();
  points_ = linalg::projective_points(F, 4);
  point_index_.assign(q * q * q * q, -1);
  for (std::size_t i = 0; i < points_.size(); ++i) point_index_[code(points_[i])] = static_cast<std::int32_t>(i);
  const std::size_t np = points_.size();
  words_ = (np + 63) / 64;
  pair_line_.assign(np * np, -1);

  std::vector<std::uint32_t> pts;
  for (std::uint32_t a = 0; a < np; ++a) {
    for (std::uint32_t b = a + 1; b < np; ++b) {
      if (pair_line_[a * np + b] >= 0) continue;
      pts.clear();
      pts.push_back(a);
      for (std::uint32_t t = 0; t < q; ++t) {
        pts.push_back(point_id(linalg::vec_add(F, points_[b], linalg::vec_scale(F, static_cast<Elem>(t), points_[a]))));
      }
      std::sort(pts.begin(), pts.end());
      const auto id = static_cast<std::int32_t>(lines_.size());
      for (std::uint32_t x : pts) {
        for (std::uint32_t y : pts) {
          if (x != y) pair_line_[x * np + y] = id;
        }
      }
      const Vec rows[2] = {points_[a], points_[b]};
      lines_.push_back(span_of(F, rows, 4));
      line_points_.push_back(pts);
      bits_.resize(bits_.size() + words_, 0);
      for (std::uint32_t x : pts) bits_[static_cast<std::size_t>(id) * words_ + x / 64] |= 1ULL << (x % 64);
    }
  }
}

std::size_t Pg3::code(std::span<const Elem> v) const {
  std::size_t c = 0;
  for (Elem e : v) c = c * K_->order() + e;
  return c;
}

std::uint32_t Pg3::point_id(std::span<const Elem> v) const {
  const Vec n = linalg::normalized(*K_, v);
  return static_cast<std::uint32_t>(point_index_[code(n)]);
}

std::optional<std::uint32_t> Pg3::line_id(const Subspace& s) const {
  if (s.ambient() != 4 || s.dim() != 2) return std::nullopt;
  return line_through(point_id(s.basis().row(0)), point_id(s.basis().row(1)));
}

std::uint32_t Pg3::line_through(std::uint32_t p, std::uint32_t q) const {
  if (p == q) throw InvalidArgument("a line needs two distinct points");
  return static_cast<std::uint32_t>(pair_line_[static_cast<std::size_t>(p) * points_.size() + q]);
}

bool Pg3::meet(std::uint32_t l1, std::uint32_t l2) const {
  const std::uint64_t* a = bits_.data() + static_cast<std::size_t>(l1) * words_;
  const std::uint64_t* b = bits_.data() + static_cast<std::size_t>(l2) * words_;
  for (std::size_t w = 0; w < words_; ++w) {
    if (a[w] & b[w]) return true;
  }
  return false;
}

bool Pg3::on_line(std::uint32_t point, std::uint32_t line) const {
  return (bits_[static_cast<std::size_t>(line) * words_ + point / 64] >> (point % 64)) & 1ULL;
}

std::vector<std::uint32_t> Pg3::lines_meeting_all(std::span<const std::uint32_t> lines) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t l = 0; l < lines_.size(); ++l) {
    bool ok = true;
    for (std::uint32_t m : lines) {
      if (l == m || !meet(l, m)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(l);
  }
  return out;
}

std::vector<std::uint32_t> Pg3::regulus_through_three(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
  if (meet(a, b) || meet(a, c) || meet(b, c)) throw InvalidArgument("lines are not pairwise skew");
  const std::uint32_t triple[3] = {a, b, c};
  const auto transversals = lines_meeting_all(triple);
  if (transversals.size() != K_->order() + 1U) throw InternalError("three skew lines without q+1 transversals");
  return lines_meeting_all(transversals);
}

std::vector<std::vector<std::uint32_t>> Pg3::reguli_within(std::span<const std::uint32_t> allowed) const {
  std::vector<std::uint32_t> pool(allowed.begin(), allowed.end());
  if (pool.empty()) {
    for (std::uint32_t l = 0; l < lines_.size(); ++l) pool.push_back(l);
  }
  std::sort(pool.begin(), pool.end());
  std::vector<char> ok(lines_.size(), 0);
  for (std::uint32_t l : pool) ok[l] = 1;
  std::set<std::vector<std::uint32_t>> found;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      if (meet(pool[i], pool[j])) continue;
      for (std::size_t k = j + 1; k < pool.size(); ++k) {
        if (meet(pool[i], pool[k]) || meet(pool[j], pool[k])) continue;
        auto reg = regulus_through_three(pool[i], pool[j], pool[k]);
        // each regulus is reached from many triples; keep the one through its three least lines
        if (reg[0] != pool[i] || reg[1] != pool[j] || reg[2] != pool[k]) continue;
        if (std::all_of(reg.begin(), reg.end(), [&](std::uint32_t l) { return ok[l] != 0; })) found.insert(std::move(reg));
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace chaingeom
