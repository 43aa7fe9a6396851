#include "chaingeom/ring.hpp"

#include <algorithm>
#include <deque>
#include <regex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "chaingeom/error.hpp"

namespace chaingeom {

std::string to_string(RingKind kind) {
  switch (kind) {
    case RingKind::matrix_ring: return "matrix_ring";
    case RingKind::dual_numbers: return "dual_numbers";
    case RingKind::product_ring: return "product_ring";
    case RingKind::upper_triangular: return "upper_triangular";
    case RingKind::custom: return "custom";
  }
  return "custom";
}

RingPtr FiniteRing::create(FieldPtr K, std::size_t matrix_dim, std::vector<Mat> basis, RingKind kind,
                           std::string descriptor, std::uint32_t cap) {
  const FiniteField& F = *K;
  const std::size_t d = matrix_dim;
  const std::size_t dim = basis.size();
  if (dim == 0) throw InvalidArgument("ring basis is empty");
  for (const Mat& b : basis) {
    if (b.rows != d || b.cols != d) throw InvalidArgument("ring basis element has the wrong shape");
  }

  std::uint64_t size = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    size *= F.order();
    if (size > cap) {
      throw CapExceeded("ring " + descriptor + " has more than " + std::to_string(cap) + " elements");
    }
  }

  Mat flat(dim, d * d);
  for (std::size_t i = 0; i < dim; ++i) std::copy(basis[i].data.begin(), basis[i].data.end(), flat.data.begin() + static_cast<std::ptrdiff_t>(i * d * d));
  auto ech = linalg::rref(F, flat);
  if (ech.pivots.size() != dim) throw InvalidArgument("ring basis of " + descriptor + " is linearly dependent");

  std::shared_ptr<FiniteRing> R(new FiniteRing());
  R->K_ = std::move(K);
  R->d_ = d;
  R->basis_ = std::move(basis);
  R->kind_ = kind;
  R->descriptor_ = std::move(descriptor);
  R->size_ = static_cast<std::uint32_t>(size);
  R->probe_positions_ = ech.pivots;
  Mat probe(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) probe(i, j) = flat(i, ech.pivots[j]);
  }
  R->probe_inverse_ = *linalg::inverse(F, probe);

  const std::uint32_t q = F.order();
  const std::uint32_t n = R->size_;
  R->elements_.resize(n);
  for (std::uint32_t id = 0; id < n; ++id) {
    Mat m(d, d);
    std::uint32_t code = id;
    for (std::size_t i = 0; i < dim; ++i) {
      const Elem c = static_cast<Elem>(code % q);
      code /= q;
      if (c != 0) m = linalg::add(F, m, linalg::scale(F, c, R->basis_[i]));
    }
    R->elements_[id] = std::move(m);
  }

  for (const Mat& x : R->basis_) {
    for (const Mat& y : R->basis_) {
      if (!R->find(linalg::mul(F, x, y))) throw InvalidArgument("ring basis of " + R->descriptor_ + " is not multiplicatively closed");
    }
  }
  auto one = R->find(Mat::identity(d));
  if (!one) throw InvalidArgument("ring " + R->descriptor_ + " does not contain the identity");
  R->one_ = *one;

  const std::size_t nn = static_cast<std::size_t>(n) * n;
  R->add_.resize(nn);
  R->mul_.resize(nn);
  R->neg_.resize(n);
  R->inv_.assign(n, kNone);
  std::vector<std::vector<Elem>> coords(n);
  for (std::uint32_t a = 0; a < n; ++a) coords[a] = R->coords(a);
  std::vector<Elem> tmp(dim);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = F.neg(coords[a][i]);
    R->neg_[a] = R->id_from_coords(tmp);
    for (std::uint32_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = F.add(coords[a][i], coords[b][i]);
      R->add_[R->idx(a, b)] = R->id_from_coords(tmp);
      R->mul_[R->idx(a, b)] = R->id_from_coords(R->coords_of_matrix(linalg::mul(F, R->elements_[a], R->elements_[b])));
    }
  }
  for (std::uint32_t a = 0; a < n; ++a) {
    auto inv = linalg::inverse(F, R->elements_[a]);
    if (!inv) continue;
    if (auto id = R->find(*inv)) {
      R->inv_[a] = *id;
      R->units_.push_back(a);
    }
  }
  R->scalars_.resize(q);
  for (std::uint32_t k = 0; k < q; ++k) {
    R->scalars_[k] = R->id_of(linalg::scale(F, static_cast<Elem>(k), Mat::identity(d)));
  }
  return R;
}

std::vector<Elem> FiniteRing::coords_of_matrix(const Mat& m) const {
  const std::size_t dim = basis_.size();
  Vec probe(dim);
  for (std::size_t j = 0; j < dim; ++j) probe[j] = m.data[probe_positions_[j]];
  return linalg::vec_mul(*K_, probe, probe_inverse_);
}

RingId FiniteRing::id_from_coords(std::span<const Elem> c) const {
  RingId id = 0;
  for (std::size_t i = c.size(); i-- > 0;) id = id * K_->order() + c[i];
  return id;
}

std::vector<Elem> FiniteRing::coords(RingId a) const {
  std::vector<Elem> c(basis_.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = static_cast<Elem>(a % K_->order());
    a /= K_->order();
  }
  return c;
}

std::optional<RingId> FiniteRing::find(const Mat& m) const {
  if (m.rows != d_ || m.cols != d_) return std::nullopt;
  const RingId id = id_from_coords(coords_of_matrix(m));
  if (id >= size_ || elements_[id] != m) return std::nullopt;
  return id;
}

RingId FiniteRing::id_of(const Mat& m) const {
  if (auto id = find(m)) return *id;
  throw InvalidArgument("matrix is not an element of " + descriptor_);
}

std::optional<RingId> FiniteRing::inverse(RingId a) const {
  if (inv_[a] == kNone) return std::nullopt;
  return inv_[a];
}

RingPtr matrix_ring(std::size_t n, const FieldPtr& K, std::uint32_t cap) {
  if (n == 0) throw InvalidArgument("matrix ring size must be at least 1");
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Mat e(n, n);
      e(i, j) = 1;
      basis.push_back(std::move(e));
    }
  }
  std::string desc = n == 1 ? K->descriptor() : "m" + std::to_string(n) + ":" + K->descriptor();
  return FiniteRing::create(K, n, std::move(basis), RingKind::matrix_ring, std::move(desc), cap);
}

RingPtr dual_numbers(const FieldPtr& K, std::uint32_t cap) {
  Mat eps(2, 2);
  eps(0, 1) = 1;
  return FiniteRing::create(K, 2, {Mat::identity(2), eps}, RingKind::dual_numbers, "dual:" + K->descriptor(), cap);
}

RingPtr product_ring(const FieldPtr& K, std::size_t m, std::uint32_t cap) {
  if (m == 0) throw InvalidArgument("product ring needs at least one factor");
  std::vector<Mat> basis;
  for (std::size_t i = 0; i < m; ++i) {
    Mat e(m, m);
    e(i, i) = 1;
    basis.push_back(std::move(e));
  }
  return FiniteRing::create(K, m, std::move(basis), RingKind::product_ring,
                            "prod" + std::to_string(m) + ":" + K->descriptor(), cap);
}

RingPtr upper_triangular(const FieldPtr& K, std::uint32_t cap) {
  Mat e11(2, 2), e12(2, 2), e22(2, 2);
  e11(0, 0) = 1;
  e12(0, 1) = 1;
  e22(1, 1) = 1;
  return FiniteRing::create(K, 2, {e11, e12, e22}, RingKind::upper_triangular, "ut2:" + K->descriptor(), cap);
}

RingPtr parse_ring(const std::string& descriptor, std::uint32_t field_cap, std::uint32_t ring_cap) {
  static const std::regex pattern(R"((?:(m|prod)(\d+)|(dual|ut2)):(gf\(.*\)))");
  std::smatch m;
  if (descriptor.rfind("gf(", 0) == 0) return matrix_ring(1, parse_field(descriptor, field_cap), ring_cap);
  if (!std::regex_match(descriptor, m, pattern)) {
    throw InvalidArgument("bad ring descriptor '" + descriptor + "' (expected m2:gf(q), dual:gf(q), prod2:gf(q), ut2:gf(q) or gf(q))");
  }
  auto K = parse_field(m[4], field_cap);
  if (m[1].matched) {
    const auto n = static_cast<std::size_t>(std::stoul(m[2]));
    if (m[1] == "m") return matrix_ring(n, K, ring_cap);
    return product_ring(K, n, ring_cap);
  }
  if (m[3] == "dual") return dual_numbers(K, ring_cap);
  return upper_triangular(K, ring_cap);
}

RingElem::RingElem(RingPtr owner, RingId id) : owner_(std::move(owner)), id_(id) {
  if (id_ >= owner_->size()) throw InvalidArgument("ring element id out of range");
}

RingElem::RingElem(RingPtr owner, const Mat& m) : owner_(std::move(owner)), id_(owner_->id_of(m)) {}

const FiniteRing& RingElem::checked(const RingElem& o) const {
  if (owner_ != o.owner_) throw InvalidArgument("ring elements from different rings");
  return *owner_;
}

RingElem RingElem::operator+(const RingElem& o) const { return {owner_, checked(o).add(id_, o.id_)}; }
RingElem RingElem::operator-(const RingElem& o) const { return {owner_, checked(o).sub(id_, o.id_)}; }
RingElem RingElem::operator*(const RingElem& o) const { return {owner_, checked(o).mul(id_, o.id_)}; }
RingElem RingElem::operator-() const { return {owner_, owner_->neg(id_)}; }

std::string to_string(EmbedMode mode) {
  switch (mode) {
    case EmbedMode::scalar: return "scalar";
    case EmbedMode::regular: return "regular";
    case EmbedMode::twisted: return "twisted";
  }
  return "scalar";
}

EmbedMode parse_embed_mode(const std::string& s) {
  if (s == "scalar") return EmbedMode::scalar;
  if (s == "regular") return EmbedMode::regular;
  if (s == "twisted") return EmbedMode::twisted;
  throw InvalidArgument("bad embedding descriptor '" + s + "' (expected scalar, regular or twisted)");
}

SubfieldEmbedding::SubfieldEmbedding(FieldPtr F, RingPtr R, EmbedMode mode, std::vector<RingId> image)
    : F_(std::move(F)), R_(std::move(R)), mode_(mode), image_(std::move(image)), preimage_(R_->size(), -1) {
  const FiniteRing& ring = *R_;
  const FiniteField& field = *F_;
  if (image_[1] != ring.one() || image_[0] != ring.zero()) {
    throw InternalError("subfield embedding is not unital");
  }
  for (std::uint32_t x = 0; x < field.order(); ++x) {
    if (preimage_[image_[x]] != -1) throw InternalError("subfield embedding is not injective");
    preimage_[image_[x]] = static_cast<std::int32_t>(x);
  }
  for (std::uint32_t x = 0; x < field.order(); ++x) {
    for (std::uint32_t y = 0; y < field.order(); ++y) {
      const Elem ex = static_cast<Elem>(x);
      const Elem ey = static_cast<Elem>(y);
      if (image_[field.add(ex, ey)] != ring.add(image_[x], image_[y]) ||
          image_[field.mul(ex, ey)] != ring.mul(image_[x], image_[y])) {
        throw InternalError("subfield embedding is not a ring homomorphism");
      }
    }
  }
}

std::optional<Elem> SubfieldEmbedding::preimage(RingId r) const {
  if (r >= preimage_.size() || preimage_[r] < 0) return std::nullopt;
  return static_cast<Elem>(preimage_[r]);
}

namespace {

std::vector<RingId> powers_table(const FiniteField& F, const FiniteRing& R, RingId generator_image) {
  std::vector<RingId> image(F.order(), R.zero());
  const Elem g = F.primitive_element();
  Elem x = 1;
  RingId y = R.one();
  for (std::uint32_t j = 0; j + 1 < F.order(); ++j) {
    image[x] = y;
    x = F.mul(x, g);
    y = R.mul(y, generator_image);
  }
  return image;
}

}  // namespace

SubfieldEmbedding embed_subfield(const FieldPtr& F, const RingPtr& R, EmbedMode mode) {
  const FiniteField& K = *R->scalar_field();
  switch (mode) {
    case EmbedMode::scalar: {
      if (!F->same_as(K)) {
        throw InvalidArgument("scalar embedding needs F = K, got " + F->descriptor() + " and " + K.descriptor());
      }
      std::vector<RingId> image(F->order());
      for (std::uint32_t k = 0; k < F->order(); ++k) image[k] = R->scalar(static_cast<Elem>(k));
      return SubfieldEmbedding(F, R, mode, std::move(image));
    }
    case EmbedMode::regular: {
      const std::size_t n = R->matrix_dim();
      if (R->kind() != RingKind::matrix_ring) throw InvalidArgument("regular embedding needs a full matrix ring");
      if (F->characteristic() != K.characteristic() || F->degree() != n * K.degree()) {
        throw InvalidArgument("regular embedding of " + F->descriptor() + " into " + R->descriptor() +
                              " needs [F:K] = " + std::to_string(n));
      }
      auto iotas = homomorphisms(R->scalar_field(), F);
      if (iotas.empty()) throw InternalError("K does not embed into F");
      const FieldHom& iota = iotas.front();
      std::vector<std::int32_t> back(F->order(), -1);
      for (std::uint32_t k = 0; k < K.order(); ++k) back[iota(static_cast<Elem>(k))] = static_cast<std::int32_t>(k);

      // minimal polynomial of g over K: product of (X - g^(|K|^i)), i < n
      const Elem g = F->primitive_element();
      std::vector<Elem> poly{1};
      Elem conj = g;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<Elem> next(poly.size() + 1, 0);
        for (std::size_t j = 0; j < poly.size(); ++j) {
          next[j + 1] = F->add(next[j + 1], poly[j]);
          next[j] = F->sub(next[j], F->mul(conj, poly[j]));
        }
        poly = std::move(next);
        conj = F->pow(conj, K.order());
      }
      Mat companion(n, n);
      for (std::size_t i = 0; i + 1 < n; ++i) companion(i, i + 1) = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (back[poly[j]] < 0) throw InternalError("minimal polynomial coefficient outside K");
        companion(n - 1, j) = K.neg(static_cast<Elem>(back[poly[j]]));
      }
      return SubfieldEmbedding(F, R, mode, powers_table(*F, *R, R->id_of(companion)));
    }
    case EmbedMode::twisted: {
      if (!F->same_as(K)) throw InvalidArgument("twisted embedding needs F = K");
      if (R->kind() != RingKind::matrix_ring && R->kind() != RingKind::product_ring) {
        throw InvalidArgument("twisted embedding needs a matrix or product ring");
      }
      const std::size_t n = R->matrix_dim();
      std::vector<RingId> image(F->order());
      for (std::uint32_t k = 0; k < F->order(); ++k) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = K.frobenius(static_cast<Elem>(k), static_cast<std::uint32_t>(i));
        image[k] = R->id_of(m);
      }
      return SubfieldEmbedding(F, R, mode, std::move(image));
    }
  }
  throw InvalidArgument("unknown embedding mode");
}

bool is_normal_subgroup(const SubfieldEmbedding& emb) {
  const FiniteRing& R = *emb.ring();
  for (RingId r : R.units()) {
    const RingId rinv = *R.inverse(r);
    for (std::uint32_t f = 1; f < emb.field()->order(); ++f) {
      if (!emb.contains(R.mul(R.mul(r, emb(static_cast<Elem>(f))), rinv))) return false;
    }
  }
  return true;
}

std::vector<RingId> centralizer(const FiniteRing& R, std::span<const RingId> subset) {
  std::vector<RingId> out;
  for (RingId r = 0; r < R.size(); ++r) {
    bool commutes = true;
    for (RingId s : subset) {
      if (R.mul(r, s) != R.mul(s, r)) {
        commutes = false;
        break;
      }
    }
    if (commutes) out.push_back(r);
  }
  return out;
}

std::vector<RingId> left_span(const SubfieldEmbedding& emb, std::span<const RingId> subset) {
  const FiniteRing& R = *emb.ring();
  std::vector<char> in_span(R.size(), 0);
  std::vector<RingId> span{R.zero()};
  in_span[R.zero()] = 1;
  for (RingId s : subset) {
    if (in_span[s]) continue;
    std::vector<RingId> grown;
    for (std::uint32_t f = 0; f < emb.field()->order(); ++f) {
      const RingId fs = R.mul(emb(static_cast<Elem>(f)), s);
      for (RingId x : span) {
        const RingId y = R.add(x, fs);
        if (!in_span[y]) {
          in_span[y] = 1;
          grown.push_back(y);
        }
      }
    }
    span.insert(span.end(), grown.begin(), grown.end());
  }
  std::sort(span.begin(), span.end());
  return span;
}

std::size_t centralizer_span_dimension(const SubfieldEmbedding& emb) {
  const auto z = centralizer(*emb.ring(), emb.image());
  std::size_t size = left_span(emb, z).size();
  std::size_t dim = 0;
  while (size > 1) {
    size /= emb.field()->order();
    ++dim;
  }
  return dim;
}

bool has_centralizing_basis(const SubfieldEmbedding& emb) {
  const auto z = centralizer(*emb.ring(), emb.image());
  return left_span(emb, z).size() == emb.ring()->size();
}

std::size_t Mat2Hash::operator()(const Mat2& m) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (RingId x : m.e) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return h;
}

Mat2 identity2(const FiniteRing& R) { return Mat2{{R.one(), R.zero(), R.zero(), R.one()}}; }

Mat2 mul(const FiniteRing& R, const Mat2& x, const Mat2& y) {
  return Mat2{{R.add(R.mul(x.e[0], y.e[0]), R.mul(x.e[1], y.e[2])), R.add(R.mul(x.e[0], y.e[1]), R.mul(x.e[1], y.e[3])),
               R.add(R.mul(x.e[2], y.e[0]), R.mul(x.e[3], y.e[2])), R.add(R.mul(x.e[2], y.e[1]), R.mul(x.e[3], y.e[3]))}};
}

Mat flatten(const FiniteRing& R, const Mat2& m) {
  const std::size_t d = R.matrix_dim();
  Mat out(2 * d, 2 * d);
  for (std::size_t blk = 0; blk < 4; ++blk) {
    const Mat& b = R.mat(m.e[blk]);
    const std::size_t r0 = (blk / 2) * d;
    const std::size_t c0 = (blk % 2) * d;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) out(r0 + i, c0 + j) = b(i, j);
    }
  }
  return out;
}

bool is_invertible(const FiniteRing& R, const Mat2& m) {
  return linalg::rank(*R.scalar_field(), flatten(R, m)) == 2 * R.matrix_dim();
}

std::optional<Mat2> inverse(const FiniteRing& R, const Mat2& m) {
  auto inv = linalg::inverse(*R.scalar_field(), flatten(R, m));
  if (!inv) return std::nullopt;
  const std::size_t d = R.matrix_dim();
  Mat2 out;
  for (std::size_t blk = 0; blk < 4; ++blk) {
    Mat b(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) b(i, j) = (*inv)((blk / 2) * d + i, (blk % 2) * d + j);
    }
    auto id = R.find(b);
    if (!id) throw InternalError("inverse of a 2x2 ring matrix left the ring");
    out.e[blk] = *id;
  }
  return out;
}

std::vector<Mat2> gl2_generators(const FiniteRing& R) {
  std::vector<Mat2> out;
  // additive generators of R: basis elements times an F_p-basis of K
  const FiniteField& K = *R.scalar_field();
  std::vector<RingId> additive;
  for (const Mat& b : R.basis()) {
    const RingId bid = R.id_of(b);
    std::uint32_t code = 1;
    for (std::uint32_t j = 0; j < K.degree(); ++j, code *= K.characteristic()) {
      additive.push_back(R.mul(R.scalar(static_cast<Elem>(code)), bid));
    }
  }
  for (RingId r : additive) {
    out.push_back(Mat2{{R.one(), r, R.zero(), R.one()}});
    out.push_back(Mat2{{R.one(), R.zero(), r, R.one()}});
  }
  // greedy generating set of the unit group
  std::set<RingId> generated{R.one()};
  for (RingId u : R.units()) {
    if (generated.contains(u)) continue;
    out.push_back(Mat2{{u, R.zero(), R.zero(), R.one()}});
    out.push_back(Mat2{{R.one(), R.zero(), R.zero(), u}});
    std::vector<RingId> frontier(generated.begin(), generated.end());
    generated.insert(u);
    frontier.push_back(u);
    while (!frontier.empty()) {
      const RingId x = frontier.back();
      frontier.pop_back();
      for (RingId g : std::vector<RingId>(generated.begin(), generated.end())) {
        for (RingId y : {R.mul(x, g), R.mul(g, x)}) {
          if (generated.insert(y).second) frontier.push_back(y);
        }
      }
    }
  }
  return out;
}

std::vector<Mat2> gl2_closure(const FiniteRing& R, std::span<const Mat2> generators, std::size_t cap) {
  std::unordered_set<Mat2, Mat2Hash> seen;
  std::vector<Mat2> out;
  std::deque<Mat2> queue;
  const Mat2 id = identity2(R);
  seen.insert(id);
  out.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    const Mat2 g = queue.front();
    queue.pop_front();
    for (const Mat2& s : generators) {
      Mat2 h = mul(R, g, s);
      if (seen.insert(h).second) {
        if (out.size() >= cap) throw CapExceeded("GL_2 closure exceeds " + std::to_string(cap) + " elements");
        out.push_back(h);
        queue.push_back(h);
      }
    }
  }
  return out;
}

std::vector<Mat2> invertible_matrices(const FiniteRing& R, std::uint64_t cap) {
  const std::uint64_t n = R.size();
  if (n * n * n * n > cap) throw CapExceeded("direct enumeration of 2x2 matrices over " + R.descriptor() + " exceeds cap");
  std::vector<Mat2> out;
  for (RingId a = 0; a < n; ++a) {
    for (RingId b = 0; b < n; ++b) {
      for (RingId c = 0; c < n; ++c) {
        for (RingId d = 0; d < n; ++d) {
          Mat2 m{{a, b, c, d}};
          if (is_invertible(R, m)) out.push_back(m);
        }
      }
    }
  }
  return out;
}

}  // namespace chaingeom
