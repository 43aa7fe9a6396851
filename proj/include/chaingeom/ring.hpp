#pragma once

// Finite unital rings realized as K-subalgebras of M(d, K).
//
// Every element is enumerated up front and addressed by a dense RingId: the
// element sum c_i * basis_i has id sum c_i q^i, so id 0 is zero. Addition,
// multiplication, negation and inversion are table lookups afterwards.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chaingeom/field.hpp"
#include "chaingeom/linalg.hpp"

namespace chaingeom {

using RingId = std::uint32_t;

inline constexpr std::uint32_t kDefaultRingCap = 1024;

enum class RingKind { matrix_ring, dual_numbers, product_ring, upper_triangular, custom };

std::string to_string(RingKind kind);

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

class FiniteRing {
 public:
  /// Checks that the basis is independent, multiplicatively closed and spans
  /// the identity, then enumerates all q^dim elements.
  static RingPtr create(FieldPtr K, std::size_t matrix_dim, std::vector<Mat> basis, RingKind kind,
                        std::string descriptor, std::uint32_t cap = kDefaultRingCap);

  const FieldPtr& scalar_field() const { return K_; }
  std::size_t matrix_dim() const { return d_; }
  /// Dimension over K.
  std::size_t dim() const { return basis_.size(); }
  std::uint32_t size() const { return size_; }
  RingKind kind() const { return kind_; }
  const std::string& descriptor() const { return descriptor_; }
  const std::vector<Mat>& basis() const { return basis_; }

  const Mat& mat(RingId a) const { return elements_[a]; }
  std::optional<RingId> find(const Mat& m) const;
  /// Like find, but throws InvalidArgument when m is not in the ring.
  RingId id_of(const Mat& m) const;
  std::vector<Elem> coords(RingId a) const;

  RingId zero() const { return 0; }
  RingId one() const { return one_; }
  RingId scalar(Elem k) const { return scalars_[k]; }

  RingId add(RingId a, RingId b) const { return add_[idx(a, b)]; }
  RingId sub(RingId a, RingId b) const { return add_[idx(a, neg_[b])]; }
  RingId neg(RingId a) const { return neg_[a]; }
  RingId mul(RingId a, RingId b) const { return mul_[idx(a, b)]; }

  /// Inverse computed over K and accepted only if it lies in the ring.
  bool is_unit(RingId a) const { return inv_[a] != kNone; }
  std::optional<RingId> inverse(RingId a) const;
  const std::vector<RingId>& units() const { return units_; }

 private:
  static constexpr RingId kNone = 0xFFFFFFFFU;
  FiniteRing() = default;
  std::size_t idx(RingId a, RingId b) const { return static_cast<std::size_t>(a) * size_ + b; }
  RingId id_from_coords(std::span<const Elem> c) const;
  std::vector<Elem> coords_of_matrix(const Mat& m) const;

  FieldPtr K_;
  std::size_t d_ = 0;
  std::vector<Mat> basis_;
  RingKind kind_ = RingKind::custom;
  std::string descriptor_;
  std::uint32_t size_ = 0;
  std::vector<Mat> elements_;
  // coordinate extraction: entries at these flat positions determine coords
  std::vector<std::size_t> probe_positions_;
  Mat probe_inverse_;
  std::vector<RingId> add_;
  std::vector<RingId> mul_;
  std::vector<RingId> neg_;
  std::vector<RingId> inv_;
  std::vector<RingId> units_;
  std::vector<RingId> scalars_;
  RingId one_ = 0;
};

/// M(n, K) with the matrix units as basis.
RingPtr matrix_ring(std::size_t n, const FieldPtr& K, std::uint32_t cap = kDefaultRingCap);
/// K + K eps with eps^2 = 0, realized as [[a, b], [0, a]].
RingPtr dual_numbers(const FieldPtr& K, std::uint32_t cap = kDefaultRingCap);
/// K^m realized as diagonal matrices.
RingPtr product_ring(const FieldPtr& K, std::size_t m, std::uint32_t cap = kDefaultRingCap);
/// Upper triangular 2x2 matrices.
RingPtr upper_triangular(const FieldPtr& K, std::uint32_t cap = kDefaultRingCap);

/// Parses "m2:gf(3)", "dual:gf(2)", "prod2:gf(3)", "ut2:gf(2)" and the bare
/// field "gf(q)" (the ring M(1, K)).
RingPtr parse_ring(const std::string& descriptor, std::uint32_t field_cap = kDefaultFieldCap,
                   std::uint32_t ring_cap = kDefaultRingCap);

/// Value handle for one ring element.
class RingElem {
 public:
  RingElem(RingPtr owner, RingId id);
  RingElem(RingPtr owner, const Mat& m);

  const RingPtr& owner() const { return owner_; }
  RingId id() const { return id_; }
  const Mat& mat() const { return owner_->mat(id_); }
  bool is_unit() const { return owner_->is_unit(id_); }

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;
  bool operator==(const RingElem& o) const { return owner_ == o.owner_ && id_ == o.id_; }

 private:
  const FiniteRing& checked(const RingElem& o) const;

  RingPtr owner_;
  RingId id_;
};

enum class EmbedMode {
  scalar,   // F = K as the scalar matrices
  regular,  // F = GF(q^n) into M(n, GF(q)) through a companion matrix
  twisted,  // F = K into a matrix or product ring as diag(k, k^p, k^(p^2), ...)
};

std::string to_string(EmbedMode mode);
EmbedMode parse_embed_mode(const std::string& s);

/// A verified unital monomorphism F -> R.
class SubfieldEmbedding {
 public:
  const FieldPtr& field() const { return F_; }
  const RingPtr& ring() const { return R_; }
  EmbedMode mode() const { return mode_; }
  RingId operator()(Elem f) const { return image_[f]; }
  const std::vector<RingId>& image() const { return image_; }
  /// Image of F's primitive element.
  RingId generator_image() const { return image_[F_->primitive_element()]; }
  bool contains(RingId r) const { return preimage(r).has_value(); }
  std::optional<Elem> preimage(RingId r) const;
  std::string descriptor() const { return to_string(mode_); }

 private:
  friend SubfieldEmbedding embed_subfield(const FieldPtr&, const RingPtr&, EmbedMode);
  SubfieldEmbedding(FieldPtr F, RingPtr R, EmbedMode mode, std::vector<RingId> image);

  FieldPtr F_;
  RingPtr R_;
  EmbedMode mode_;
  std::vector<RingId> image_;
  std::vector<std::int32_t> preimage_;
};

SubfieldEmbedding embed_subfield(const FieldPtr& F, const RingPtr& R, EmbedMode mode);

/// True iff r f r^-1 lies in the image of F for all units r and nonzero f.
bool is_normal_subgroup(const SubfieldEmbedding& emb);

std::vector<RingId> centralizer(const FiniteRing& R, std::span<const RingId> subset);

/// Dimension over F of the left F-span of the centralizer of F.
std::size_t centralizer_span_dimension(const SubfieldEmbedding& emb);

/// True iff R has a left F-basis made of elements commuting with F.
bool has_centralizing_basis(const SubfieldEmbedding& emb);

/// Left F-span (via the embedding) of a subset, as a sorted id list.
std::vector<RingId> left_span(const SubfieldEmbedding& emb, std::span<const RingId> subset);

// ---------------------------------------------------------------------------
// 2x2 matrices over a ring.

/// [[e[0], e[1]], [e[2], e[3]]].
struct Mat2 {
  std::array<RingId, 4> e{};

  RingId a() const { return e[0]; }
  RingId b() const { return e[1]; }
  RingId c() const { return e[2]; }
  RingId d() const { return e[3]; }
  bool operator==(const Mat2&) const = default;
  auto operator<=>(const Mat2&) const = default;
};

struct Mat2Hash {
  std::size_t operator()(const Mat2& m) const noexcept;
};

Mat2 identity2(const FiniteRing& R);
Mat2 mul(const FiniteRing& R, const Mat2& x, const Mat2& y);
/// The 2d x 2d block matrix over K.
Mat flatten(const FiniteRing& R, const Mat2& m);
bool is_invertible(const FiniteRing& R, const Mat2& m);
std::optional<Mat2> inverse(const FiniteRing& R, const Mat2& m);

/// Elementary transvections for additive generators r of R, plus diag(u, 1)
/// and diag(1, u) for a generating set of units u. They generate GL_2(R)
/// because finite rings have stable rank 1.
std::vector<Mat2> gl2_generators(const FiniteRing& R);

/// Closure of the generators under multiplication. Throws CapExceeded.
std::vector<Mat2> gl2_closure(const FiniteRing& R, std::span<const Mat2> generators, std::size_t cap = 200000);

/// All 2x2 matrices over R with invertible flattening. Throws CapExceeded when
/// |R|^4 exceeds cap.
std::vector<Mat2> invertible_matrices(const FiniteRing& R, std::uint64_t cap = 1U << 20U);

}  // namespace chaingeom
