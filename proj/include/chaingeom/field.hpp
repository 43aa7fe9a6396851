#pragma once

// Exact arithmetic in GF(p^n).
//
// Elements are encoded as integers 0 .. q-1: the element with polynomial
// coefficients (c_0, ..., c_{n-1}) over GF(p) has code sum c_i p^i. Zero is 0
// and one is 1. All arithmetic goes through precomputed q x q tables, so a
// field is cheap to use but is capped in size (default 256 elements).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chaingeom {

using Elem = std::uint16_t;

inline constexpr std::uint32_t kDefaultFieldCap = 256;
inline constexpr std::uint32_t kMaxFieldCap = 1024;

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

/// Builds GF(p^n) with the least irreducible monic modulus, where monic
/// degree-n polynomials are ordered by the integer sum c_i p^i of their lower
/// coefficients. Throws InvalidArgument for non-prime p or n == 0 and
/// CapExceeded when p^n > cap.
FieldPtr make_field(std::uint32_t p, std::uint32_t n, std::uint32_t cap = kDefaultFieldCap);

/// Same as make_field for an order q = p^n given directly.
FieldPtr make_field_of_order(std::uint32_t q, std::uint32_t cap = kDefaultFieldCap);

/// Parses "gf(9)" or "gf(3^2)".
FieldPtr parse_field(const std::string& descriptor, std::uint32_t cap = kDefaultFieldCap);

class FiniteField {
 public:
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return n_; }
  std::uint32_t order() const { return q_; }
  /// Monic modulus, coefficients from the constant term upwards (size n+1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::string descriptor() const;

  Elem add(Elem a, Elem b) const { return add_[index(a, b)]; }
  Elem sub(Elem a, Elem b) const { return add_[index(a, neg_[b])]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[index(a, b)]; }
  /// Throws DomainError on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// x -> x^(p^power).
  Elem frobenius(Elem a, std::uint32_t power) const;
  /// The constant c mod p.
  Elem from_prime(std::uint32_t c) const { return static_cast<Elem>(c % p_); }
  bool in_prime_field(Elem a) const { return a < p_; }

  std::vector<std::uint32_t> coeffs(Elem a) const;
  Elem from_coeffs(std::span<const std::uint32_t> c) const;

  /// The least element (by code) generating the multiplicative group.
  Elem primitive_element() const { return primitive_; }
  std::uint32_t multiplicative_order(Elem a) const;
  /// Minimal polynomial of a over GF(p), monic, constant term first.
  std::vector<std::uint32_t> prime_minimal_polynomial(Elem a) const;

  /// Fields of equal order share modulus and element encoding, so they are
  /// interchangeable even when built separately.
  bool same_as(const FiniteField& other) const { return p_ == other.p_ && n_ == other.n_; }

 private:
  friend FieldPtr make_field(std::uint32_t, std::uint32_t, std::uint32_t);
  FiniteField(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus);

  std::size_t index(Elem a, Elem b) const { return static_cast<std::size_t>(a) * q_ + b; }

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
  Elem primitive_ = 1;
};

/// Value handle for a single element; convenient for tests and callers that
/// do not want to thread the field through every operation.
class FieldElem {
 public:
  FieldElem(FieldPtr owner, Elem value);

  const FieldPtr& owner() const { return owner_; }
  Elem value() const { return value_; }
  std::vector<std::uint32_t> coeffs() const { return owner_->coeffs(value_); }
  bool is_zero() const { return value_ == 0; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inv() const;
  bool operator==(const FieldElem& o) const;

 private:
  const FiniteField& checked(const FieldElem& o) const;

  FieldPtr owner_;
  Elem value_;
};

/// x -> x^(p^power), power in [0, n).
class FieldAut {
 public:
  FieldAut(FieldPtr field, std::uint32_t power);
  static FieldAut identity(FieldPtr field) { return FieldAut(std::move(field), 0); }

  const FieldPtr& field() const { return field_; }
  std::uint32_t power() const { return power_; }
  Elem operator()(Elem x) const { return field_->frobenius(x, power_); }
  /// First this, then other.
  FieldAut then(const FieldAut& other) const;
  FieldAut inverse() const;
  bool is_identity() const { return power_ == 0; }
  std::string descriptor() const { return "frob^" + std::to_string(power_); }
  bool operator==(const FieldAut& o) const;

 private:
  FieldPtr field_;
  std::uint32_t power_;
};

/// All n automorphisms, identity first.
std::vector<FieldAut> automorphisms(const FieldPtr& field);

/// Unital ring homomorphism between finite fields, stored as a full table.
class FieldHom {
 public:
  FieldHom(FieldPtr from, FieldPtr to, std::vector<Elem> image);
  static FieldHom from_automorphism(const FieldAut& a);

  const FieldPtr& from() const { return from_; }
  const FieldPtr& to() const { return to_; }
  Elem operator()(Elem x) const { return image_[x]; }
  const std::vector<Elem>& table() const { return image_; }
  bool is_surjective() const { return from_->order() == to_->order(); }
  /// When source and target are the same field, the Frobenius power i with
  /// x -> x^(p^i); otherwise nullopt.
  std::optional<std::uint32_t> frobenius_power() const;
  std::string descriptor() const;
  bool operator==(const FieldHom& o) const { return image_ == o.image_ && from_->same_as(*o.from_) && to_->same_as(*o.to_); }

 private:
  FieldPtr from_;
  FieldPtr to_;
  std::vector<Elem> image_;
};

/// Every unital ring homomorphism F -> K, ordered by the image of F's
/// primitive element. Empty iff characteristics differ or deg F does not
/// divide deg K.
std::vector<FieldHom> homomorphisms(const FieldPtr& from, const FieldPtr& to);

inline bool is_surjective(const FieldHom& h) { return h.is_surjective(); }

}  // namespace chaingeom
