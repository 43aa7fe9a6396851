#include "chaingeom/field.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "chaingeom/error.hpp"

namespace chaingeom {

namespace {

using Poly = std::vector<std::uint32_t>;  // constant term first

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a modulo the monic polynomial m over GF(p).
Poly poly_rem(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p - (lead * m[i]) % p) % p;
    }
    trim(a);
  }
  return a;
}

Poly digits(std::uint32_t code, std::uint32_t p, std::uint32_t len) {
  Poly out(len, 0);
  for (std::uint32_t i = 0; i < len; ++i) {
    out[i] = code % p;
    code /= p;
  }
  return out;
}

std::uint32_t ipow(std::uint32_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= b;
  return static_cast<std::uint32_t>(r);
}

// Trial division by every monic polynomial of degree 1 .. deg f - 1.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t k = 1; k < n; ++k) {
    const std::uint32_t count = ipow(p, k);
    for (std::uint32_t code = 0; code < count; ++code) {
      Poly g = digits(code, p, k);
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly least_irreducible(std::uint32_t p, std::uint32_t n) {
  const std::uint32_t count = ipow(p, n);
  for (std::uint32_t code = 0; code < count; ++code) {
    Poly f = digits(code, p, n);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw InternalError("no irreducible polynomial of degree " + std::to_string(n));
}

}  // namespace

FieldPtr make_field(std::uint32_t p, std::uint32_t n, std::uint32_t cap) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  if (n == 0) throw InvalidArgument("field degree must be at least 1");
  cap = std::min(cap, kMaxFieldCap);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > cap) {
      throw CapExceeded("GF(" + std::to_string(p) + "^" + std::to_string(n) + ") exceeds the field size cap " +
                        std::to_string(cap));
    }
  }
  return FieldPtr(new FiniteField(p, n, least_irreducible(p, n)));
}

FieldPtr make_field_of_order(std::uint32_t q, std::uint32_t cap) {
  if (q < 2) throw InvalidArgument("field order must be at least 2");
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t n = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++n;
  }
  if (rest != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  return make_field(p, n, cap);
}

FieldPtr parse_field(const std::string& descriptor, std::uint32_t cap) {
  static const std::regex plain(R"(gf\((\d+)\))");
  static const std::regex power(R"(gf\((\d+)\^(\d+)\))");
  std::smatch m;
  if (std::regex_match(descriptor, m, plain)) {
    return make_field_of_order(static_cast<std::uint32_t>(std::stoul(m[1])), cap);
  }
  if (std::regex_match(descriptor, m, power)) {
    return make_field(static_cast<std::uint32_t>(std::stoul(m[1])), static_cast<std::uint32_t>(std::stoul(m[2])), cap);
  }
  throw InvalidArgument("bad field descriptor '" + descriptor + "' (expected gf(q) or gf(p^n))");
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus)
    : p_(p), n_(n), q_(ipow(p, n)), modulus_(std::move(modulus)) {
  const std::size_t qq = static_cast<std::size_t>(q_) * q_;
  add_.resize(qq);
  mul_.resize(qq);
  neg_.resize(q_);
  inv_.assign(q_, 0);

  std::vector<Poly> polys(q_);
  for (std::uint32_t a = 0; a < q_; ++a) polys[a] = digits(a, p_, n_);
  auto encode = [&](const Poly& c) {
    std::uint32_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p_ + c[i];
    return static_cast<Elem>(code);
  };

  for (std::uint32_t a = 0; a < q_; ++a) {
    Poly ng(n_);
    for (std::uint32_t i = 0; i < n_; ++i) ng[i] = (p_ - polys[a][i]) % p_;
    neg_[a] = encode(ng);
    for (std::uint32_t b = 0; b < q_; ++b) {
      Poly s(n_);
      for (std::uint32_t i = 0; i < n_; ++i) s[i] = (polys[a][i] + polys[b][i]) % p_;
      add_[index(static_cast<Elem>(a), static_cast<Elem>(b))] = encode(s);

      Poly prod(2 * n_, 0);
      for (std::uint32_t i = 0; i < n_; ++i) {
        for (std::uint32_t j = 0; j < n_; ++j) {
          prod[i + j] = (prod[i + j] + polys[a][i] * polys[b][j]) % p_;
        }
      }
      Poly r = poly_rem(prod, modulus_, p_);
      r.resize(n_, 0);
      mul_[index(static_cast<Elem>(a), static_cast<Elem>(b))] = encode(r);
    }
  }
  for (std::uint32_t a = 1; a < q_; ++a) {
    for (std::uint32_t b = 1; b < q_; ++b) {
      if (mul_[index(static_cast<Elem>(a), static_cast<Elem>(b))] == 1) {
        inv_[a] = static_cast<Elem>(b);
        break;
      }
    }
    if (inv_[a] == 0) throw InternalError("modulus is not irreducible: zero divisor found");
  }
  bool found = false;
  for (std::uint32_t a = 1; a < q_ && !found; ++a) {
    if (multiplicative_order(static_cast<Elem>(a)) == q_ - 1) {
      primitive_ = static_cast<Elem>(a);
      found = true;
    }
  }
  if (!found) throw InternalError("multiplicative group is not cyclic");
}

std::string FiniteField::descriptor() const { return "gf(" + std::to_string(q_) + ")"; }

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero in " + descriptor());
  return inv_[a];
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  Elem base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Elem FiniteField::frobenius(Elem a, std::uint32_t power) const {
  for (std::uint32_t i = 0; i < power % n_; ++i) a = pow(a, p_);
  return a;
}

std::vector<std::uint32_t> FiniteField::coeffs(Elem a) const { return digits(a, p_, n_); }

Elem FiniteField::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() > n_) throw InvalidArgument("too many coefficients for " + descriptor());
  std::uint32_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) code = code * p_ + c[i] % p_;
  return static_cast<Elem>(code);
}

std::uint32_t FiniteField::multiplicative_order(Elem a) const {
  if (a == 0) throw DomainError("zero has no multiplicative order");
  std::uint32_t k = 1;
  Elem x = a;
  while (x != 1) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::vector<std::uint32_t> FiniteField::prime_minimal_polynomial(Elem a) const {
  std::vector<Elem> conj;
  Elem c = a;
  do {
    conj.push_back(c);
    c = pow(c, p_);
  } while (c != a);

  std::vector<Elem> poly{1};  // constant term first
  for (Elem r : conj) {
    std::vector<Elem> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = add(next[i + 1], poly[i]);
      next[i] = sub(next[i], mul(r, poly[i]));
    }
    poly = std::move(next);
  }
  std::vector<std::uint32_t> out;
  for (Elem e : poly) {
    if (!in_prime_field(e)) throw InternalError("minimal polynomial has a coefficient outside the prime field");
    out.push_back(e);
  }
  return out;
}

FieldElem::FieldElem(FieldPtr owner, Elem value) : owner_(std::move(owner)), value_(value) {
  if (value_ >= owner_->order()) throw InvalidArgument("element code out of range");
}

const FiniteField& FieldElem::checked(const FieldElem& o) const {
  if (!owner_->same_as(*o.owner_)) throw InvalidArgument("field elements from different fields");
  return *owner_;
}

FieldElem FieldElem::operator+(const FieldElem& o) const { return {owner_, checked(o).add(value_, o.value_)}; }
FieldElem FieldElem::operator-(const FieldElem& o) const { return {owner_, checked(o).sub(value_, o.value_)}; }
FieldElem FieldElem::operator*(const FieldElem& o) const { return {owner_, checked(o).mul(value_, o.value_)}; }
FieldElem FieldElem::operator/(const FieldElem& o) const { return {owner_, checked(o).div(value_, o.value_)}; }
FieldElem FieldElem::operator-() const { return {owner_, owner_->neg(value_)}; }
FieldElem FieldElem::inv() const { return {owner_, owner_->inv(value_)}; }
bool FieldElem::operator==(const FieldElem& o) const { return owner_->same_as(*o.owner_) && value_ == o.value_; }

FieldAut::FieldAut(FieldPtr field, std::uint32_t power) : field_(std::move(field)), power_(power % field_->degree()) {}

FieldAut FieldAut::then(const FieldAut& other) const {
  if (!field_->same_as(*other.field_)) throw InvalidArgument("composing automorphisms of different fields");
  return FieldAut(field_, power_ + other.power_);
}

FieldAut FieldAut::inverse() const { return FieldAut(field_, field_->degree() - power_); }

bool FieldAut::operator==(const FieldAut& o) const { return field_->same_as(*o.field_) && power_ == o.power_; }

std::vector<FieldAut> automorphisms(const FieldPtr& field) {
  std::vector<FieldAut> out;
  for (std::uint32_t i = 0; i < field->degree(); ++i) out.emplace_back(field, i);
  return out;
}

FieldHom::FieldHom(FieldPtr from, FieldPtr to, std::vector<Elem> image)
    : from_(std::move(from)), to_(std::move(to)), image_(std::move(image)) {
  if (image_.size() != from_->order()) throw InvalidArgument("homomorphism table has the wrong size");
}

FieldHom FieldHom::from_automorphism(const FieldAut& a) {
  std::vector<Elem> table(a.field()->order());
  for (std::uint32_t x = 0; x < table.size(); ++x) table[x] = a(static_cast<Elem>(x));
  return FieldHom(a.field(), a.field(), std::move(table));
}

std::optional<std::uint32_t> FieldHom::frobenius_power() const {
  if (!from_->same_as(*to_)) return std::nullopt;
  const Elem g = from_->primitive_element();
  for (std::uint32_t i = 0; i < from_->degree(); ++i) {
    if (from_->frobenius(g, i) == image_[g]) return i;
  }
  return std::nullopt;
}

std::string FieldHom::descriptor() const {
  if (auto i = frobenius_power()) return "frob^" + std::to_string(*i);
  return from_->descriptor() + "->" + to_->descriptor() + ":g->" + std::to_string(image_[from_->primitive_element()]);
}

std::vector<FieldHom> homomorphisms(const FieldPtr& from, const FieldPtr& to) {
  std::vector<FieldHom> out;
  if (from->characteristic() != to->characteristic()) return out;
  const Elem g = from->primitive_element();
  const auto minpoly = from->prime_minimal_polynomial(g);
  const std::uint32_t qf = from->order();

  for (std::uint32_t r = 0; r < to->order(); ++r) {
    Elem value = 0;
    for (std::size_t i = minpoly.size(); i-- > 0;) {
      value = to->add(to->mul(value, static_cast<Elem>(r)), to->from_prime(minpoly[i]));
    }
    if (value != 0) continue;

    std::vector<Elem> table(qf, 0);
    Elem src = 1;
    Elem dst = 1;
    for (std::uint32_t j = 0; j + 1 < qf; ++j) {
      table[src] = dst;
      src = from->mul(src, g);
      dst = to->mul(dst, static_cast<Elem>(r));
    }
    for (std::uint32_t a = 0; a < qf; ++a) {
      for (std::uint32_t b = 0; b < qf; ++b) {
        const Elem ea = static_cast<Elem>(a);
        const Elem eb = static_cast<Elem>(b);
        if (table[from->add(ea, eb)] != to->add(table[a], table[b]) ||
            table[from->mul(ea, eb)] != to->mul(table[a], table[b])) {
          throw InternalError("generator image does not extend to a homomorphism");
        }
      }
    }
    out.emplace_back(from, to, std::move(table));
  }
  return out;
}

}  // namespace chaingeom
