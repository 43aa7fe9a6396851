#include "chaingeom/representation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "chaingeom/error.hpp"

namespace chaingeom {

namespace {

bool same_ring(const FiniteRing& a, const FiniteRing& b) {
  return &a == &b || (a.descriptor() == b.descriptor() && a.size() == b.size());
}

void require_compatible(const Representation& rep, const SubfieldEmbedding& emb) {
  if (!same_ring(*rep.ring(), *emb.ring())) {
    throw InvalidArgument("representation of " + rep.ring()->descriptor() + " used with an embedding into " +
                          emb.ring()->descriptor());
  }
}

std::size_t lead_index(std::span<const Elem> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return i;
  }
  throw InternalError("zero vector has no leading entry");
}

// The element of K with w = lambda u, if any.
std::optional<Elem> eigenvalue(const FiniteField& K, std::span<const Elem> u, std::span<const Elem> w) {
  const std::size_t i = lead_index(u);
  const Elem lambda = K.div(w[i], u[i]);
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (w[j] != K.mul(lambda, u[j])) return std::nullopt;
  }
  return lambda;
}

std::vector<Vec> multiples(const FiniteField& K, std::span<const Elem> u) {
  std::vector<Vec> out;
  for (std::uint32_t k = 0; k < K.order(); ++k) out.push_back(linalg::vec_scale(K, static_cast<Elem>(k), u));
  std::sort(out.begin(), out.end());
  return out;
}

RepPtr scalar_action_rep(const RingPtr& R1, std::size_t d, std::span<const std::uint32_t> powers, std::string desc) {
  const FieldPtr& K = R1->scalar_field();
  if (R1->matrix_dim() != 1) throw InvalidArgument("scalar action needs the ring to be the bare field");
  std::vector<Mat> phi(R1->size());
  for (std::uint32_t k = 0; k < K->order(); ++k) {
    Mat m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = K->frobenius(static_cast<Elem>(k), powers[i] % K->degree());
    phi[R1->scalar(static_cast<Elem>(k))] = std::move(m);
  }
  return Representation::create(R1, K, d, std::move(phi), std::move(desc));
}

}  // namespace

RepPtr Representation::create(RingPtr R, FieldPtr K, std::size_t d, std::vector<Mat> phi, std::string descriptor) {
  if (d == 0) throw InvalidArgument("U = 0 is not a valid representation space");
  if (phi.size() != R->size()) throw InvalidArgument("phi must be given for every ring element");
  for (const Mat& m : phi) {
    if (m.rows != d || m.cols != d) throw InvalidArgument("phi values must be d x d matrices");
  }
  const FiniteField& F = *K;
  if (phi[R->one()] != Mat::identity(d)) throw InvalidArgument("phi(1) is not the identity");

  // additive generators k * b_i; checking additivity against them and
  // multiplicativity on pairs of them covers the whole ring
  std::vector<RingId> gens;
  for (const Mat& b : R->basis()) {
    const RingId bid = R->id_of(b);
    for (std::uint32_t k = 1; k < R->scalar_field()->order(); ++k) {
      gens.push_back(R->mul(R->scalar(static_cast<Elem>(k)), bid));
    }
  }
  for (RingId x = 0; x < R->size(); ++x) {
    for (RingId g : gens) {
      if (phi[R->add(x, g)] != linalg::add(F, phi[x], phi[g])) throw InvalidArgument("phi is not additive");
    }
  }
  for (RingId g : gens) {
    for (RingId h : gens) {
      if (phi[R->mul(g, h)] != linalg::mul(F, phi[g], phi[h])) throw InvalidArgument("phi is not multiplicative");
    }
  }

  std::shared_ptr<Representation> rep(new Representation());
  std::unordered_set<std::string> seen;
  for (const Mat& m : phi) seen.insert(m.key());
  rep->faithful_ = seen.size() == phi.size();
  rep->R_ = std::move(R);
  rep->K_ = std::move(K);
  rep->d_ = d;
  rep->phi_ = std::move(phi);
  rep->descriptor_ = std::move(descriptor);
  return rep;
}

Vec Representation::act(std::span<const Elem> u, RingId a) const { return linalg::vec_mul(*K_, u, phi_[a]); }

RepPtr natural_rep(const RingPtr& R) {
  std::vector<Mat> phi(R->size());
  for (RingId a = 0; a < R->size(); ++a) phi[a] = R->mat(a);
  return Representation::create(R, R->scalar_field(), R->matrix_dim(), std::move(phi), "natural");
}

RepPtr regular_rep(const SubfieldEmbedding& emb) {
  const FiniteRing& R = *emb.ring();
  const FieldPtr& F = emb.field();
  const std::uint32_t qf = F->order();

  // greedy left F-basis of R
  std::vector<RingId> basis;
  std::vector<char> in_span(R.size(), 0);
  std::vector<RingId> span{R.zero()};
  in_span[R.zero()] = 1;
  for (RingId r = 1; r < R.size() && span.size() < R.size(); ++r) {
    if (in_span[r]) continue;
    basis.push_back(r);
    std::vector<RingId> next;
    for (RingId s : span) {
      for (std::uint32_t f = 0; f < qf; ++f) next.push_back(R.add(s, R.mul(emb(static_cast<Elem>(f)), r)));
    }
    for (RingId s : next) in_span[s] = 1;
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    span = std::move(next);
  }
  const std::size_t d = basis.size();

  std::vector<Vec> coords(R.size());
  Vec c(d, 0);
  for (std::size_t count = 0; count < span.size(); ++count) {
    RingId x = R.zero();
    for (std::size_t i = 0; i < d; ++i) x = R.add(x, R.mul(emb(c[i]), basis[i]));
    coords[x] = c;
    for (std::size_t i = 0; i < d; ++i) {
      if (++c[i] < qf) break;
      c[i] = 0;
    }
  }

  std::vector<Mat> phi(R.size());
  for (RingId r = 0; r < R.size(); ++r) {
    Mat m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      const Vec& row = coords[R.mul(basis[i], r)];
      for (std::size_t j = 0; j < d; ++j) m(i, j) = row[j];
    }
    phi[r] = std::move(m);
  }
  return Representation::create(emb.ring(), F, d, std::move(phi), "regular");
}

RepPtr basis_rep(const FieldPtr& K, std::size_t d, const FieldAut& alpha) {
  if (!alpha.field()->same_as(*K)) throw InvalidArgument("automorphism belongs to another field");
  const std::vector<std::uint32_t> powers(d, alpha.power());
  return scalar_action_rep(matrix_ring(1, K), d, powers, "basis:" + std::to_string(alpha.power()));
}

RepPtr diagonal_rep(const FieldPtr& K, std::span<const std::uint32_t> frobenius_powers) {
  std::string desc = "diag:";
  for (std::size_t i = 0; i < frobenius_powers.size(); ++i) {
    if (i) desc += ",";
    desc += std::to_string(frobenius_powers[i]);
  }
  return scalar_action_rep(matrix_ring(1, K), frobenius_powers.size(), frobenius_powers, desc);
}

RepPtr parse_rep(const std::string& spec, const SubfieldEmbedding& emb, std::size_t dim) {
  if (spec == "natural") return natural_rep(emb.ring());
  if (spec == "regular") return regular_rep(emb);
  auto parse_uint = [&](const std::string& s) -> std::uint32_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6) {
      throw InvalidArgument("bad number '" + s + "' in representation '" + spec + "'");
    }
    return static_cast<std::uint32_t>(std::stoul(s));
  };
  if (spec.rfind("basis:", 0) == 0) {
    const std::uint32_t power = parse_uint(spec.substr(6));
    if (power >= emb.field()->degree()) throw InvalidArgument("automorphism power out of range in '" + spec + "'");
    if (dim == 0) throw InvalidArgument("representation dimension must be positive");
    const std::vector<std::uint32_t> powers(dim, power);
    return scalar_action_rep(emb.ring(), dim, powers, spec);
  }
  if (spec.rfind("diag:", 0) == 0) {
    std::vector<std::uint32_t> powers;
    std::string rest = spec.substr(5);
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = rest.find(',', pos);
      powers.push_back(parse_uint(rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
      if (powers.back() >= emb.field()->degree()) throw InvalidArgument("automorphism power out of range in '" + spec + "'");
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return scalar_action_rep(emb.ring(), powers.size(), powers, spec);
  }
  throw InvalidArgument("unknown representation '" + spec + "'");
}

Subspace phi_image(const Representation& rep, RingId a, RingId b) {
  return Subspace(*rep.field(), linalg::hstack(rep.phi(a), rep.phi(b)));
}

Subspace phi_image(const Representation& rep, const ProjectiveLine& line, PointId p) {
  if (!same_ring(*rep.ring(), *line.ring())) throw InvalidArgument("representation and line use different rings");
  const PointRep r = line.rep(p);
  return phi_image(rep, r.a, r.b);
}

std::vector<Subspace> standard_chain_image(const Representation& rep, const SubfieldEmbedding& emb) {
  require_compatible(rep, emb);
  const FiniteRing& R = *rep.ring();
  std::vector<Subspace> out{phi_image(rep, R.one(), R.zero())};
  for (std::uint32_t x = 0; x < emb.field()->order(); ++x) out.push_back(phi_image(rep, emb(static_cast<Elem>(x)), R.one()));
  return out;
}

std::vector<Subspace> chain_image(const Representation& rep, const ProjectiveLine& line, const Chain& chain) {
  std::vector<Subspace> out;
  for (PointId p : chain.points) out.push_back(phi_image(rep, line, p));
  return out;
}

Subspace diagonal_line(const FiniteField& K, std::span<const Elem> u) {
  const std::size_t d = u.size();
  Mat m(2, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    m(0, i) = u[i];
    m(1, d + i) = u[i];
  }
  return Subspace(K, m);
}

std::string to_string(TransversalKind kind) { return kind == TransversalKind::full ? "full" : "weak"; }

std::vector<TransversalRecord> weak_transversals(const Representation& rep, const SubfieldEmbedding& emb) {
  require_compatible(rep, emb);
  const FiniteField& K = *rep.field();
  const FieldPtr& F = emb.field();
  const auto homs = homomorphisms(F, rep.field());
  const RingId gen = emb.generator_image();

  std::vector<TransversalRecord> out;
  std::vector<Elem> table(F->order());
  for (const Vec& u : linalg::projective_points(K, rep.dim())) {
    if (!eigenvalue(K, u, rep.act(u, gen))) continue;
    bool all = true;
    for (std::uint32_t x = 0; x < F->order() && all; ++x) {
      auto lambda = eigenvalue(K, u, rep.act(u, emb(static_cast<Elem>(x))));
      if (lambda) {
        table[x] = *lambda;
      } else {
        all = false;
      }
    }
    if (!all) throw InternalError("eigenvector of the generator image is not an eigenvector of all of F");
    auto it = std::find_if(homs.begin(), homs.end(), [&](const FieldHom& h) { return h.table() == table; });
    if (it == homs.end()) throw InternalError("eigenvalue map is not a field homomorphism");
    out.push_back({u, *it, it->is_surjective() ? TransversalKind::full : TransversalKind::weak});
  }
  return out;
}

namespace {

// Coordinates (a, b) of the point T cap S of the line T = Ku x Ku, where the
// point is (a u, b u). Nullopt when T and S do not meet in a single point.
std::optional<Vec> point_on_diagonal_line(const FiniteField& K, std::span<const Elem> u, const Subspace& T,
                                          const Subspace& S) {
  const Subspace m = meet(K, T, S);
  if (m.dim() != 1) return std::nullopt;
  const std::size_t d = u.size();
  const std::size_t i = lead_index(u);
  const auto w = m.basis().row(0);
  const Vec ab{K.div(w[i], u[i]), K.div(w[d + i], u[i])};
  return linalg::normalized(K, ab);
}

}  // namespace

LinkReport projectively_linked(const Representation& rep, const SubfieldEmbedding& emb, const TransversalRecord& t1,
                               const TransversalRecord& t2) {
  if (t1.kind != TransversalKind::full || t2.kind != TransversalKind::full) {
    throw InvalidArgument("projective linkage is defined for full transversals only");
  }
  if (t1.u.size() != rep.dim() || t2.u.size() != rep.dim()) throw InvalidArgument("transversal from another representation");
  const FiniteField& K = *rep.field();
  LinkReport out;
  // commutative K: the only inner automorphism is the identity
  out.by_automorphism = t1.alpha == t2.alpha;

  const Subspace T1 = diagonal_line(K, t1.u);
  const Subspace T2 = diagonal_line(K, t2.u);
  std::map<Vec, Vec> pi;
  for (const Subspace& S : standard_chain_image(rep, emb)) {
    auto a = point_on_diagonal_line(K, t1.u, T1, S);
    auto b = point_on_diagonal_line(K, t2.u, T2, S);
    if (!a || !b) throw InvalidArgument("record is not a transversal of this representation");
    pi.emplace(*a, *b);
  }
  if (pi.size() != K.order() + 1U) return out;

  // the projectivity is pinned down by (1,0), (0,1), (1,1)
  const Vec& d0 = pi.at(Vec{1, 0});
  const Vec& d1 = pi.at(Vec{0, 1});
  const Vec& d2 = pi.at(Vec{1, 1});
  const Vec rows[2] = {d0, d1};
  auto inv = linalg::inverse(K, Mat::from_rows(2, rows));
  if (!inv) return out;
  const Vec st = linalg::vec_mul(K, d2, *inv);
  if (st[0] == 0 || st[1] == 0) return out;
  const Vec r0 = linalg::vec_scale(K, st[0], d0);
  const Vec r1 = linalg::vec_scale(K, st[1], d1);
  const Vec mrows[2] = {r0, r1};
  const Mat M = Mat::from_rows(2, mrows);
  out.by_projectivity = std::all_of(pi.begin(), pi.end(), [&](const auto& kv) {
    return linalg::normalized(K, linalg::vec_mul(K, kv.first, M)) == kv.second;
  });
  return out;
}

std::vector<Subspace> geometric_weak_transversals(const Representation& rep, const SubfieldEmbedding& emb,
                                                  std::size_t line_cap) {
  const FiniteField& K = *rep.field();
  const std::size_t d = rep.dim();
  const auto images = standard_chain_image(rep, emb);
  const auto pts = linalg::projective_points(K, d);
  if (pts.size() * pts.size() > line_cap) {
    throw CapExceeded("transversal line search needs " + std::to_string(pts.size() * pts.size()) + " lines");
  }
  std::vector<Subspace> out;
  Mat m(2, 2 * d);
  for (const Vec& u : pts) {
    for (const Vec& v : pts) {
      std::fill(m.data.begin(), m.data.end(), Elem{0});
      for (std::size_t i = 0; i < d; ++i) {
        m(0, i) = u[i];
        m(1, d + i) = v[i];
      }
      const Subspace L(K, m);
      const bool ok = std::all_of(images.begin(), images.end(), [&](const Subspace& S) { return meet_dim(K, L, S) == 1; });
      if (ok) out.push_back(L);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_sub_bimodule(const Representation& rep, const SubfieldEmbedding& emb, std::span<const Elem> u) {
  require_compatible(rep, emb);
  const FiniteField& K = *rep.field();
  const auto ku = multiples(K, u);
  for (const Vec& w : ku) {
    for (std::uint32_t x = 0; x < emb.field()->order(); ++x) {
      if (!std::binary_search(ku.begin(), ku.end(), rep.act(w, emb(static_cast<Elem>(x))))) return false;
    }
  }
  return true;
}

bool is_cyclic_submodule(const Representation& rep, const SubfieldEmbedding& emb, std::span<const Elem> u) {
  require_compatible(rep, emb);
  const FiniteField& K = *rep.field();
  std::vector<Vec> uf;
  for (std::uint32_t x = 0; x < emb.field()->order(); ++x) uf.push_back(rep.act(u, emb(static_cast<Elem>(x))));
  std::sort(uf.begin(), uf.end());
  uf.erase(std::unique(uf.begin(), uf.end()), uf.end());
  return uf == multiples(K, u);
}

namespace {

// Every point of T lies on one of the images.
bool covered_by(const FiniteField& K, const Subspace& T, std::span<const Subspace> images) {
  for (const Vec& p : points_of(K, T)) {
    if (std::none_of(images.begin(), images.end(), [&](const Subspace& S) { return S.contains(K, p); })) return false;
  }
  return true;
}

}  // namespace

TransversalCriteria check_transversal_criteria(const Representation& rep, const SubfieldEmbedding& emb) {
  const FiniteField& K = *rep.field();
  const auto records = weak_transversals(rep, emb);
  const auto images = standard_chain_image(rep, emb);
  TransversalCriteria out;
  out.weak = records.size();

  std::vector<Subspace> eigen_lines;
  std::vector<Subspace> eigen_full;
  std::vector<Vec> eigen_vecs;
  out.full_iff_surjective = true;
  out.surjective_iff_cyclic = true;
  for (const auto& r : records) {
    const Subspace T = diagonal_line(K, r.u);
    eigen_lines.push_back(T);
    eigen_vecs.push_back(r.u);
    const bool surj = r.alpha.is_surjective();
    if (r.kind == TransversalKind::full) {
      ++out.full;
      eigen_full.push_back(T);
    }
    if (covered_by(K, T, images) != surj) out.full_iff_surjective = false;
    if (is_cyclic_submodule(rep, emb, r.u) != surj) out.surjective_iff_cyclic = false;
  }
  std::sort(eigen_lines.begin(), eigen_lines.end());
  std::sort(eigen_full.begin(), eigen_full.end());

  const auto geo = geometric_weak_transversals(rep, emb);
  out.eigen_matches_geometric = geo == eigen_lines;
  std::vector<Subspace> geo_full;
  for (const Subspace& T : geo) {
    if (covered_by(K, T, images)) geo_full.push_back(T);
  }
  out.full_matches_geometric = geo_full == eigen_full;

  std::vector<Vec> bimodule;
  for (const Vec& u : linalg::projective_points(K, rep.dim())) {
    if (is_sub_bimodule(rep, emb, u)) bimodule.push_back(u);
  }
  out.eigen_matches_bimodule = bimodule == eigen_vecs;

  out.pairwise_skew = true;
  for (std::size_t i = 0; i < eigen_lines.size() && out.pairwise_skew; ++i) {
    for (std::size_t j = i + 1; j < eigen_lines.size(); ++j) {
      if (meet_dim(K, eigen_lines[i], eigen_lines[j]) != 0) {
        out.pairwise_skew = false;
        break;
      }
    }
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::regulus:
      return "regulus";
    case Verdict::quasi_regulus:
      return "quasi_regulus";
    case Verdict::neither:
      return "neither";
  }
  return "neither";
}

RegulusCertificate regulus_verdict(const Representation& rep, const SubfieldEmbedding& emb) {
  require_compatible(rep, emb);
  const FiniteField& K = *rep.field();
  const FieldPtr& F = emb.field();
  const std::size_t d = rep.dim();
  RegulusCertificate cert;

  if (d == 2) {
    const auto images = standard_chain_image(rep, emb);
    cert.synthetic_regulus = images.size() == K.order() + 1U && is_regulus(K, images);
  }

  if (F->order() != K.order() || F->characteristic() != K.characteristic()) {
    cert.reason = "F = " + F->descriptor() + " is not isomorphic to K = " + K.descriptor() +
                  ", so the chain image has no transversals";
    return cert;
  }

  const Mat& X = rep.phi(emb.generator_image());
  const Elem g = F->primitive_element();
  std::size_t total = 0;
  for (const FieldHom& h : homomorphisms(F, rep.field())) {
    const Mat shifted = linalg::sub(K, X, linalg::scale(K, h(g), Mat::identity(d)));
    const Mat eig = linalg::left_kernel(K, shifted);
    if (eig.rows == 0) continue;
    for (std::size_t i = 0; i < eig.rows; ++i) {
      for (std::uint32_t x = 0; x < F->order(); ++x) {
        const Vec w = rep.act(eig.row(i), emb(static_cast<Elem>(x)));
        if (w != linalg::vec_scale(K, h(static_cast<Elem>(x)), eig.row(i))) {
          throw InternalError("eigenvector of the generator image fails for another element of F");
        }
      }
    }
    total += eig.rows;
    cert.classes.push_back({h, Subspace(K, eig)});
  }

  if (total == d) {
    cert.verdict = cert.classes.size() == 1 ? Verdict::regulus : Verdict::quasi_regulus;
    cert.reason = cert.classes.size() == 1 ? "F acts by one automorphism times the identity"
                                           : "F acts diagonally with " + std::to_string(cert.classes.size()) +
                                                 " distinct automorphisms";
    if (cert.verdict == Verdict::regulus) cert.alpha = cert.classes.front().alpha;
    Mat basis(0, d);
    for (const auto& c : cert.classes) basis = linalg::vstack(basis, c.eigenspace.basis());
    cert.witness_basis = basis;
  } else {
    cert.classes.clear();
    cert.reason = "the action of F is not diagonalizable over K with conjugate eigenvalues";
  }

  std::vector<TransversalRecord> full;
  for (auto& r : weak_transversals(rep, emb)) {
    if (r.kind == TransversalKind::full) full.push_back(std::move(r));
  }
  if (!full.empty()) {
    bool linked = true;
    Subspace span = Subspace::zero(2 * d);
    for (const auto& t : full) {
      const LinkReport lr = projectively_linked(rep, emb, full.front(), t);
      linked = linked && lr.by_automorphism && lr.by_projectivity;
      span = join(K, span, diagonal_line(K, t.u));
    }
    cert.linked_and_spanning = linked && span.dim() == 2 * d;
  }
  return cert;
}

namespace {

// Coordinates in K^(2m) of a subspace of U_theta x U_theta, relative to the
// echelon basis B of U_theta.
Subspace to_summand_coords(const FiniteField& K, const Mat& B, const Subspace& s) {
  const auto pivots = linalg::rref(K, B).pivots;
  const std::size_t d = B.cols;
  const std::size_t m = B.rows;
  Mat out(s.dim(), 2 * m);
  for (std::size_t r = 0; r < s.dim(); ++r) {
    const auto w = s.basis().row(r);
    Vec x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = w[pivots[i]];
      y[i] = w[d + pivots[i]];
    }
    if (linalg::vec_mul(K, x, B) != Vec(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d)) ||
        linalg::vec_mul(K, y, B) != Vec(w.begin() + static_cast<std::ptrdiff_t>(d), w.end())) {
      throw InternalError("trace does not lie in its summand");
    }
    for (std::size_t i = 0; i < m; ++i) {
      out(r, i) = x[i];
      out(r, m + i) = y[i];
    }
  }
  return Subspace(K, out);
}

// The regulus {rowspace [k I | l I]} in K^(2m), sorted.
std::vector<Subspace> standard_regulus(const FiniteField& K, std::size_t m) {
  std::vector<Subspace> out;
  for (const Vec& kl : linalg::projective_points(K, 2)) {
    Mat a(m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      a(i, i) = kl[0];
      a(i, m + i) = kl[1];
    }
    out.emplace_back(K, a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

DecompositionReport check_decomposition(const Representation& rep, const SubfieldEmbedding& emb,
                                        const RegulusCertificate& cert) {
  if (cert.verdict == Verdict::neither) throw InvalidArgument("no eigenspace decomposition to check");
  const FiniteField& K = *rep.field();
  const std::size_t d = rep.dim();
  const auto images = standard_chain_image(rep, emb);
  DecompositionReport out;

  std::vector<Subspace> summands;
  Mat all(0, 2 * d);
  for (const auto& c : cert.classes) {
    const Mat& B = c.eigenspace.basis();
    const Mat zero(B.rows, d);
    const Mat gens = linalg::vstack(linalg::hstack(B, zero), linalg::hstack(zero, B));
    summands.emplace_back(K, gens);
    out.summand_dims.push_back(summands.back().dim());
    all = linalg::vstack(all, gens);
  }
  std::size_t total = 0;
  for (std::size_t s : out.summand_dims) total += s;
  out.direct_sum = total == 2 * d && linalg::rank(K, all) == 2 * d;

  out.traces_are_reguli = true;
  std::vector<Subspace> joined(images.size(), Subspace::zero(2 * d));
  for (std::size_t ci = 0; ci < cert.classes.size(); ++ci) {
    const Mat& B = cert.classes[ci].eigenspace.basis();
    const std::size_t m = B.rows;
    std::vector<Subspace> traces;
    for (std::size_t i = 0; i < images.size(); ++i) {
      const Subspace t = meet(K, images[i], summands[ci]);
      joined[i] = join(K, joined[i], t);
      if (t.dim() != m) {
        out.traces_are_reguli = false;
        continue;
      }
      traces.push_back(to_summand_coords(K, B, t));
    }
    if (traces.size() != images.size()) continue;
    std::vector<Subspace> sorted = traces;
    std::sort(sorted.begin(), sorted.end());
    bool ok = sorted == standard_regulus(K, m);
    if (m == 2) ok = ok && is_regulus(K, traces);
    out.traces_are_reguli = out.traces_are_reguli && ok;
  }
  out.join_of_traces = true;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (joined[i] != images[i]) out.join_of_traces = false;
  }
  return out;
}

std::string to_string(SpreadKind k) {
  switch (k) {
    case SpreadKind::not_spread:
      return "not_spread";
    case SpreadKind::spread:
      return "spread";
    case SpreadKind::regular_spread:
      return "regular_spread";
  }
  return "not_spread";
}

SpreadKind spread_check(const Pg3& pg, std::span<const Subspace> lines) {
  const std::size_t q = pg.field()->order();
  std::vector<std::uint32_t> ids;
  for (const Subspace& s : lines) {
    auto id = pg.line_id(s);
    if (!id) return SpreadKind::not_spread;
    ids.push_back(*id);
  }
  if (ids.size() != q * q + 1) return SpreadKind::not_spread;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (pg.meet(ids[i], ids[j])) return SpreadKind::not_spread;
    }
  }
  std::vector<char> covered(pg.num_points(), 0);
  for (std::uint32_t l : ids) {
    for (std::uint32_t p : pg.line_points(l)) covered[p] = 1;
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) return SpreadKind::not_spread;

  std::vector<char> member(pg.num_lines(), 0);
  for (std::uint32_t l : ids) member[l] = 1;
  // a triple inside an already verified regulus yields that same regulus
  std::vector<std::vector<char>> found;
  std::vector<std::int32_t> local(pg.num_lines(), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) local[ids[i]] = static_cast<std::int32_t>(i);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      for (std::size_t k = j + 1; k < ids.size(); ++k) {
        if (std::any_of(found.begin(), found.end(), [&](const auto& f) { return f[i] && f[j] && f[k]; })) continue;
        const auto reg = pg.regulus_through_three(ids[i], ids[j], ids[k]);
        std::vector<char> mask(ids.size(), 0);
        for (std::uint32_t l : reg) {
          if (!member[l]) return SpreadKind::spread;
          mask[static_cast<std::size_t>(local[l])] = 1;
        }
        found.push_back(std::move(mask));
      }
    }
  }
  return SpreadKind::regular_spread;
}

}  // namespace chaingeom
