#include "chaingeom/morphism.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "chaingeom/error.hpp"

namespace chaingeom {

namespace {

void require_matrix_ring2(const FiniteRing& R, const char* what) {
  if (R.kind() != RingKind::matrix_ring || R.matrix_dim() != 2) {
    throw InvalidArgument(std::string(what) + " must be a ring of 2x2 matrices, got " + R.descriptor());
  }
}

std::uint64_t pair_key(RingId a, RingId b) { return (static_cast<std::uint64_t>(a) << 32U) | b; }

std::string matrix_text(const Mat& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (i) os << ";";
    for (std::size_t j = 0; j < m.cols; ++j) os << (j ? "," : "") << m(i, j);
  }
  os << "]";
  return os.str();
}

}  // namespace

RingId omega_transpose(const FiniteRing& R, const FieldAut& omega, RingId a) {
  if (R.kind() != RingKind::matrix_ring) throw InvalidArgument("omega-transpose needs a full matrix ring");
  if (!omega.field()->same_as(*R.scalar_field())) throw InvalidArgument("automorphism of another field");
  const Mat& m = R.mat(a);
  Mat t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = omega(m(i, j));
  }
  return R.id_of(t);
}

RingId apply_kappa(const FiniteRing& R, const FiniteRing& target, const FieldHom& kappa, RingId a) {
  if (R.matrix_dim() != target.matrix_dim()) throw InvalidArgument("kappa needs matrix rings of equal size");
  if (!kappa.from()->same_as(*R.scalar_field()) || !kappa.to()->same_as(*target.scalar_field())) {
    throw InvalidArgument("kappa does not map the scalar field of the source to that of the target");
  }
  Mat m = R.mat(a);
  for (Elem& e : m.data) e = kappa(e);
  return target.id_of(m);
}

Mat2 contragredient_auto(const FiniteRing& R, const FieldAut& omega, const Mat2& g) {
  if (!is_invertible(R, g)) throw InvalidArgument("contragredient automorphism needs an invertible matrix");
  const Mat2 pre{{omega_transpose(R, omega, g.d()), R.neg(omega_transpose(R, omega, g.b())),
                  R.neg(omega_transpose(R, omega, g.c())), omega_transpose(R, omega, g.a())}};
  auto inv = inverse(R, pre);
  if (!inv) throw InternalError("image under the contragredient automorphism is not invertible");
  return *inv;
}

PointId apply_correlation(const ProjectiveLine& line, const FieldAut& omega, PointId p) {
  const FiniteRing& R = *line.ring();
  require_matrix_ring2(R, "correlation ring");
  const PointRep rep = line.rep(p);
  const RingId At = omega_transpose(R, omega, rep.a);
  const RingId Bt = omega_transpose(R, omega, rep.b);

  // -X B^wT + Y A^wT = 0  <=>  X B^wT = Y A^wT
  std::vector<std::vector<RingId>> by_value(R.size());
  for (RingId X = 0; X < R.size(); ++X) by_value[R.mul(X, Bt)].push_back(X);
  std::vector<std::uint64_t> solutions;
  std::optional<PointId> point;
  for (RingId Y = 0; Y < R.size(); ++Y) {
    for (RingId X : by_value[R.mul(Y, At)]) {
      solutions.push_back(pair_key(X, Y));
      if (!point) point = line.point_of(X, Y);
    }
  }
  if (!point) throw InternalError("correlation solution set contains no admissible pair");
  const PointRep img = line.rep(*point);
  std::vector<std::uint64_t> module;
  for (RingId r = 0; r < R.size(); ++r) module.push_back(pair_key(R.mul(r, img.a), R.mul(r, img.b)));
  std::sort(module.begin(), module.end());
  std::sort(solutions.begin(), solutions.end());
  if (module != solutions) throw InternalError("correlation solution set is not a point of the projective line");
  return *point;
}

PointId apply_correlation_closed_form(const ProjectiveLine& line, const FieldAut& omega, PointId p,
                                      const std::unordered_map<PointId, std::pair<RingId, RingId>>& normal_forms) {
  const FiniteRing& R = *line.ring();
  const auto it = normal_forms.find(p);
  if (it == normal_forms.end()) throw InvalidArgument("point has no (A, E + AB) normal form in the table");
  const RingId At = omega_transpose(R, omega, it->second.first);
  const RingId Bt = omega_transpose(R, omega, it->second.second);
  return line.point_of_pair(At, R.add(R.one(), R.mul(At, Bt)));
}

std::string MorphismSpec::descriptor() const {
  std::string s = "kappa=" + kappa.descriptor();
  if (H1) {
    s += " H1=" + matrix_text(*H1);
  } else {
    s += " H=[" + std::to_string(H.e[0]) + "," + std::to_string(H.e[1]) + ";" + std::to_string(H.e[2]) + "," +
         std::to_string(H.e[3]) + "]";
  }
  s += " omega=" + (omega ? omega->descriptor() : std::string("none"));
  if (forced) s += " forced";
  return s;
}

MorphismSpec make_semilinear(const SubfieldEmbedding& source, const SubfieldEmbedding& target, const FieldHom& kappa,
                             const Mat2& H, std::optional<FieldAut> omega) {
  const FiniteRing& R = *source.ring();
  const FiniteRing& R2 = *target.ring();
  require_matrix_ring2(R, "source ring");
  require_matrix_ring2(R2, "target ring");
  if (!kappa.from()->same_as(*R.scalar_field()) || !kappa.to()->same_as(*R2.scalar_field())) {
    throw InvalidArgument("kappa must map " + R.scalar_field()->descriptor() + " to " + R2.scalar_field()->descriptor());
  }
  if (!kappa.is_surjective()) throw InvalidArgument("kappa must be an isomorphism");
  if (!is_invertible(R2, H)) throw InvalidArgument("H is not invertible over " + R2.descriptor());
  if (omega && !omega->field()->same_as(*R.scalar_field())) throw InvalidArgument("omega must be an automorphism of K");
  return MorphismSpec{source, target, kappa, H, std::move(omega), std::nullopt, false};
}

bool fundamental_condition(const SubfieldEmbedding& source, const SubfieldEmbedding& target, const FieldHom& kappa,
                           const Mat& H1, const std::optional<FieldAut>& omega, FundamentalMode mode) {
  const FiniteRing& R = *source.ring();
  const FiniteRing& R2 = *target.ring();
  require_matrix_ring2(R, "source ring");
  require_matrix_ring2(R2, "target ring");
  const FiniteField& K2 = *R2.scalar_field();
  if (H1.rows != 2 || H1.cols != 2) throw InvalidArgument("H1 must be a 2x2 matrix");
  auto inv = linalg::inverse(K2, H1);
  if (!inv) throw InvalidArgument("H1 is not invertible over " + K2.descriptor());
  const RingId h = R2.id_of(H1);
  const RingId hinv = R2.id_of(*inv);
  std::set<RingId> images;
  for (std::uint32_t f = 0; f < source.field()->order(); ++f) {
    RingId M = source(static_cast<Elem>(f));
    if (omega) M = omega_transpose(R, *omega, M);
    const RingId C = R2.mul(R2.mul(hinv, apply_kappa(R, R2, kappa, M)), h);
    if (!target.contains(C)) return false;
    images.insert(C);
  }
  return mode == FundamentalMode::morphism || images.size() == target.field()->order();
}

MorphismSpec make_fundamental(const SubfieldEmbedding& source, const SubfieldEmbedding& target, const FieldHom& kappa,
                              const Mat& H1, std::optional<FieldAut> omega, FundamentalMode mode, bool force) {
  const bool ok = fundamental_condition(source, target, kappa, H1, omega, mode);
  if (!ok && !force) {
    throw DomainError(std::string("H1^-1 F^kappa H1 is not ") +
                      (mode == FundamentalMode::morphism ? "contained in" : "equal to") + " F' for " + matrix_text(H1));
  }
  const FiniteRing& R2 = *target.ring();
  const RingId h = R2.id_of(H1);
  MorphismSpec m = make_semilinear(source, target, kappa, Mat2{{h, R2.zero(), R2.zero(), h}}, std::move(omega));
  m.H1 = H1;
  m.forced = !ok;
  return m;
}

PointId apply_semilinear(const MorphismSpec& m, const ProjectiveLine& from, const ProjectiveLine& to, PointId p) {
  if (m.omega) throw InvalidArgument("apply_semilinear called on a spec with a correlation factor");
  const FiniteRing& R = *from.ring();
  const FiniteRing& R2 = *to.ring();
  const PointRep r = from.rep(p);
  const RingId a = apply_kappa(R, R2, m.kappa, r.a);
  const RingId b = apply_kappa(R, R2, m.kappa, r.b);
  const Mat2& H = m.H;
  const RingId X = R2.add(R2.mul(a, H.e[0]), R2.mul(b, H.e[2]));
  const RingId Y = R2.add(R2.mul(a, H.e[1]), R2.mul(b, H.e[3]));
  return to.point_of_pair(X, Y);
}

PointId apply_morphism(const MorphismSpec& m, const ProjectiveLine& from, const ProjectiveLine& to, PointId p) {
  if (!m.omega) return apply_semilinear(m, from, to, p);
  MorphismSpec plain = m;
  plain.omega.reset();
  return apply_semilinear(plain, from, to, apply_correlation(from, *m.omega, p));
}

std::vector<PointId> point_map(const MorphismSpec& m, const ProjectiveLine& from, const ProjectiveLine& to) {
  std::vector<PointId> out(from.size());
  for (PointId p = 0; p < from.size(); ++p) out[p] = apply_morphism(m, from, to, p);
  return out;
}

MorphismReport verify_morphism(const MorphismSpec& m, const ChainGeometry& source, const ChainGeometry& target) {
  const ProjectiveLine& L = *source.line();
  const ProjectiveLine& L2 = *target.line();
  const auto f = point_map(m, L, L2);
  MorphismReport rep;

  std::vector<PointId> sorted = f;
  std::sort(sorted.begin(), sorted.end());
  rep.bijective = L.size() == L2.size() && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();

  rep.distant_forward = true;
  rep.distant_backward = true;
  for (PointId p = 0; p < L.size(); ++p) {
    for (PointId q = p + 1; q < L.size(); ++q) {
      const bool d1 = L.is_distant(p, q);
      const bool d2 = f[p] != f[q] && L2.is_distant(f[p], f[q]);
      if (d1 && !d2) rep.distant_forward = false;
      if (d2 && !d1) rep.distant_backward = false;
    }
  }

  rep.chains_into_chains = true;
  bool each_is_chain = true;
  std::vector<std::uint8_t> hit(target.chains().size(), 0);
  std::size_t hits = 0;
  std::vector<PointId> img;
  for (const Chain& c : source.chains()) {
    img.clear();
    for (PointId p : c.points) img.push_back(f[p]);
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (auto idx = target.find_chain(img)) {
      if (hit[*idx] == 0) ++hits;
      hit[*idx] = 1;
    } else {
      each_is_chain = false;
      if (target.chains_containing(img).empty()) rep.chains_into_chains = false;
    }
  }
  rep.chains_onto_chains = rep.bijective && each_is_chain && hits == target.chains().size();

  const auto& std2 = target.standard().points;
  const bool base = f[L.base_zero()] == L2.base_zero() && f[L.base_infinity()] == L2.base_infinity() &&
                    f[L.base_unit()] == L2.base_unit();
  const bool standard = std::all_of(source.standard().points.begin(), source.standard().points.end(),
                                    [&](PointId p) { return std::binary_search(std2.begin(), std2.end(), f[p]); });
  rep.fundamental = base && standard;
  return rep;
}

std::string projective_key(const FiniteField& K, const Mat& m) {
  Mat n = m;
  n.data = linalg::normalized(K, m.data);
  return n.key();
}

std::vector<Mat> gl2_field(const FiniteField& K) {
  std::vector<Mat> out;
  const std::uint32_t q = K.order();
  Mat m(2, 2);
  for (std::uint32_t code = 0; code < q * q * q * q; ++code) {
    std::uint32_t c = code;
    for (int i = 3; i >= 0; --i) {
      m.data[static_cast<std::size_t>(i)] = static_cast<Elem>(c % q);
      c /= q;
    }
    if (linalg::rank(K, m) == 2) out.push_back(m);
  }
  return out;
}

Mat parse_matrix2(const FiniteField& K, const std::string& s) {
  Mat m(2, 2);
  std::stringstream ss(s);
  std::string tok;
  std::size_t i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= 4 || tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 6) {
      throw InvalidArgument("matrix must be four comma-separated element codes, got '" + s + "'");
    }
    const unsigned long v = std::stoul(tok);
    if (v >= K.order()) throw InvalidArgument("element code " + tok + " is outside " + K.descriptor());
    m.data[i++] = static_cast<Elem>(v);
  }
  if (i != 4) throw InvalidArgument("matrix must be four comma-separated element codes, got '" + s + "'");
  return m;
}

}  // namespace chaingeom
