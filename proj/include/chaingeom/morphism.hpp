#pragma once

// Point maps between projective lines over 2x2 matrix rings: semilinear maps
// R(A,B) -> R'((A^kappa, B^kappa) H), the correlation-type map defined by a
// linear equation, and fundamental morphisms between chain geometries.

#include <optional>
#include <string>
#include <vector>

#include "chaingeom/pline.hpp"
#include "chaingeom/ring.hpp"

namespace chaingeom {

/// (c_ij) -> (c_ji^omega) on a full matrix ring. For commutative K this is an
/// antiautomorphism of R.
RingId omega_transpose(const FiniteRing& R, const FieldAut& omega, RingId a);

/// Entrywise kappa: M(n, K) -> M(n, K').
RingId apply_kappa(const FiniteRing& R, const FiniteRing& target, const FieldHom& kappa, RingId a);

/// [[A,B],[C,D]] -> [[D^wT, -B^wT], [-C^wT, A^wT]]^-1, an automorphism of
/// GL_2(R). Throws InvalidArgument on a non-invertible input.
Mat2 contragredient_auto(const FiniteRing& R, const FieldAut& omega, const Mat2& g);

/// The point {(X, Y) : -X B^wT + Y A^wT = 0} for p = R(A, B), found by
/// solving the equation over all of R^2. Throws InternalError if the solution
/// set is not a point.
PointId apply_correlation(const ProjectiveLine& line, const FieldAut& omega, PointId p);

/// The same map through R(A, E + AB) -> R(A^wT, E + A^wT B^wT), using a
/// precomputed normal form table.
PointId apply_correlation_closed_form(const ProjectiveLine& line, const FieldAut& omega, PointId p,
                                      const std::unordered_map<PointId, std::pair<RingId, RingId>>& normal_forms);

struct MorphismSpec {
  SubfieldEmbedding source;
  SubfieldEmbedding target;
  FieldHom kappa;                 // K -> K', bijective
  Mat2 H;                         // in GL_2(R')
  std::optional<FieldAut> omega;  // correlation applied first when present
  std::optional<Mat> H1;          // block of H = diag(H1, H1) for fundamental maps
  bool forced = false;            // built with the inclusion check disabled
  std::string descriptor() const;
};

/// A map of shape R(A,B) -> R'((A^kappa, B^kappa) H), optionally preceded by
/// the correlation for omega. Both rings must be 2x2 matrix rings.
MorphismSpec make_semilinear(const SubfieldEmbedding& source, const SubfieldEmbedding& target, const FieldHom& kappa,
                             const Mat2& H, std::optional<FieldAut> omega = std::nullopt);

enum class FundamentalMode {
  morphism,     // H1^-1 F^kappa H1 contained in F'
  isomorphism,  // H1^-1 F^kappa H1 equal to F'
};

/// The map with H = diag(H1, H1). Checks the inclusion (or equality) of
/// H1^-1 F^kappa H1 (with F replaced by F^wT when omega is given) in F' and
/// throws DomainError when it fails, unless force is set.
MorphismSpec make_fundamental(const SubfieldEmbedding& source, const SubfieldEmbedding& target, const FieldHom& kappa,
                              const Mat& H1, std::optional<FieldAut> omega = std::nullopt,
                              FundamentalMode mode = FundamentalMode::morphism, bool force = false);

/// True iff the inclusion (or equality) condition holds.
bool fundamental_condition(const SubfieldEmbedding& source, const SubfieldEmbedding& target, const FieldHom& kappa,
                           const Mat& H1, const std::optional<FieldAut>& omega, FundamentalMode mode);

/// R(A,B) -> R'((A^kappa, B^kappa) H); the spec must not carry omega.
PointId apply_semilinear(const MorphismSpec& m, const ProjectiveLine& from, const ProjectiveLine& to, PointId p);
/// The full point map of a spec.
PointId apply_morphism(const MorphismSpec& m, const ProjectiveLine& from, const ProjectiveLine& to, PointId p);
std::vector<PointId> point_map(const MorphismSpec& m, const ProjectiveLine& from, const ProjectiveLine& to);

struct MorphismReport {
  bool bijective = false;
  bool distant_forward = false;
  bool distant_backward = false;
  bool chains_into_chains = false;
  bool chains_onto_chains = false;
  bool fundamental = false;
  /// The fields a fundamental bijective morphism needs.
  bool all_true() const { return bijective && distant_forward && distant_backward && chains_into_chains && fundamental; }
};

MorphismReport verify_morphism(const MorphismSpec& m, const ChainGeometry& source, const ChainGeometry& target);

/// Canonical key of an invertible matrix modulo nonzero scalars.
std::string projective_key(const FiniteField& K, const Mat& m);

/// All invertible 2x2 matrices over K, in lexicographic entry order.
std::vector<Mat> gl2_field(const FiniteField& K);

/// Parses "a,b,c,d" (row-major element codes) into a 2x2 matrix over K.
Mat parse_matrix2(const FiniteField& K, const std::string& s);

}  // namespace chaingeom
