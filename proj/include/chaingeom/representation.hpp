#pragma once

// Representations phi: R -> End_K(U), the induced map Phi from points of P(R)
// to subspaces of U x U, and the transversal and regulus analysis of the
// image of the standard chain.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chaingeom/geometry.hpp"
#include "chaingeom/pline.hpp"
#include "chaingeom/ring.hpp"

namespace chaingeom {

class Representation;
using RepPtr = std::shared_ptr<const Representation>;

/// A (K, R)-bimodule U = K^d. Vectors are rows and R acts on the right:
/// u . a = u * phi(a). phi is stored for every element of R, because twisted
/// representations are additive but not K-linear in R's own scalars.
class Representation {
 public:
  /// Checks phi(1) = I, additivity and multiplicativity. Throws
  /// InvalidArgument when any fails or d = 0.
  static RepPtr create(RingPtr R, FieldPtr K, std::size_t d, std::vector<Mat> phi, std::string descriptor);

  const RingPtr& ring() const { return R_; }
  const FieldPtr& field() const { return K_; }
  std::size_t dim() const { return d_; }
  const Mat& phi(RingId a) const { return phi_[a]; }
  const std::string& descriptor() const { return descriptor_; }
  /// phi is injective on R.
  bool faithful() const { return faithful_; }
  Vec act(std::span<const Elem> u, RingId a) const;

 private:
  Representation() = default;
  RingPtr R_;
  FieldPtr K_;
  std::size_t d_ = 0;
  std::vector<Mat> phi_;
  std::string descriptor_;
  bool faithful_ = false;
};

/// U = K^d acted on by the defining d x d matrices of R.
RepPtr natural_rep(const RingPtr& R);
/// U = R as a left F-space through the embedding, R acting by right
/// multiplication. The scalar field of U is F.
RepPtr regular_rep(const SubfieldEmbedding& emb);
/// The ring K (as M(1, K)) acting on K^d by k -> alpha(k) I.
RepPtr basis_rep(const FieldPtr& K, std::size_t d, const FieldAut& alpha);
/// The ring K acting on K^d by k -> diag(k^(p^e_1), ..., k^(p^e_d)).
RepPtr diagonal_rep(const FieldPtr& K, std::span<const std::uint32_t> frobenius_powers);

/// Parses "natural", "regular", "basis:i" and "diag:i,j,...". The basis and
/// diag forms need the embedding's ring to be the bare field; their dimension
/// comes from dim (basis) or the list length (diag).
RepPtr parse_rep(const std::string& spec, const SubfieldEmbedding& emb, std::size_t dim = 2);

/// Row space of [phi(a) | phi(b)].
Subspace phi_image(const Representation& rep, RingId a, RingId b);
Subspace phi_image(const Representation& rep, const ProjectiveLine& line, PointId p);
/// Images of R(1,0) followed by R(x,1) for x = 0, 1, ..., |F|-1.
std::vector<Subspace> standard_chain_image(const Representation& rep, const SubfieldEmbedding& emb);
/// Images of a chain's points, in the chain's point order.
std::vector<Subspace> chain_image(const Representation& rep, const ProjectiveLine& line, const Chain& chain);

/// Ku x Ku inside U x U.
Subspace diagonal_line(const FiniteField& K, std::span<const Elem> u);

enum class TransversalKind { weak, full };
std::string to_string(TransversalKind kind);

struct TransversalRecord {
  Vec u;           // normalized
  FieldHom alpha;  // u . x = alpha(x) u for x in F
  TransversalKind kind;
};

/// Common eigenvectors of rho_x (x in F), one per projective point of U.
/// The search uses x = primitive element of F and then validates every x.
std::vector<TransversalRecord> weak_transversals(const Representation& rep, const SubfieldEmbedding& emb);

/// Whether two full transversals are linked. For finite (commutative) K the
/// algebraic criterion is equality of the automorphisms; the geometric one
/// fits a projectivity to the induced map between the two lines.
struct LinkReport {
  bool by_automorphism = false;
  bool by_projectivity = false;
};
LinkReport projectively_linked(const Representation& rep, const SubfieldEmbedding& emb, const TransversalRecord& t1,
                               const TransversalRecord& t2);

/// Lines of P(K, U x U) meeting every standard chain image in exactly one
/// point, found by enumerating all lines through a point of U x 0 and a point
/// of 0 x U (every candidate has this shape). Sorted. Throws CapExceeded
/// when that enumeration exceeds line_cap.
std::vector<Subspace> geometric_weak_transversals(const Representation& rep, const SubfieldEmbedding& emb,
                                                  std::size_t line_cap = 1'000'000);
/// Ku . x is contained in Ku for every x in F (checked on vector sets).
bool is_sub_bimodule(const Representation& rep, const SubfieldEmbedding& emb, std::span<const Elem> u);
/// u . F equals Ku as a set of vectors.
bool is_cyclic_submodule(const Representation& rep, const SubfieldEmbedding& emb, std::span<const Elem> u);

/// Outcome of cross-checking the eigenvector, geometric and bimodule
/// descriptions of (weak) transversals against each other.
struct TransversalCriteria {
  std::size_t weak = 0;
  std::size_t full = 0;
  bool eigen_matches_geometric = false;
  bool eigen_matches_bimodule = false;
  bool full_matches_geometric = false;  // full transversals are covered by the images
  bool full_iff_surjective = false;
  bool surjective_iff_cyclic = false;
  bool pairwise_skew = false;
  bool ok() const {
    return eigen_matches_geometric && eigen_matches_bimodule && full_matches_geometric && full_iff_surjective &&
           surjective_iff_cyclic && pairwise_skew;
  }
};
TransversalCriteria check_transversal_criteria(const Representation& rep, const SubfieldEmbedding& emb);

enum class Verdict { regulus, quasi_regulus, neither };
std::string to_string(Verdict v);

/// One eigenspace class: the transversals sharing the automorphism alpha,
/// spanning U_theta.
struct LinkedClass {
  FieldHom alpha;
  Subspace eigenspace;
};

struct RegulusCertificate {
  Verdict verdict = Verdict::neither;
  std::string reason;
  std::optional<FieldHom> alpha;     // regulus only
  std::vector<LinkedClass> classes;  // regulus and quasi_regulus
  Mat witness_basis;                 // eigenbasis of U, rows grouped by class
  /// All full transversals pairwise linked and together spanning U x U.
  bool linked_and_spanning = false;
  /// d = 2 only: the standard chain image equals the regulus through the
  /// images of R(1,0), R(0,1), R(1,1).
  std::optional<bool> synthetic_regulus;
};

RegulusCertificate regulus_verdict(const Representation& rep, const SubfieldEmbedding& emb);

/// Consequences of a quasi-regulus decomposition.
struct DecompositionReport {
  std::vector<std::size_t> summand_dims;  // dim U_theta x U_theta per class
  bool direct_sum = false;                // summands independent, spanning U x U
  bool traces_are_reguli = false;
  bool join_of_traces = false;            // every image is the join of its traces
  bool ok() const { return direct_sum && traces_are_reguli && join_of_traces; }
};
DecompositionReport check_decomposition(const Representation& rep, const SubfieldEmbedding& emb,
                                        const RegulusCertificate& cert);

enum class SpreadKind { not_spread, spread, regular_spread };
std::string to_string(SpreadKind k);

/// Classifies a set of lines of PG(3, q).
SpreadKind spread_check(const Pg3& pg, std::span<const Subspace> lines);

}  // namespace chaingeom
