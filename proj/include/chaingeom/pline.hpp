#pragma once

// The projective line P(R) over a finite ring, its distant relation, and the
// chains of the generalized chain geometry Sigma(F, R).

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "chaingeom/ring.hpp"

namespace chaingeom {

using PointId = std::uint32_t;

inline constexpr std::uint64_t kDefaultPairCap = 1'000'000;
inline constexpr std::size_t kDefaultChainCap = 100'000;

struct PointRep {
  RingId a = 0;
  RingId b = 0;
  bool operator==(const PointRep&) const = default;
};

class ProjectiveLine;
using LinePtr = std::shared_ptr<const ProjectiveLine>;

/// Points are the cyclic submodules R(a, b) of admissible pairs. Each point
/// is stored once through its canonical representative, the
/// lexicographically least pair (by ring id) of its unit orbit {(ua, ub)}.
class ProjectiveLine {
 public:
  static LinePtr build(RingPtr R, std::uint64_t pair_cap = kDefaultPairCap);

  const RingPtr& ring() const { return R_; }
  std::size_t size() const { return reps_.size(); }
  PointRep rep(PointId p) const { return reps_[p]; }

  /// (a, b) extends to an invertible 2x2 matrix; tested as 1 in aR + bR.
  bool is_admissible(RingId a, RingId b) const { return pair_point_[pair_index(a, b)] >= 0; }
  std::optional<PointId> point_of(RingId a, RingId b) const;
  /// The point of an admissible pair; throws InvalidArgument otherwise.
  PointId point_of_pair(RingId a, RingId b) const;

  /// p . g, the image under the right action of g in GL_2(R).
  PointId apply(PointId p, const Mat2& g) const;

  bool is_distant(PointId p, PointId q) const { return distant_[static_cast<std::size_t>(p) * size() + q] != 0; }

  /// R(E,0), R(0,E), R(E,E).
  PointId base_zero() const { return point_of_pair(R_->one(), R_->zero()); }
  PointId base_infinity() const { return point_of_pair(R_->zero(), R_->one()); }
  PointId base_unit() const { return point_of_pair(R_->one(), R_->one()); }

 private:
  ProjectiveLine() = default;
  std::size_t pair_index(RingId a, RingId b) const { return static_cast<std::size_t>(a) * R_->size() + b; }

  RingPtr R_;
  std::vector<std::int32_t> pair_point_;
  std::vector<PointRep> reps_;
  std::vector<std::uint8_t> distant_;
};

/// The admissibility criterion 1 in aR + bR, evaluated by K-linear algebra.
bool unimodular(const FiniteRing& R, RingId a, RingId b);

/// Points of the form R(A, E + AB), together with one (A, B) per point.
std::unordered_map<PointId, std::pair<RingId, RingId>> stable_rank_normal_forms(const ProjectiveLine& line);

struct Chain {
  std::vector<PointId> points;  // sorted
  Mat2 witness;                 // standard chain . witness = this chain
};

Chain standard_chain(const ProjectiveLine& line, const SubfieldEmbedding& emb);

/// The orbit of the standard chain under GL_2(R).
class ChainGeometry {
 public:
  static ChainGeometry build(LinePtr line, SubfieldEmbedding emb, std::size_t chain_cap = kDefaultChainCap);

  const LinePtr& line() const { return line_; }
  const SubfieldEmbedding& embedding() const { return emb_; }
  const std::vector<Chain>& chains() const { return chains_; }
  /// Index 0 is always the standard chain.
  const Chain& standard() const { return chains_.front(); }
  std::size_t chain_size() const { return emb_.field()->order() + 1; }

  std::optional<std::size_t> find_chain(std::span<const PointId> sorted_points) const;
  /// Indices of every chain containing all the given points.
  std::vector<std::size_t> chains_containing(std::span<const PointId> points) const;
  const std::vector<std::uint32_t>& chains_through_point(PointId p) const { return through_[p]; }

 private:
  ChainGeometry(LinePtr line, SubfieldEmbedding emb) : line_(std::move(line)), emb_(std::move(emb)) {}

  LinePtr line_;
  SubfieldEmbedding emb_;
  std::vector<Chain> chains_;
  std::vector<std::vector<std::uint32_t>> through_;
  struct PointsHash {
    std::size_t operator()(const std::vector<PointId>& v) const noexcept;
  };
  std::unordered_map<std::vector<PointId>, std::size_t, PointsHash> index_;
};

/// Chains through three pairwise distant points. Throws InvalidArgument when
/// the points are not pairwise distant.
std::vector<std::size_t> chains_through(const ChainGeometry& geom, const std::array<PointId, 3>& points);

}  // namespace chaingeom
