#pragma once

// Subspaces of K^n in canonical form, and the line geometry of PG(3, q).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chaingeom/linalg.hpp"

namespace chaingeom {

/// A subspace of K^n, stored by its reduced row echelon basis. Two subspaces
/// are equal iff their bases are equal.
class Subspace {
 public:
  Subspace() = default;
  Subspace(const FiniteField& K, const Mat& generators);
  static Subspace zero(std::size_t ambient) { return Subspace(Mat(0, ambient)); }

  std::size_t dim() const { return basis_.rows; }
  std::size_t ambient() const { return basis_.cols; }
  const Mat& basis() const { return basis_; }
  bool contains(const FiniteField& K, std::span<const Elem> v) const;

  bool operator==(const Subspace&) const = default;
  auto operator<=>(const Subspace&) const = default;

 private:
  explicit Subspace(Mat basis) : basis_(std::move(basis)) {}
  Mat basis_;
};

Subspace join(const FiniteField& K, const Subspace& a, const Subspace& b);
Subspace meet(const FiniteField& K, const Subspace& a, const Subspace& b);
std::size_t meet_dim(const FiniteField& K, const Subspace& a, const Subspace& b);
bool is_contained(const FiniteField& K, const Subspace& a, const Subspace& b);
/// Normalized representatives of the projective points of s.
std::vector<Vec> points_of(const FiniteField& K, const Subspace& s);
Subspace span_of(const FiniteField& K, std::span<const Vec> vectors, std::size_t ambient);

/// The q+1 lines meeting three pairwise skew lines of PG(3, q), constructed
/// point by point along the first line. Throws InvalidArgument if the lines
/// are not pairwise skew.
std::vector<Subspace> transversals_of_three(const FiniteField& K, const Subspace& l1, const Subspace& l2,
                                            const Subspace& l3);

/// The unique regulus through three pairwise skew lines: the lines meeting
/// all of their transversals. Sorted.
std::vector<Subspace> regulus_through_three(const FiniteField& K, const Subspace& l1, const Subspace& l2,
                                            const Subspace& l3);

/// True iff the lines are pairwise skew, there are q+1 of them, and they
/// coincide with the regulus through their first three.
bool is_regulus(const FiniteField& K, std::span<const Subspace> lines);

/// Enumerated points and lines of PG(3, q) with bitset incidence, used for the
/// brute-force spread and regulus sweeps.
class Pg3 {
 public:
  explicit Pg3(FieldPtr K);

  const FieldPtr& field() const { return K_; }
  std::size_t num_points() const { return points_.size(); }
  std::size_t num_lines() const { return lines_.size(); }
  const Vec& point(std::uint32_t id) const { return points_[id]; }
  std::uint32_t point_id(std::span<const Elem> v) const;
  const Subspace& line(std::uint32_t id) const { return lines_[id]; }
  const std::vector<std::uint32_t>& line_points(std::uint32_t id) const { return line_points_[id]; }
  std::optional<std::uint32_t> line_id(const Subspace& s) const;
  std::uint32_t line_through(std::uint32_t p, std::uint32_t q) const;

  bool meet(std::uint32_t l1, std::uint32_t l2) const;
  bool on_line(std::uint32_t point, std::uint32_t line) const;
  /// Lines other than the given ones meeting each of them.
  std::vector<std::uint32_t> lines_meeting_all(std::span<const std::uint32_t> lines) const;
  /// Sorted regulus through three pairwise skew lines, by exhaustive search.
  std::vector<std::uint32_t> regulus_through_three(std::uint32_t a, std::uint32_t b, std::uint32_t c) const;
  /// Every regulus of PG(3, q) whose lines all lie in the allowed set
  /// (all lines when the set is empty), each as a sorted id list.
  std::vector<std::vector<std::uint32_t>> reguli_within(std::span<const std::uint32_t> allowed) const;

 private:
  std::size_t code(std::span<const Elem> v) const;

  FieldPtr K_;
  std::size_t words_ = 0;
  std::vector<Vec> points_;
  std::vector<std::int32_t> point_index_;
  std::vector<Subspace> lines_;
  std::vector<std::vector<std::uint32_t>> line_points_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::int32_t> pair_line_;
};

}  // namespace chaingeom
