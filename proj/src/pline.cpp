#include "chaingeom/pline.hpp"

#include <algorithm>
#include <deque>

#include "chaingeom/error.hpp"

namespace chaingeom {

namespace {

bool unimodular_with_basis(const FiniteRing& R, std::span<const RingId> basis_ids, RingId a, RingId b) {
  const FiniteField& K = *R.scalar_field();
  const std::size_t dd = R.matrix_dim() * R.matrix_dim();
  Mat rows(2 * basis_ids.size() + 1, dd);
  std::size_t r = 0;
  for (RingId x : {a, b}) {
    for (RingId bi : basis_ids) {
      const Mat& m = R.mat(R.mul(x, bi));
      std::copy(m.data.begin(), m.data.end(), rows.data.begin() + static_cast<std::ptrdiff_t>(r * dd));
      ++r;
    }
  }
  Mat without = rows;
  without.rows = r;
  without.data.resize(r * dd);
  const Mat& e = R.mat(R.one());
  std::copy(e.data.begin(), e.data.end(), rows.data.begin() + static_cast<std::ptrdiff_t>(r * dd));
  return linalg::rank(K, without) == linalg::rank(K, rows);
}

std::vector<RingId> basis_ids(const FiniteRing& R) {
  std::vector<RingId> ids;
  for (const Mat& b : R.basis()) ids.push_back(R.id_of(b));
  return ids;
}

}  // namespace

bool unimodular(const FiniteRing& R, RingId a, RingId b) { return unimodular_with_basis(R, basis_ids(R), a, b); }

LinePtr ProjectiveLine::build(RingPtr R, std::uint64_t pair_cap) {
  const std::uint64_t n = R->size();
  if (n * n > pair_cap) {
    throw CapExceeded("enumerating P(" + R->descriptor() + ") needs " + std::to_string(n * n) + " pairs, cap is " +
                      std::to_string(pair_cap));
  }
  std::shared_ptr<ProjectiveLine> line(new ProjectiveLine());
  line->R_ = R;
  line->pair_point_.assign(n * n, -1);
  const auto bids = basis_ids(*R);
  std::vector<std::uint8_t> admissible(n * n, 0);
  for (RingId a = 0; a < n; ++a) {
    for (RingId b = 0; b < n; ++b) admissible[line->pair_index(a, b)] = unimodular_with_basis(*R, bids, a, b) ? 1 : 0;
  }
  for (RingId a = 0; a < n; ++a) {
    for (RingId b = 0; b < n; ++b) {
      const std::size_t ix = line->pair_index(a, b);
      if (!admissible[ix] || line->pair_point_[ix] >= 0) continue;
      const auto id = static_cast<std::int32_t>(line->reps_.size());
      line->reps_.push_back({a, b});
      for (RingId u : R->units()) {
        const std::size_t jx = line->pair_index(R->mul(u, a), R->mul(u, b));
        if (!admissible[jx]) throw InternalError("unit multiple of an admissible pair is not admissible");
        line->pair_point_[jx] = id;
      }
    }
  }
  const std::size_t np = line->reps_.size();
  line->distant_.assign(np * np, 0);
  for (PointId p = 0; p < np; ++p) {
    for (PointId q = p + 1; q < np; ++q) {
      const Mat2 m{{line->reps_[p].a, line->reps_[p].b, line->reps_[q].a, line->reps_[q].b}};
      const std::uint8_t dist = is_invertible(*R, m) ? 1 : 0;
      line->distant_[p * np + q] = dist;
      line->distant_[q * np + p] = dist;
    }
  }
  return line;
}

std::optional<PointId> ProjectiveLine::point_of(RingId a, RingId b) const {
  const std::int32_t id = pair_point_[pair_index(a, b)];
  if (id < 0) return std::nullopt;
  return static_cast<PointId>(id);
}

PointId ProjectiveLine::point_of_pair(RingId a, RingId b) const {
  if (auto p = point_of(a, b)) return *p;
  throw InvalidArgument("pair is not admissible in " + R_->descriptor());
}

PointId ProjectiveLine::apply(PointId p, const Mat2& g) const {
  const FiniteRing& R = *R_;
  const PointRep r = reps_[p];
  const RingId a = R.add(R.mul(r.a, g.e[0]), R.mul(r.b, g.e[2]));
  const RingId b = R.add(R.mul(r.a, g.e[1]), R.mul(r.b, g.e[3]));
  auto img = point_of(a, b);
  if (!img) throw InvalidArgument("matrix does not act on P(" + R.descriptor() + "): image pair not admissible");
  return *img;
}

std::unordered_map<PointId, std::pair<RingId, RingId>> stable_rank_normal_forms(const ProjectiveLine& line) {
  const FiniteRing& R = *line.ring();
  std::unordered_map<PointId, std::pair<RingId, RingId>> out;
  for (RingId A = 0; A < R.size(); ++A) {
    for (RingId B = 0; B < R.size(); ++B) {
      auto p = line.point_of(A, R.add(R.one(), R.mul(A, B)));
      if (!p) throw InternalError("(A, E + AB) is not admissible");
      out.try_emplace(*p, A, B);
    }
  }
  return out;
}

Chain standard_chain(const ProjectiveLine& line, const SubfieldEmbedding& emb) {
  const FiniteRing& R = *line.ring();
  if (emb.ring()->descriptor() != R.descriptor() || emb.ring()->size() != R.size()) {
    throw InvalidArgument("embedding and projective line use different rings");
  }
  Chain c;
  c.witness = identity2(R);
  c.points.push_back(line.point_of_pair(R.one(), R.zero()));
  for (std::uint32_t x = 0; x < emb.field()->order(); ++x) {
    c.points.push_back(line.point_of_pair(emb(static_cast<Elem>(x)), R.one()));
  }
  std::sort(c.points.begin(), c.points.end());
  if (std::adjacent_find(c.points.begin(), c.points.end()) != c.points.end()) {
    throw InternalError("standard chain has repeated points");
  }
  return c;
}

std::size_t ChainGeometry::PointsHash::operator()(const std::vector<PointId>& v) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (PointId x : v) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return h;
}

ChainGeometry ChainGeometry::build(LinePtr line, SubfieldEmbedding emb, std::size_t chain_cap) {
  ChainGeometry geom(std::move(line), std::move(emb));
  const ProjectiveLine& L = *geom.line_;
  const FiniteRing& R = *L.ring();
  const auto gens = gl2_generators(R);

  geom.chains_.push_back(standard_chain(L, geom.emb_));
  geom.index_.emplace(geom.chains_[0].points, 0);
  std::deque<std::size_t> queue{0};
  std::vector<PointId> img;
  while (!queue.empty()) {
    const std::size_t ci = queue.front();
    queue.pop_front();
    for (const Mat2& g : gens) {
      img.clear();
      for (PointId p : geom.chains_[ci].points) img.push_back(L.apply(p, g));
      std::sort(img.begin(), img.end());
      if (geom.index_.contains(img)) continue;
      if (geom.chains_.size() >= chain_cap) {
        throw CapExceeded("chain orbit of Sigma(" + geom.emb_.field()->descriptor() + ", " + R.descriptor() +
                          ") exceeds the cap of " + std::to_string(chain_cap) + " chains");
      }
      Mat2 w = mul(R, geom.chains_[ci].witness, g);
      geom.index_.emplace(img, geom.chains_.size());
      geom.chains_.push_back(Chain{img, w});
      queue.push_back(geom.chains_.size() - 1);
    }
  }
  geom.through_.assign(L.size(), {});
  for (std::size_t i = 0; i < geom.chains_.size(); ++i) {
    for (PointId p : geom.chains_[i].points) geom.through_[p].push_back(static_cast<std::uint32_t>(i));
  }
  return geom;
}

std::optional<std::size_t> ChainGeometry::find_chain(std::span<const PointId> sorted_points) const {
  auto it = index_.find(std::vector<PointId>(sorted_points.begin(), sorted_points.end()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> ChainGeometry::chains_containing(std::span<const PointId> points) const {
  std::vector<std::size_t> out;
  if (points.empty()) {
    for (std::size_t i = 0; i < chains_.size(); ++i) out.push_back(i);
    return out;
  }
  for (std::uint32_t ci : through_[points[0]]) {
    const auto& pts = chains_[ci].points;
    bool all = true;
    for (PointId p : points.subspan(1)) {
      if (!std::binary_search(pts.begin(), pts.end(), p)) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(ci);
  }
  return out;
}

std::vector<std::size_t> chains_through(const ChainGeometry& geom, const std::array<PointId, 3>& points) {
  const ProjectiveLine& L = *geom.line();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (!L.is_distant(points[i], points[j])) throw InvalidArgument("chains_through needs pairwise distant points");
    }
  }
  return geom.chains_containing(points);
}

}  // namespace chaingeom
