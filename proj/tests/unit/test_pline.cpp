#include <algorithm>
#include <set>

#include "chaingeom/error.hpp"
#include "chaingeom/pline.hpp"
#include "doctest.h"

using namespace chaingeom;

namespace {

using Submodule = std::set<std::pair<RingId, RingId>>;

Submodule submodule(const FiniteRing& R, RingId a, RingId b) {
  Submodule s;
  for (RingId r = 0; r < R.size(); ++r) s.emplace(R.mul(r, a), R.mul(r, b));
  return s;
}

// points = cyclic submodules generated by first rows of invertible matrices
std::set<Submodule> brute_points(const FiniteRing& R) {
  std::set<Submodule> out;
  for (const Mat2& g : invertible_matrices(R)) out.insert(submodule(R, g.a(), g.b()));
  return out;
}

std::uint64_t reguli_of_pg3(std::uint64_t q) { return q * q * q * q * (q * q * q - 1) * (q * q + 1); }

}  // namespace

TEST_CASE("points are the submodules generated by admissible pairs") {
  for (const char* d : {"gf(2)", "gf(3)", "gf(4)", "dual:gf(2)", "prod2:gf(2)", "ut2:gf(2)", "m2:gf(2)", "dual:gf(3)"}) {
    CAPTURE(d);
    const RingPtr R = parse_ring(d);
    const LinePtr L = ProjectiveLine::build(R);
    const auto expect = brute_points(*R);
    CHECK(L->size() == expect.size());
    std::set<Submodule> got;
    for (PointId p = 0; p < L->size(); ++p) got.insert(submodule(*R, L->rep(p).a, L->rep(p).b));
    CHECK(got == expect);
  }
}

TEST_CASE("point count formulas") {
  for (std::uint64_t q : {2U, 3U, 4U, 5U}) {
    CHECK(ProjectiveLine::build(parse_ring("gf(" + std::to_string(q) + ")"))->size() == q + 1);
  }
  CHECK(ProjectiveLine::build(parse_ring("m2:gf(2)"))->size() == 35);
  CHECK(ProjectiveLine::build(parse_ring("m2:gf(3)"))->size() == 130);
  CHECK(ProjectiveLine::build(parse_ring("dual:gf(2)"))->size() == 6);
  CHECK(ProjectiveLine::build(parse_ring("prod2:gf(3)"))->size() == 16);
  CHECK_THROWS_AS(ProjectiveLine::build(parse_ring("m2:gf(3)"), 1000), CapExceeded);
}

TEST_CASE("distant iff the two rows form an invertible matrix") {
  for (const char* d : {"gf(3)", "dual:gf(2)", "ut2:gf(2)", "m2:gf(2)"}) {
    CAPTURE(d);
    const RingPtr R = parse_ring(d);
    const LinePtr L = ProjectiveLine::build(R);
    std::set<std::pair<PointId, PointId>> expect;
    for (const Mat2& g : invertible_matrices(*R)) {
      expect.emplace(*L->point_of(g.a(), g.b()), *L->point_of(g.c(), g.d()));
    }
    std::set<std::pair<PointId, PointId>> got;
    for (PointId p = 0; p < L->size(); ++p) {
      for (PointId q = 0; q < L->size(); ++q) {
        if (L->is_distant(p, q)) got.emplace(p, q);
      }
    }
    CHECK(got == expect);
  }
}

TEST_CASE("group action") {
  const RingPtr R = parse_ring("m2:gf(2)");
  const LinePtr L = ProjectiveLine::build(R);
  for (PointId p = 0; p < L->size(); ++p) CHECK(L->apply(p, identity2(*R)) == p);
  const auto gens = gl2_generators(*R);
  for (const Mat2& g : gens) {
    for (const Mat2& h : gens) {
      for (PointId p = 0; p < L->size(); ++p) CHECK(L->apply(L->apply(p, g), h) == L->apply(p, mul(*R, g, h)));
    }
  }
  CHECK_THROWS_AS(L->point_of_pair(R->zero(), R->zero()), InvalidArgument);
  CHECK_FALSE(L->point_of(R->zero(), R->zero()).has_value());
}

TEST_CASE("chain counts") {
  for (std::uint32_t q : {2U, 3U}) {
    const std::string K = "gf(" + std::to_string(q) + ")";
    // scalar chains of M(2, q) are the reguli of PG(3, q)
    const RingPtr M = parse_ring("m2:" + K);
    const ChainGeometry scalar = ChainGeometry::build(ProjectiveLine::build(M), embed_subfield(M->scalar_field(), M, EmbedMode::scalar));
    CHECK(scalar.chains().size() == reguli_of_pg3(q));
    // chains of K x K are graphs of projectivities of PG(1, q)
    const RingPtr P = parse_ring("prod2:" + K);
    CHECK(ChainGeometry::build(ProjectiveLine::build(P), embed_subfield(P->scalar_field(), P, EmbedMode::scalar)).chains().size() ==
          q * (q * q - 1));
    // circles of the Laguerre plane over GF(q)
    const RingPtr D = parse_ring("dual:" + K);
    CHECK(ChainGeometry::build(ProjectiveLine::build(D), embed_subfield(D->scalar_field(), D, EmbedMode::scalar)).chains().size() ==
          q * q * q);
  }
  const RingPtr M = parse_ring("m2:gf(2)");
  const ChainGeometry g = ChainGeometry::build(ProjectiveLine::build(M), embed_subfield(parse_field("gf(4)"), M, EmbedMode::regular));
  CHECK(g.chains().size() == 56);
  CHECK(g.chain_size() == 5);
  CHECK_THROWS_AS(ChainGeometry::build(ProjectiveLine::build(M), embed_subfield(M->scalar_field(), M, EmbedMode::scalar), 100),
                  CapExceeded);
}

TEST_CASE("chain lookup") {
  const RingPtr M = parse_ring("m2:gf(3)");
  const LinePtr L = ProjectiveLine::build(M);
  const ChainGeometry g = ChainGeometry::build(L, embed_subfield(parse_field("gf(9)"), M, EmbedMode::regular));
  for (std::size_t i = 0; i < g.chains().size(); i += 97) CHECK(g.find_chain(g.chains()[i].points) == i);
  const auto through = chains_through(g, {L->base_zero(), L->base_infinity(), L->base_unit()});
  CHECK(through.size() == 3);
  for (std::size_t i : through) {
    for (PointId p : {L->base_zero(), L->base_infinity(), L->base_unit()}) {
      CHECK(std::binary_search(g.chains()[i].points.begin(), g.chains()[i].points.end(), p));
    }
  }
  std::size_t incidences = 0;
  for (PointId p = 0; p < L->size(); ++p) incidences += g.chains_through_point(p).size();
  CHECK(incidences == g.chains().size() * g.chain_size());
}

TEST_CASE("normal forms R(A, E + AB)") {
  const RingPtr R = parse_ring("m2:gf(2)");
  const LinePtr L = ProjectiveLine::build(R);
  const auto nf = stable_rank_normal_forms(*L);
  CHECK(nf.size() == L->size());
  for (const auto& [p, ab] : nf) {
    const RingId second = R->add(R->one(), R->mul(ab.first, ab.second));
    CHECK(L->point_of_pair(ab.first, second) == p);
  }
}
