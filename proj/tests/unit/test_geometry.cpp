#include <algorithm>
#include <set>

#include "chaingeom/error.hpp"
#include "chaingeom/geometry.hpp"
#include "chaingeom/representation.hpp"
#include "doctest.h"

using namespace chaingeom;

namespace {

// all spreads of PG(3, q) by exact cover of the points with lines
void cover(const Pg3& pg, std::vector<std::uint8_t>& used, std::vector<std::uint32_t>& chosen,
           std::vector<std::vector<std::uint32_t>>& out) {
  const auto it = std::find(used.begin(), used.end(), 0);
  if (it == used.end()) {
    out.push_back(chosen);
    std::sort(out.back().begin(), out.back().end());
    return;
  }
  const auto first = static_cast<std::uint32_t>(it - used.begin());
  for (std::uint32_t l = 0; l < pg.num_lines(); ++l) {
    const auto& pts = pg.line_points(l);
    if (std::find(pts.begin(), pts.end(), first) == pts.end()) continue;
    if (std::any_of(pts.begin(), pts.end(), [&](std::uint32_t p) { return used[p] != 0; })) continue;
    for (std::uint32_t p : pts) used[p] = 1;
    chosen.push_back(l);
    cover(pg, used, chosen, out);
    chosen.pop_back();
    for (std::uint32_t p : pts) used[p] = 0;
  }
}

Subspace line_of(const FiniteField& K, std::initializer_list<Vec> rows) {
  return Subspace(K, Mat::from_rows(4, std::vector<Vec>(rows)));
}

}  // namespace

TEST_CASE("subspace operations") {
  const FieldPtr K = make_field_of_order(3);
  const Subspace a = line_of(*K, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  const Subspace b = line_of(*K, {{0, 0, 1, 0}, {0, 0, 0, 1}});
  const Subspace c = line_of(*K, {{1, 0, 1, 0}, {0, 1, 0, 1}});
  CHECK(meet_dim(*K, a, b) == 0);
  CHECK(join(*K, a, b).dim() == 4);
  CHECK(meet(*K, a, c).dim() == 0);
  CHECK(line_of(*K, {{2, 0, 0, 0}, {1, 1, 0, 0}}) == a);
  CHECK(is_contained(*K, Subspace(*K, Mat::from_rows(4, std::vector<Vec>{{1, 1, 0, 0}})), a));
  CHECK(points_of(*K, a).size() == 4);
  CHECK(a.contains(*K, Vec{2, 1, 0, 0}));
  CHECK_FALSE(a.contains(*K, Vec{0, 0, 1, 0}));
}

TEST_CASE("lines of PG(3, q)") {
  for (std::uint32_t q : {2U, 3U}) {
    const Pg3 pg(make_field_of_order(q));
    CHECK(pg.num_points() == (q * q + 1) * (q + 1));
    CHECK(pg.num_lines() == (q * q + 1) * (q * q + q + 1));
    for (std::uint32_t l = 0; l < pg.num_lines(); ++l) {
      CHECK(pg.line_points(l).size() == q + 1);
      CHECK(pg.line_id(pg.line(l)) == l);
    }
    CHECK(pg.line_through(0, 1) == pg.line_through(1, 0));
  }
}

TEST_CASE("regulus through three lines") {
  for (std::uint32_t q : {2U, 3U}) {
    const FieldPtr K = make_field_of_order(q);
    const Pg3 pg(K);
    const Subspace a = line_of(*K, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    const Subspace b = line_of(*K, {{0, 0, 1, 0}, {0, 0, 0, 1}});
    const Subspace c = line_of(*K, {{1, 0, 1, 0}, {0, 1, 0, 1}});
    const auto reg = regulus_through_three(*K, a, b, c);
    CHECK(reg.size() == q + 1);
    CHECK(is_regulus(*K, reg));
    // the lines {(x, y, kx, ky)} together with b
    std::vector<std::uint32_t> ids;
    for (const Subspace& s : reg) ids.push_back(*pg.line_id(s));
    std::sort(ids.begin(), ids.end());
    CHECK(pg.regulus_through_three(*pg.line_id(a), *pg.line_id(b), *pg.line_id(c)) == ids);
    const auto tr = transversals_of_three(*K, a, b, c);
    CHECK(tr.size() == q + 1);
    for (const Subspace& t : tr) {
      for (const Subspace& l : reg) CHECK(meet_dim(*K, t, l) == 1);
    }
    CHECK_THROWS_AS(regulus_through_three(*K, a, a, c), InvalidArgument);
  }
}

TEST_CASE("number of reguli of PG(3, 2)") {
  const Pg3 pg(make_field_of_order(2));
  // each regulus holds 3! ordered triples of its lines, and any skew triple lies on exactly one regulus
  std::size_t ordered = 0;
  for (std::uint32_t a = 0; a < pg.num_lines(); ++a)
    for (std::uint32_t b = 0; b < pg.num_lines(); ++b)
      for (std::uint32_t c = 0; c < pg.num_lines(); ++c)
        if (a != b && b != c && a != c && !pg.meet(a, b) && !pg.meet(b, c) && !pg.meet(a, c)) ++ordered;
  const std::size_t per_regulus = 3 * 2 * 1;
  CHECK(pg.reguli_within({}).size() == ordered / per_regulus);
  CHECK(pg.reguli_within({}).size() == 560);
}

TEST_CASE("spreads of PG(3, 2) by exact cover") {
  const Pg3 pg(make_field_of_order(2));
  std::vector<std::uint8_t> used(pg.num_points(), 0);
  std::vector<std::uint32_t> chosen;
  std::vector<std::vector<std::uint32_t>> spreads;
  cover(pg, used, chosen, spreads);
  CHECK(spreads.size() == 56);
  for (const auto& s : spreads) {
    std::vector<Subspace> lines;
    for (std::uint32_t l : s) lines.push_back(pg.line(l));
    CHECK(spread_check(pg, lines) == SpreadKind::regular_spread);
  }
  std::vector<Subspace> four;
  for (std::size_t i = 0; i < 4; ++i) four.push_back(pg.line(spreads.front()[i]));
  CHECK(spread_check(pg, four) == SpreadKind::not_spread);
}

TEST_CASE("a non-regular spread of PG(3, 3)") {
  // replace one regulus of a regular spread by its opposite regulus
  const FieldPtr K = make_field_of_order(3);
  const Pg3 pg(K);
  const RingPtr M = parse_ring("m2:gf(3)");
  const auto emb = embed_subfield(parse_field("gf(9)"), M, EmbedMode::regular);
  const auto rep = natural_rep(M);
  const auto spread = standard_chain_image(*rep, emb);
  REQUIRE(spread_check(pg, spread) == SpreadKind::regular_spread);
  const auto reg = regulus_through_three(*K, spread[0], spread[1], spread[2]);
  const auto opposite = transversals_of_three(*K, reg[0], reg[1], reg[2]);
  std::vector<Subspace> derived = opposite;
  for (const Subspace& l : spread) {
    if (std::find(reg.begin(), reg.end(), l) == reg.end()) derived.push_back(l);
  }
  REQUIRE(derived.size() == 10);
  CHECK(spread_check(pg, derived) == SpreadKind::spread);
}
