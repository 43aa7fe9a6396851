#include <algorithm>
#include <set>

#include "chaingeom/error.hpp"
#include "chaingeom/representation.hpp"
#include "doctest.h"

using namespace chaingeom;

namespace {

std::set<std::vector<std::uint32_t>> chain_image_ids(const Pg3& pg, const Representation& rep, const ChainGeometry& g) {
  std::set<std::vector<std::uint32_t>> out;
  for (const Chain& c : g.chains()) {
    std::vector<std::uint32_t> ids;
    for (const Subspace& s : chain_image(rep, *g.line(), c)) ids.push_back(*pg.line_id(s));
    std::sort(ids.begin(), ids.end());
    out.insert(ids);
  }
  return out;
}

// common eigenvectors of the image of F, by testing every nonzero vector
std::set<Vec> brute_eigenvectors(const Representation& rep, const SubfieldEmbedding& emb) {
  const FiniteField& K = *rep.field();
  std::set<Vec> out;
  for (const Vec& u : linalg::projective_points(K, rep.dim())) {
    bool eigen = true;
    for (Elem x = 0; x < emb.field()->order() && eigen; ++x) {
      const Vec ux = rep.act(u, emb(x));
      // ux is a multiple of u
      bool multiple = false;
      for (Elem k = 0; k < K.order(); ++k) multiple = multiple || linalg::vec_scale(K, k, u) == ux;
      eigen = multiple;
    }
    if (eigen) out.insert(u);
  }
  return out;
}

}  // namespace

TEST_CASE("representations check their axioms") {
  const RingPtr R = parse_ring("dual:gf(2)");
  const FieldPtr K = R->scalar_field();
  std::vector<Mat> phi(R->size(), Mat::identity(2));
  CHECK_THROWS_AS(Representation::create(R, K, 2, phi, "constant"), InvalidArgument);
  phi.assign(R->size(), Mat(2, 2));
  CHECK_THROWS_AS(Representation::create(R, K, 2, phi, "zero"), InvalidArgument);
  const auto nat = natural_rep(R);
  CHECK(nat->faithful());
  CHECK(nat->dim() == 2);
  CHECK_THROWS_AS(parse_rep("tensor", embed_subfield(K, R, EmbedMode::scalar)), InvalidArgument);
  CHECK_THROWS_AS(parse_rep("basis:5", embed_subfield(K, parse_ring("gf(4)"), EmbedMode::scalar)), InvalidArgument);
}

TEST_CASE("regular representation") {
  const RingPtr M = parse_ring("m2:gf(2)");
  const auto scalar = embed_subfield(M->scalar_field(), M, EmbedMode::scalar);
  const auto big = embed_subfield(parse_field("gf(4)"), M, EmbedMode::regular);
  CHECK(regular_rep(scalar)->dim() == 4);
  CHECK(regular_rep(big)->dim() == 2);
  CHECK(regular_rep(big)->field()->order() == 4);
  CHECK(regular_rep(scalar)->faithful());
}

TEST_CASE("weak transversals are the common eigenvectors") {
  struct Case {
    const char* ring;
    const char* field;
    EmbedMode mode;
  };
  for (const Case c : {Case{"m2:gf(2)", "gf(2)", EmbedMode::scalar}, Case{"m2:gf(3)", "gf(9)", EmbedMode::regular},
                       Case{"ut2:gf(3)", "gf(3)", EmbedMode::scalar}, Case{"m2:gf(4)", "gf(4)", EmbedMode::twisted}}) {
    CAPTURE(c.ring);
    const RingPtr R = parse_ring(c.ring);
    const auto emb = embed_subfield(parse_field(c.field), R, c.mode);
    for (const RepPtr& rep : {natural_rep(R), regular_rep(emb)}) {
      std::set<Vec> found;
      for (const auto& t : weak_transversals(*rep, emb)) found.insert(t.u);
      CHECK(found == brute_eigenvectors(*rep, emb));
      CHECK(check_transversal_criteria(*rep, emb).ok());
    }
  }
}

TEST_CASE("verdicts") {
  const RingPtr M2 = parse_ring("m2:gf(2)");
  const auto scalar = embed_subfield(M2->scalar_field(), M2, EmbedMode::scalar);
  const auto big = embed_subfield(parse_field("gf(4)"), M2, EmbedMode::regular);
  CHECK(regulus_verdict(*natural_rep(M2), scalar).verdict == Verdict::regulus);
  CHECK(regulus_verdict(*natural_rep(M2), big).verdict == Verdict::neither);
  CHECK(regulus_verdict(*regular_rep(scalar), scalar).verdict == Verdict::regulus);
  const auto quasi = regulus_verdict(*regular_rep(big), big);
  CHECK(quasi.verdict == Verdict::quasi_regulus);
  CHECK(quasi.classes.size() == 2);

  const FieldPtr F4 = parse_field("gf(4)");
  const std::uint32_t powers[] = {0, 0, 1, 1};
  const auto diag = diagonal_rep(F4, powers);
  const auto demb = embed_subfield(F4, diag->ring(), EmbedMode::scalar);
  const auto cert = regulus_verdict(*diag, demb);
  CHECK(cert.verdict == Verdict::quasi_regulus);
  REQUIRE(cert.classes.size() == 2);
  CHECK(cert.classes[0].eigenspace.dim() == 2);
  const auto dr = check_decomposition(*diag, demb, cert);
  CHECK(dr.ok());
  CHECK(dr.summand_dims == std::vector<std::size_t>{4, 4});

  const auto b = basis_rep(F4, 2, FieldAut(F4, 1));
  const auto bcert = regulus_verdict(*b, embed_subfield(F4, b->ring(), EmbedMode::scalar));
  CHECK(bcert.verdict == Verdict::regulus);
  REQUIRE(bcert.alpha);
  CHECK(bcert.alpha->frobenius_power() == 1U);
  CHECK(bcert.synthetic_regulus == true);
}

TEST_CASE("transversals of every chain image") {
  // dual numbers and triangular matrices: K(0,1) x K(0,1); K x K: both axes
  const FieldPtr K = parse_field("gf(2)");
  const Pg3 pg(K);
  struct Case {
    const char* ring;
    std::vector<Vec> common;
  };
  for (const Case& c : {Case{"dual:gf(2)", {{0, 1}}}, Case{"ut2:gf(2)", {{0, 1}}}, Case{"prod2:gf(2)", {{0, 1}, {1, 0}}},
                        Case{"m2:gf(2)", {}}}) {
    CAPTURE(c.ring);
    const RingPtr R = parse_ring(c.ring);
    const ChainGeometry g = ChainGeometry::build(ProjectiveLine::build(R), embed_subfield(K, R, EmbedMode::scalar));
    const auto images = chain_image_ids(pg, *natural_rep(R), g);
    std::vector<Vec> common;
    for (const Vec& u : linalg::projective_points(*K, 2)) {
      const auto T = *pg.line_id(diagonal_line(*K, u));
      const bool all = std::all_of(images.begin(), images.end(), [&](const auto& ids) {
        return std::all_of(ids.begin(), ids.end(), [&](std::uint32_t l) { return pg.meet(T, l); });
      });
      if (all) common.push_back(u);
    }
    std::sort(common.begin(), common.end());
    auto expect = c.common;
    std::sort(expect.begin(), expect.end());
    CHECK(common == expect);
  }
}

TEST_CASE("chain images of GF(4) in M(2,2) are exactly the spreads of PG(3,2)") {
  const RingPtr M = parse_ring("m2:gf(2)");
  const auto emb = embed_subfield(parse_field("gf(4)"), M, EmbedMode::regular);
  const ChainGeometry g = ChainGeometry::build(ProjectiveLine::build(M), emb);
  const Pg3 pg(M->scalar_field());
  const auto images = chain_image_ids(pg, *natural_rep(M), g);
  CHECK(images.size() == 56);
  for (const auto& ids : images) {
    std::vector<Subspace> lines;
    for (std::uint32_t l : ids) lines.push_back(pg.line(l));
    CHECK(spread_check(pg, lines) == SpreadKind::regular_spread);
  }
}

TEST_CASE("phi images") {
  const RingPtr M = parse_ring("m2:gf(3)");
  const auto rep = natural_rep(M);
  const LinePtr L = ProjectiveLine::build(M);
  std::set<Subspace> seen;
  for (PointId p = 0; p < L->size(); ++p) {
    const Subspace s = phi_image(*rep, *L, p);
    CHECK(s.dim() == 2);
    seen.insert(s);
  }
  // the 130 points go to the 130 lines of PG(3,3)
  CHECK(seen.size() == 130);
  const auto emb = embed_subfield(M->scalar_field(), M, EmbedMode::scalar);
  CHECK(standard_chain_image(*rep, emb).size() == 4);
}
