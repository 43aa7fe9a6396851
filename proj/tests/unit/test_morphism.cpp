#include <set>

#include "chaingeom/error.hpp"
#include "chaingeom/morphism.hpp"
#include "doctest.h"

using namespace chaingeom;

namespace {

struct Setup {
  RingPtr R;
  LinePtr L;
  SubfieldEmbedding scalar;
  SubfieldEmbedding big;
};

Setup setup(std::uint32_t q) {
  const RingPtr R = parse_ring("m2:gf(" + std::to_string(q) + ")");
  return {R, ProjectiveLine::build(R), embed_subfield(R->scalar_field(), R, EmbedMode::scalar),
          embed_subfield(make_field_of_order(q * q), R, EmbedMode::regular)};
}

FieldHom id_hom(const FiniteRing& R) { return FieldHom::from_automorphism(FieldAut::identity(R.scalar_field())); }

}  // namespace

TEST_CASE("matrices over K") {
  const FieldPtr K2 = make_field_of_order(2), K3 = make_field_of_order(3);
  CHECK(gl2_field(*K2).size() == 6);
  CHECK(gl2_field(*K3).size() == 48);
  const Mat h = parse_matrix2(*K3, "1,2,0,1");
  CHECK(projective_key(*K3, h) == projective_key(*K3, linalg::scale(*K3, 2, h)));
  CHECK(projective_key(*K3, h) != projective_key(*K3, Mat::identity(2)));
  std::set<std::string> keys;
  for (const Mat& m : gl2_field(*K3)) keys.insert(projective_key(*K3, m));
  CHECK(keys.size() == 24);
  CHECK_THROWS_AS(parse_matrix2(*K3, "1,2,3"), InvalidArgument);
  CHECK_THROWS_AS(parse_matrix2(*K3, "1,2,0,9"), InvalidArgument);
  CHECK_THROWS_AS(parse_matrix2(*K3, "a,b,c,d"), InvalidArgument);
}

TEST_CASE("omega-transpose reverses products") {
  const RingPtr R = parse_ring("m2:gf(4)");
  const FieldAut w(R->scalar_field(), 1);
  for (RingId a = 0; a < R->size(); a += 7) {
    for (RingId b = 0; b < R->size(); b += 11) {
      CHECK(omega_transpose(*R, w, R->mul(a, b)) == R->mul(omega_transpose(*R, w, b), omega_transpose(*R, w, a)));
    }
  }
}

TEST_CASE("semilinear maps with kappa = id are the group action") {
  const Setup s = setup(3);
  const auto gens = gl2_generators(*s.R);
  for (std::size_t i = 0; i < gens.size(); i += 5) {
    const MorphismSpec m = make_semilinear(s.scalar, s.scalar, id_hom(*s.R), gens[i]);
    for (PointId p = 0; p < s.L->size(); ++p) CHECK(apply_morphism(m, *s.L, *s.L, p) == s.L->apply(p, gens[i]));
  }
  CHECK_THROWS_AS(make_semilinear(s.scalar, s.scalar, id_hom(*s.R), Mat2{}), InvalidArgument);
  const RingPtr D = parse_ring("dual:gf(3)");
  const auto demb = embed_subfield(D->scalar_field(), D, EmbedMode::scalar);
  CHECK_THROWS_AS(make_semilinear(demb, demb, id_hom(*D), identity2(*D)), InvalidArgument);
}

TEST_CASE("correlation") {
  const Setup s = setup(2);
  const FieldAut id = FieldAut::identity(s.R->scalar_field());
  const auto nf = stable_rank_normal_forms(*s.L);
  std::set<PointId> image;
  for (PointId p = 0; p < s.L->size(); ++p) {
    const PointId c = apply_correlation(*s.L, id, p);
    image.insert(c);
    CHECK(c == apply_correlation_closed_form(*s.L, id, p, nf));
    CHECK(apply_correlation(*s.L, id, c) == p);
  }
  CHECK(image.size() == s.L->size());
  // R(A, E) -> R(A^T, E)
  for (RingId a = 0; a < s.R->size(); ++a) {
    const RingId at = omega_transpose(*s.R, id, a);
    CHECK(apply_correlation(*s.L, id, s.L->point_of_pair(a, s.R->one())) == s.L->point_of_pair(at, s.R->one()));
  }
}

TEST_CASE("contragredient automorphism") {
  const Setup s = setup(2);
  const FieldAut id = FieldAut::identity(s.R->scalar_field());
  const auto gens = gl2_generators(*s.R);
  for (const Mat2& g : gens) {
    for (const Mat2& h : gens) {
      CHECK(contragredient_auto(*s.R, id, mul(*s.R, g, h)) ==
            mul(*s.R, contragredient_auto(*s.R, id, g), contragredient_auto(*s.R, id, h)));
    }
  }
  CHECK_THROWS_AS(contragredient_auto(*s.R, id, Mat2{}), InvalidArgument);
}

TEST_CASE("fundamental morphisms") {
  const Setup s = setup(2);
  const ChainGeometry gs = ChainGeometry::build(s.L, s.scalar);
  const ChainGeometry gb = ChainGeometry::build(s.L, s.big);
  const FieldHom k = id_hom(*s.R);

  const MorphismSpec identity = make_fundamental(s.big, s.big, k, Mat::identity(2));
  CHECK(verify_morphism(identity, gb, gb).all_true());
  CHECK(verify_morphism(identity, gb, gb).chains_onto_chains);
  for (PointId p = 0; p < s.L->size(); ++p) CHECK(apply_morphism(identity, *s.L, *s.L, p) == p);

  const MorphismSpec corr = make_fundamental(s.scalar, s.scalar, k, Mat::identity(2), FieldAut::identity(s.R->scalar_field()));
  CHECK(verify_morphism(corr, gs, gs).all_true());

  // scalars into GF(4): every chain of the smaller geometry lies in a chain of the larger one
  const MorphismSpec up = make_fundamental(s.scalar, s.big, k, Mat::identity(2));
  const auto up_report = verify_morphism(up, gs, gb);
  CHECK(up_report.all_true());
  CHECK_FALSE(up_report.chains_onto_chains);
  CHECK_THROWS_AS(make_fundamental(s.scalar, s.big, k, Mat::identity(2), std::nullopt, FundamentalMode::isomorphism),
                  DomainError);

  CHECK_THROWS_AS(make_fundamental(s.big, s.scalar, k, Mat::identity(2)), DomainError);
  const MorphismSpec forced = make_fundamental(s.big, s.scalar, k, Mat::identity(2), std::nullopt, FundamentalMode::morphism, true);
  CHECK(forced.forced);
  CHECK_FALSE(verify_morphism(forced, gb, gs).chains_into_chains);
}
