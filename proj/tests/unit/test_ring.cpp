#include <algorithm>
#include <set>

#include "chaingeom/error.hpp"
#include "chaingeom/ring.hpp"
#include "doctest.h"

using namespace chaingeom;

namespace {

// units by exhaustive search for a right inverse
std::size_t brute_units(const FiniteRing& R) {
  std::size_t n = 0;
  for (RingId a = 0; a < R.size(); ++a) {
    for (RingId b = 0; b < R.size(); ++b) {
      if (R.mul(a, b) == R.one()) {
        ++n;
        break;
      }
    }
  }
  return n;
}

std::size_t brute_gl2(const FiniteRing& R) {
  // a 2x2 matrix over R is invertible iff it has a two-sided inverse over R
  std::size_t n = 0;
  const RingId s = R.size();
  std::vector<Mat2> all;
  for (RingId a = 0; a < s; ++a)
    for (RingId b = 0; b < s; ++b)
      for (RingId c = 0; c < s; ++c)
        for (RingId d = 0; d < s; ++d) all.push_back(Mat2{{a, b, c, d}});
  for (const Mat2& m : all) {
    for (const Mat2& x : all) {
      if (mul(R, m, x) == identity2(R)) {
        ++n;
        break;
      }
    }
  }
  return n;
}

}  // namespace

TEST_CASE("ring sizes and unit groups") {
  for (std::uint32_t q : {2U, 3U}) {
    const FieldPtr K = make_field_of_order(q);
    const std::uint32_t q2 = q * q;
    CHECK(matrix_ring(2, K)->size() == q2 * q2);
    CHECK(dual_numbers(K)->size() == q2);
    CHECK(product_ring(K, 2)->size() == q2);
    CHECK(upper_triangular(K)->size() == q2 * q);
    for (const RingPtr& R : {matrix_ring(2, K), dual_numbers(K), product_ring(K, 2), upper_triangular(K)}) {
      CAPTURE(R->descriptor());
      CHECK(R->units().size() == brute_units(*R));
      for (RingId u : R->units()) CHECK(R->mul(u, *R->inverse(u)) == R->one());
    }
  }
}

TEST_CASE("GL_2 over small rings") {
  // |GL(2,2)| = 6, |GL(2,3)| = 48 as 2x2 matrices over the field
  CHECK(invertible_matrices(*parse_ring("gf(2)")).size() == 6);
  CHECK(invertible_matrices(*parse_ring("gf(3)")).size() == 48);
  for (const char* d : {"gf(2)", "gf(3)", "dual:gf(2)", "prod2:gf(2)"}) {
    const RingPtr R = parse_ring(d);
    CAPTURE(d);
    CHECK(invertible_matrices(*R).size() == brute_gl2(*R));
    auto closure = gl2_closure(*R, gl2_generators(*R));
    CHECK(closure.size() == invertible_matrices(*R).size());
  }
  CHECK_THROWS_AS(invertible_matrices(*parse_ring("m2:gf(3)"), 1000), CapExceeded);
}

TEST_CASE("subfield embeddings") {
  const RingPtr R = parse_ring("m2:gf(3)");
  const auto regular = embed_subfield(parse_field("gf(9)"), R, EmbedMode::regular);
  std::set<RingId> img(regular.image().begin(), regular.image().end());
  CHECK(img.size() == 9);
  for (Elem a = 0; a < 9; ++a) {
    for (Elem b = 0; b < 9; ++b) {
      const FiniteField& F = *regular.field();
      CHECK(regular(F.add(a, b)) == R->add(regular(a), regular(b)));
      CHECK(regular(F.mul(a, b)) == R->mul(regular(a), regular(b)));
    }
    CHECK(regular.preimage(regular(a)) == a);
  }
  const auto scalar = embed_subfield(R->scalar_field(), R, EmbedMode::scalar);
  CHECK(scalar(1) == R->one());
  CHECK_THROWS_AS(embed_subfield(parse_field("gf(9)"), R, EmbedMode::scalar), InvalidArgument);
  CHECK_THROWS_AS(embed_subfield(parse_field("gf(4)"), R, EmbedMode::regular), InvalidArgument);
  CHECK_THROWS_AS(embed_subfield(parse_field("gf(9)"), parse_ring("dual:gf(3)"), EmbedMode::regular), InvalidArgument);
  CHECK(parse_embed_mode("twisted") == EmbedMode::twisted);
  CHECK_THROWS_AS(parse_embed_mode("diagonal"), InvalidArgument);
}

TEST_CASE("centralizers and normality") {
  for (std::uint32_t q : {2U, 3U}) {
    const RingPtr R = matrix_ring(2, make_field_of_order(q));
    const auto F = embed_subfield(make_field_of_order(q * q), R, EmbedMode::regular);
    // brute-force centralizer
    std::vector<RingId> expect;
    for (RingId a = 0; a < R->size(); ++a) {
      bool ok = true;
      for (RingId f : F.image()) ok = ok && R->mul(a, f) == R->mul(f, a);
      if (ok) expect.push_back(a);
    }
    auto z = centralizer(*R, F.image());
    std::sort(z.begin(), z.end());
    CHECK(z == expect);
    CHECK(z.size() == q * q);
    CHECK_FALSE(has_centralizing_basis(F));
    CHECK(centralizer_span_dimension(F) == 1);
    CHECK(has_centralizing_basis(embed_subfield(R->scalar_field(), R, EmbedMode::scalar)));
    // GF(q^2)* is normalized by GL(2, q) only for q = 2
    CHECK(is_normal_subgroup(F) == (q == 2));
  }
}

TEST_CASE("left span") {
  const RingPtr R = parse_ring("m2:gf(2)");
  const auto F = embed_subfield(parse_field("gf(4)"), R, EmbedMode::regular);
  const RingId one[] = {R->one()};
  auto span = left_span(F, one);
  std::vector<RingId> img(F.image().begin(), F.image().end());
  std::sort(img.begin(), img.end());
  CHECK(span == img);
}

TEST_CASE("ring descriptors") {
  CHECK(parse_ring("m2:gf(3)")->descriptor() == "m2:gf(3)");
  CHECK(parse_ring("gf(4)")->size() == 4);
  CHECK(parse_ring("ut2:gf(2)")->kind() == RingKind::upper_triangular);
  CHECK(parse_ring("m3:gf(2)")->size() == 512);
  CHECK_THROWS_AS(parse_ring("mx:gf(2)"), InvalidArgument);
  CHECK_THROWS_AS(parse_ring("quat:gf(3)"), InvalidArgument);
  CHECK_THROWS_AS(parse_ring("m2:gf(10)"), InvalidArgument);
  CHECK_THROWS_AS(parse_ring("dual"), InvalidArgument);
}

TEST_CASE("2x2 matrices over R") {
  const RingPtr R = parse_ring("dual:gf(2)");
  const Mat2 I = identity2(*R);
  CHECK(is_invertible(*R, I));
  const Mat2 zero{};
  CHECK_FALSE(is_invertible(*R, zero));
  CHECK(flatten(*R, I) == Mat::identity(4));
  for (const Mat2& g : gl2_generators(*R)) {
    const auto inv = inverse(*R, g);
    REQUIRE(inv);
    CHECK(mul(*R, g, *inv) == I);
  }
}
