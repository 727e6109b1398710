#include "doctest.h"
#include "ess/errors.hpp"
#include "ess/modz.hpp"
#include "ess/pages.hpp"

using namespace ess;

namespace {

Presentation make(std::vector<std::string> gens, std::vector<std::string> rels) {
  Presentation p{std::move(gens), {}};
  for (const auto& r : rels) p.relators.push_back(parse_word(r, p.generators));
  return p;
}

EquivariantComplex circle_mod(std::uint64_t m, const FieldDescriptor& f) {
  return presentation_complex(make({"x"}, {}), {GroupDescriptor::cyclic(m), {{1}}}, f);
}

EquivariantComplex torus2(const FieldDescriptor& f) {
  return presentation_complex(make({"a", "b"}, {"abAB"}), {GroupDescriptor::free_abelian(2), {{1, 0}, {0, 1}}}, f);
}

EquivariantComplex zxf2(const FieldDescriptor& f) {
  return presentation_complex(make({"a", "b", "c"}, {"abAB", "acAC"}),
                              {GroupDescriptor::free_abelian(1), {{2}, {1}, {1}}}, f);
}

EquivariantComplex trefoil(const FieldDescriptor& f) {
  return presentation_complex(make({"x", "y"}, {"xyxYXY"}), {GroupDescriptor::free_abelian(1), {{1}, {1}}}, f);
}

}  // namespace

TEST_CASE("circle over F_3 Z_3") {
  auto f3 = FieldDescriptor::prime_field(3);
  auto ps = compute_pages(circle_mod(3, f3), 3, 2);
  const PageTable& e1 = ps.page(1);
  for (std::size_t s = 0; s <= 2; ++s)
    for (std::size_t q = 0; q <= 1; ++q) CHECK(e1.dim(s, q) == 1);
  CHECK(e1.d_rank(0, 1) == 1);
  const PageTable& last = ps.pages.back();
  CHECK(last.row_total(1) == 1);
  CHECK(last.dim(2, 1) == 1);
  CHECK(last.dim(0, 0) == 1);
}

TEST_CASE("wedge of two circles over Q Z^2") {
  auto q = FieldDescriptor::rationals();
  auto c = presentation_complex(make({"x1", "x2"}, {}), {GroupDescriptor::free_abelian(2), {{1, 0}, {0, 1}}}, q);
  auto ps = compute_pages(c, 1, 3);
  for (std::size_t s = 0; s <= 3; ++s) {
    CHECK(ps.page(1).dim(s, 1) == 2 * (s + 1));
    CHECK(ps.page(1).dim(s, 0) == s + 1);
  }
}

TEST_CASE("E-infinity for G = Z agrees with the Smith normal form route") {
  for (auto f : {FieldDescriptor::rationals(), FieldDescriptor::prime_field(2), FieldDescriptor::prime_field(3)}) {
    for (const auto& c : {zxf2(f), trefoil(f)}) {
      const PageTable einf = einf_window(c, 4);
      for (std::size_t q = 0; q <= c.top_degree(); ++q) {
        const GrModule gr = einf_gr_module(homology_decomposition(c, q));
        for (std::size_t s = 0; s <= 4; ++s) CHECK(einf.dim(s, q) == gr.dim(s));
      }
    }
  }
  // Degree-1 row for the Z x F_2 example over Q: the (1 + t) summand is invisible.
  const PageTable e = einf_window(zxf2(FieldDescriptor::rationals()), 3);
  CHECK(e.dim(0, 1) == 2);
  CHECK(e.dim(1, 1) == 0);
}

TEST_CASE("window stability") {
  auto q = FieldDescriptor::rationals();
  for (const auto& c : {torus2(q), zxf2(q), trefoil(q), circle_mod(4, FieldDescriptor::prime_field(2))}) {
    auto small = compute_pages(c, 2, 2), large = compute_pages(c, 2, 3);
    for (std::size_t r = 1; r <= 2; ++r) {
      CHECK(small.page(r).same_dims(large.page(r)));
      for (std::size_t s = 0; s <= 2; ++s)
        for (std::size_t k = 0; k <= c.top_degree(); ++k)
          CHECK(small.page(r).d_rank(s, k) == large.page(r).d_rank(s, k));
    }
  }
}

TEST_CASE("d1 from the pages matches the closed form") {
  auto q = FieldDescriptor::rationals();
  for (const auto& c : {torus2(q), zxf2(q), trefoil(q), zxf2(FieldDescriptor::prime_field(2)),
                        circle_mod(3, FieldDescriptor::prime_field(3))}) {
    const auto closed = d1_closed_form(c);
    const auto ps = compute_pages(c, 1, 1);
    for (std::size_t k = 1; k <= c.top_degree(); ++k) {
      const FMatrix m = d1_from_pages(c, 0, k);
      CHECK(m == closed[k]);
      CHECK(rank_exact(m) == ps.page(1).d_rank(0, k));
      CHECK(rank_exact(d1_from_pages(c, 1, k)) == ps.page(1).d_rank(1, k));
    }
  }
}

TEST_CASE("d1 of the torus is the cup product pairing") {
  auto q = FieldDescriptor::rationals();
  auto c = torus2(q);
  const FMatrix m = d1_closed_form(c)[2];
  // Columns: (x_a, e_a), (x_a, e_b), (x_b, e_a), (x_b, e_b).
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 4);
  CHECK(m(0, 0).is_zero());
  CHECK(m(0, 1).is_one());
  CHECK(m(0, 2) == -FieldElem::one(q));
  CHECK(m(0, 3).is_zero());
  // Degree 1: d1([e_a]) = x_a, d1([e_b]) = x_b.
  const FMatrix m1 = d1_closed_form(c)[1];
  CHECK(m1 == identity(2, q));
}

TEST_CASE("d1 is linear over gr for G = Z") {
  for (const auto& c : {zxf2(FieldDescriptor::rationals()), trefoil(FieldDescriptor::prime_field(5))})
    for (std::size_t k = 1; k <= c.top_degree(); ++k) {
      const FMatrix base = d1_from_pages(c, 0, k);
      for (std::size_t s = 1; s <= 3; ++s) CHECK(d1_from_pages(c, s, k) == base);
    }
}

TEST_CASE("Reznikov collapse") {
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto fp = FieldDescriptor::prime_field(p);
    auto res = reznikov_collapse(circle_mod(p, fp));
    CHECK(res.direct_homology == std::vector<std::size_t>{1, 1});
    CHECK(res.pages.pages.back().dim(p - 1, 1) == 1);
  }
  auto f2 = FieldDescriptor::prime_field(2);
  auto c = base_change(torus2(f2), GroupDescriptor::cyclic(4), {{1}, {2}});
  auto res = reznikov_collapse(c);
  CHECK(res.einf_totals == res.direct_homology);
  CHECK_THROWS_AS(reznikov_collapse(circle_mod(3, FieldDescriptor::prime_field(2))), InputError);
  CHECK_THROWS_AS(reznikov_collapse(circle_mod(6, FieldDescriptor::prime_field(2))), InputError);
}

TEST_CASE("Jordan block witness") {
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto fp = FieldDescriptor::prime_field(p);
    std::vector<EquivariantComplex> cases{
        circle_mod(p, fp),
        base_change(torus2(fp), GroupDescriptor::cyclic(p), {{1}, {0}}),
        base_change(torus2(fp), GroupDescriptor::cyclic(p), {{1}, {1}}),
        presentation_complex(make({"x", "y"}, {"xyxYXY"}), {GroupDescriptor::cyclic(p), {{1}, {1}}}, fp)};
    for (const auto& c : cases)
      for (std::size_t q = 0; q <= c.top_degree(); ++q) {
        auto w = jordan_block_witness(c, q);
        if (w.acyclic) CHECK(w.j2_kills);
      }
    auto w = jordan_block_witness(circle_mod(p, fp), 1);
    CHECK(w.acyclic);
  }
}

TEST_CASE("pages reject integer coefficients") {
  CHECK_THROWS_AS(compute_pages(torus2(FieldDescriptor::integers()), 1, 1), UnsupportedInput);
}
