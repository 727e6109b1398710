#include <random>

#include "doctest.h"
#include "ess/aomoto.hpp"
#include "ess/errors.hpp"
#include "ess/modz.hpp"
#include "ess/pages.hpp"
#include "ess/twisted.hpp"

using namespace ess;

namespace {

Presentation make(std::vector<std::string> gens, std::vector<std::string> rels) {
  Presentation p{std::move(gens), {}};
  for (const auto& r : rels) p.relators.push_back(parse_word(r, p.generators));
  return p;
}

const GroupDescriptor kZ = GroupDescriptor::free_abelian(1);
const FieldDescriptor kInt = FieldDescriptor::integers();

std::vector<Exponent> unit_images(std::size_t n) {
  std::vector<Exponent> out(n, Exponent(n, 0));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

EquivariantComplex knot(const char* relator) {
  return presentation_complex(make({"x", "y"}, {relator}), {kZ, {{1}, {1}}}, kInt);
}

EquivariantComplex torus3() {
  auto g = GroupDescriptor::free_abelian(3);
  auto c = presentation_complex(make({"a", "b", "c"}, {"abAB", "acAC", "bcBC"}), {g, unit_images(3)}, kInt);
  GRMatrix top(1, 3, GroupRingElem(g, kInt));
  top(0, 0) = GroupRingElem::parse(g, kInt, "t3 - 1");
  top(0, 1) = GroupRingElem::parse(g, kInt, "1 - t2");
  top(0, 2) = GroupRingElem::parse(g, kInt, "t1 - 1");
  return attach_cells(c, top, top);
}

EquivariantComplex lyndon(std::uint64_t d) {
  auto g = GroupDescriptor::free_abelian(2);
  GroupRingElem phi(g, kInt);
  const IntPoly cyc = cyclotomic_polynomial(d);
  for (int k = 0; k <= cyc.degree(); ++k)
    phi.add_term({k, 0}, FieldElem::integer(kInt, cyc.coeffs()[static_cast<std::size_t>(k)]));
  GRMatrix d1(2, 1, GroupRingElem(g, kInt)), d2(1, 2, GroupRingElem(g, kInt));
  d1(0, 0) = GroupRingElem::x(g, kInt, 0);
  d1(1, 0) = GroupRingElem::x(g, kInt, 1);
  d2(0, 0) = phi * GroupRingElem::x(g, kInt, 1);
  d2(0, 1) = -(phi * GroupRingElem::x(g, kInt, 0));
  return complex_from_matrices(kInt, g, {1, 2, 1}, {d1, d2});
}

EquivariantComplex torsfree() {
  std::vector<GRMatrix> bds;
  for (const char* e : {"t - 1", "0", "1 + t"}) bds.push_back(GRMatrix(1, 1, GroupRingElem::parse(kZ, kInt, e)));
  return complex_from_matrices(kInt, kZ, {1, 1, 1, 1}, bds);
}

EquivariantComplex diagonal(const EquivariantComplex& c) {
  return base_change(c, kZ, std::vector<Exponent>(c.group().rank(), Exponent{1}));
}

long long euler(const std::vector<std::size_t>& v) {
  long long s = 0;
  for (std::size_t q = 0; q < v.size(); ++q) s += (q % 2 ? -1 : 1) * static_cast<long long>(v[q]);
  return s;
}

}  // namespace

TEST_CASE("Aomoto Betti numbers of tori vanish") {
  auto t2 = presentation_complex(make({"a", "b"}, {"abAB"}), {GroupDescriptor::free_abelian(2), unit_images(2)}, kInt);
  for (auto k : {FieldDescriptor::rationals(), FieldDescriptor::prime_field(2), FieldDescriptor::prime_field(3)}) {
    CHECK(aomoto_betti(diagonal(t2), k).beta == std::vector<std::size_t>{0, 0, 0});
    CHECK(aomoto_betti(diagonal(torus3()), k).beta == std::vector<std::size_t>{0, 0, 0, 0});
    CHECK(aomoto_betti_character(torus3(), {2, -1, 5}, k).beta == std::vector<std::size_t>{0, 0, 0, 0});
  }
  // chi divisible by the characteristic acts as zero.
  CHECK(aomoto_betti_character(t2, {2, 4}, FieldDescriptor::prime_field(2)).beta ==
        std::vector<std::size_t>{1, 2, 1});
  CHECK(aomoto_betti_character(t2, {0, 0}, FieldDescriptor::rationals()).beta == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("Aomoto Betti numbers are read on any column s >= 1 and keep the Euler characteristic") {
  for (const auto& c : {diagonal(torus3()), knot("xyxYXY"), diagonal(lyndon(6)), torsfree()}) {
    for (auto k : {FieldDescriptor::rationals(), FieldDescriptor::prime_field(2), FieldDescriptor::prime_field(3)}) {
      const auto kc = change_field(c, k);
      const auto ps = compute_pages(kc, 2, 3);
      const auto beta = aomoto_betti(c, k).beta;
      for (std::size_t q = 0; q <= c.top_degree(); ++q)
        for (std::size_t s = 1; s <= 3; ++s) CHECK(ps.page(2).dim(s, q) == beta[q]);
      const auto b = betti_numbers(kc);
      CHECK(euler(beta) == euler(b));
      for (std::size_t q = 0; q < b.size(); ++q) CHECK(beta[q] <= b[q]);
    }
  }
}

TEST_CASE("universal Aomoto complex of the torus") {
  auto t2 = presentation_complex(make({"a", "b"}, {"abAB"}), {GroupDescriptor::free_abelian(2), unit_images(2)}, kInt);
  auto u = universal_aomoto(t2);
  REQUIRE(u.differentials.size() == 2);
  CHECK(u.differentials[0](0, 0).to_string() == "e1");
  CHECK(u.differentials[0](0, 1).to_string() == "e2");
  CHECK(u.differentials[1](0, 0).to_string() == "-e2");
  CHECK(u.differentials[1](1, 0).to_string() == "e1");
  CHECK(u.squares_to_zero());
  auto q = FieldDescriptor::rationals();
  CHECK(aomoto_specialize(u, {FieldElem(q), FieldElem(q)}).beta == std::vector<std::size_t>{1, 2, 1});
  CHECK(aomoto_specialize(u, {FieldElem::one(q), FieldElem::one(q)}).beta == std::vector<std::size_t>{0, 0, 0});
  CHECK_THROWS_AS(aomoto_specialize(u, {FieldElem::one(q)}), InputError);
  CHECK(universal_aomoto(torus3()).squares_to_zero());
  CHECK_THROWS_AS(universal_aomoto(torsfree()), InputError);
}

TEST_CASE("universal and E^2 routes agree on random directions") {
  std::mt19937 rng(44);
  std::uniform_int_distribution<int> v(-4, 4);
  auto q = FieldDescriptor::rationals();
  for (const auto& c : {torus3(), lyndon(6), lyndon(4)}) {
    auto u = universal_aomoto(c);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::int64_t> chi;
      std::vector<FieldElem> z;
      for (std::size_t i = 0; i < c.group().rank(); ++i) {
        chi.push_back(v(rng));
        z.push_back(FieldElem::integer(q, chi.back()));
      }
      CHECK(aomoto_specialize(u, z).beta == aomoto_betti_character(c, chi, q).beta);
    }
  }
}

TEST_CASE("Lyndon-type complexes beat the Aomoto bound away from prime powers") {
  auto q = FieldDescriptor::rationals();
  auto c = lyndon(6);
  CHECK(twisted_betti(diagonal(c), 6)[1] == 1);
  CHECK(aomoto_specialize(universal_aomoto(c), {FieldElem::one(q), FieldElem::one(q)}).beta[1] == 0);
  CHECK(aomoto_betti(diagonal(c), q).beta[1] == 0);
}

TEST_CASE("knots") {
  auto q = FieldDescriptor::rationals();
  auto trefoil = knot("xyxYXY"), figure8 = knot("XyxYxyXYxY");
  CHECK(alexander_polynomial(trefoil).poly.to_string() == "t^2 - t + 1");
  CHECK(alexander_polynomial(figure8).poly.to_string() == "t^2 - 3*t + 1");
  CHECK(twisted_betti(trefoil, 6)[1] == 1);
  for (std::uint64_t d : {2u, 3u, 4u, 5u}) CHECK(twisted_betti(trefoil, d)[1] == 0);
  for (std::uint64_t d = 2; d <= 12; ++d) {
    CHECK(twisted_betti(figure8, d)[1] == 0);
    // Root criterion: b_1 != 0 iff Phi_d divides Delta.
    auto delta = alexander_polynomial(trefoil).poly.converted(q);
    auto phi = LaurentPoly::from_int(q, cyclotomic_polynomial(d));
    CHECK((twisted_betti(trefoil, d)[1] != 0) == phi.divides(delta));
  }
  auto sum = presentation_complex(make({"x", "y", "z"}, {"xyxYXY", "yzyZYZ"}), {kZ, {{1}, {1}, {1}}}, kInt);
  auto d = alexander_polynomial(trefoil).poly;
  CHECK(alexander_polynomial(sum).poly == d * d);
  auto unknot = presentation_complex(make({"x"}, {}), {kZ, {{1}}}, kInt);
  CHECK(alexander_polynomial(unknot).poly.to_string() == "1");
  CHECK(!alexander_polynomial(unknot).notice.empty());
  // Over a field the same polynomial comes out monic.
  auto qtrefoil = presentation_complex(make({"x", "y"}, {"xyxYXY"}), {kZ, {{1}, {1}}}, q);
  CHECK(alexander_polynomial(qtrefoil).poly.to_string() == "t^2 - t + 1");
}

TEST_CASE("twisted Betti numbers: Galois invariance and character reduction") {
  auto trefoil = knot("xyxYXY");
  for (std::uint64_t d : {5u, 6u, 8u, 12u})
    for (std::int64_t a = 1; a < static_cast<std::int64_t>(d); ++a)
      if (std::gcd<std::int64_t>(a, static_cast<std::int64_t>(d)) == 1)
        CHECK(twisted_betti(trefoil, d, a) == twisted_betti(trefoil, d));
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> v(-3, 3), dd(1, 12);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::int64_t> chi{v(rng), v(rng), v(rng)};
    const auto d = static_cast<std::uint64_t>(dd(rng));
    CHECK(twisted_betti_character(torus3(), d, chi) == twisted_betti_direct(torus3(), d, chi));
    auto zx = presentation_complex(make({"a", "b", "c"}, {"abAB", "acAC"}),
                                   {GroupDescriptor::free_abelian(3), unit_images(3)}, kInt);
    CHECK(twisted_betti_character(zx, d, chi) == twisted_betti_direct(zx, d, chi));
  }
  CHECK(twisted_betti(torsfree(), 2)[3] == 1);
  CHECK(twisted_betti(torsfree(), 1) == std::vector<std::size_t>{1, 1, 0, 0});
}

TEST_CASE("bounds reports") {
  for (std::uint64_t p : {3u, 5u}) {
    std::string rel = "(xyXY)^" + std::to_string(p);
    auto c = knot(rel.c_str());
    auto rep = bounds_report(c, p, 1);
    CHECK(rep.twisted[1] == 0);
    CHECK(rep.beta[1] == 1);
    CHECK(rep.mod_p[1] == 2);
    CHECK(rep.bettibound);
  }
  auto rep = bounds_report(torsfree(), 2, 1);
  CHECK(rep.twisted[3] == 1);
  CHECK(rep.beta[3] == 0);
  CHECK(rep.torsion_free[2] == false);
  CHECK(!rep.cohobound_applicable);
  CHECK(!rep.cohobound);
  CHECK(rep.bettibound);
  CHECK_THROWS_AS(bounds_report(torsfree(), 4, 1), InputError);
}

TEST_CASE("monodromy reports") {
  auto q = FieldDescriptor::rationals();
  auto t2 = presentation_complex(make({"a", "b"}, {"abAB"}), {kZ, {{1}, {1}}}, q);
  auto rep = monodromy_report(t2, 2);
  CHECK(rep.verdicts == std::vector<bool>{true, true, true});
  auto wedge = presentation_complex(make({"a", "b"}, {}), {kZ, {{1}, {1}}}, q);
  auto w = monodromy_report(wedge, 1);
  CHECK(w.degrees[1].decomposition.free_rank == 1);
  CHECK(w.degrees[1].beta == 1);
  CHECK(w.verdicts == std::vector<bool>{true, false});
  auto zx = presentation_complex(make({"a", "b", "c"}, {"abAB", "acAC"}), {kZ, {{2}, {1}, {1}}}, q);
  // H_1 = (Lambda/(t-1))^2 + Lambda/(t+1): blocks of size 1 only.
  CHECK(monodromy_report(zx, 1).verdicts.back() == true);
  CHECK(monodromy_report(zx, 1).degrees[1].beta == 0);
  auto zx2 = change_field(zx, FieldDescriptor::prime_field(2));
  CHECK(monodromy_report(zx2, 1).verdicts.back() == false);
  CHECK(monodromy_report(torsfree(), 3).verdicts.size() == 4);
}
