#include <random>

#include "doctest.h"
#include "ess/complex.hpp"
#include "ess/errors.hpp"

using namespace ess;

namespace {

Presentation make(std::vector<std::string> gens, std::vector<std::string> rels) {
  Presentation p{std::move(gens), {}};
  for (const auto& r : rels) p.relators.push_back(parse_word(r, p.generators));
  return p;
}

GroupRingElem parse(const GroupDescriptor& g, const FieldDescriptor& f, const char* s) {
  return GroupRingElem::parse(g, f, s);
}

}  // namespace

TEST_CASE("word parsing") {
  std::vector<std::string> g{"a", "b"};
  CHECK(parse_word("abAB", g) == FreeWord{1, 2, -1, -2});
  CHECK(parse_word("(aB)^2", g) == FreeWord{1, -2, 1, -2});
  CHECK(parse_word("(ab)^-1", g) == FreeWord{-2, -1});
  CHECK(parse_word("a^3", g) == FreeWord{1, 1, 1});
  CHECK(word_to_string(parse_word("abAB", g), g) == "abAB");
  CHECK_THROWS_AS(parse_word("abQ", g), InputError);
  std::vector<std::string> x{"x1", "x2"};
  CHECK(parse_word("x1X2", x) == FreeWord{1, -2});
}

TEST_CASE("Fox derivatives of standard relators") {
  auto z = FieldDescriptor::integers();
  auto z2 = GroupDescriptor::free_abelian(2);
  Presentation torus = make({"a", "b"}, {"abAB"});
  Epimorphism nu{z2, {{1, 0}, {0, 1}}};
  CHECK(fox_image(fox_derivative(torus.relators[0], 0, 2), nu, z) == parse(z2, z, "1 - t2"));
  CHECK(fox_image(fox_derivative(torus.relators[0], 1, 2), nu, z) == parse(z2, z, "t1 - 1"));

  auto g = GroupDescriptor::free_abelian(1);
  Presentation trefoil = make({"x", "y"}, {"xyxYXY"});
  Epimorphism ab{g, {{1}, {1}}};
  CHECK(fox_image(fox_derivative(trefoil.relators[0], 0, 2), ab, z) == parse(g, z, "t^2 - t + 1"));
  CHECK(fox_image(fox_derivative(trefoil.relators[0], 1, 2), ab, z) == parse(g, z, "-t^2 + t - 1"));
  CHECK_THROWS_AS(fox_derivative(trefoil.relators[0], 2, 2), InputError);
}

TEST_CASE("fundamental formula of Fox calculus on random words") {
  std::mt19937 rng(17);
  auto z = FieldDescriptor::integers();
  auto z2 = GroupDescriptor::free_abelian(2);
  std::uniform_int_distribution<int> letter(1, 3), sign(0, 1), len(0, 12), img(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    FreeWord w(static_cast<std::size_t>(len(rng)));
    for (auto& l : w) l = sign(rng) ? letter(rng) : -letter(rng);
    Epimorphism nu{z2, {}};
    for (int i = 0; i < 3; ++i) nu.images.push_back({img(rng), img(rng)});
    GroupRingElem lhs(z2, z);
    for (std::size_t i = 0; i < 3; ++i)
      lhs += fox_image(fox_derivative(w, i, 3), nu, z) *
             (word_image({static_cast<int>(i) + 1}, nu, z) - GroupRingElem::one(z2, z));
    CHECK(lhs == word_image(w, nu, z) - GroupRingElem::one(z2, z));
  }
}

TEST_CASE("presentation complexes") {
  auto q = FieldDescriptor::rationals();
  auto z2 = GroupDescriptor::free_abelian(2);
  auto torus = presentation_complex(make({"a", "b"}, {"abAB"}), {z2, {{1, 0}, {0, 1}}}, q);
  CHECK(torus.dims() == std::vector<std::size_t>{1, 2, 1});
  CHECK(betti_numbers(torus) == std::vector<std::size_t>{1, 2, 1});
  CHECK(is_minimal(torus));
  auto wedge = presentation_complex(make({"x1", "x2"}, {}), {z2, {{1, 0}, {0, 1}}}, q);
  CHECK(betti_numbers(wedge) == std::vector<std::size_t>{1, 2});
  // Relator not killed by the map.
  CHECK_THROWS_AS(presentation_complex(make({"a", "b"}, {"ab"}), {z2, {{1, 0}, {0, 1}}}, q), InputError);
  // Not surjective.
  CHECK_THROWS_AS(presentation_complex(make({"a", "b"}, {"abAB"}), {z2, {{2, 0}, {0, 1}}}, q), InputError);
  auto c4 = GroupDescriptor::cyclic(4);
  CHECK_THROWS_AS(presentation_complex(make({"a"}, {}), {c4, {{2}}}, q), InputError);
}

TEST_CASE("Betti numbers depend on the coefficient field") {
  auto z = FieldDescriptor::integers();
  auto g = GroupDescriptor::free_abelian(1);
  std::vector<GRMatrix> bds;
  for (const char* e : {"t - 1", "0", "1 + t"}) bds.push_back(GRMatrix(1, 1, parse(g, z, e)));
  auto c = complex_from_matrices(z, g, {1, 1, 1, 1}, bds);
  CHECK(betti_numbers_over(c, FieldDescriptor::prime_field(2)) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(betti_numbers_over(c, FieldDescriptor::rationals()) == std::vector<std::size_t>{1, 1, 0, 0});
  CHECK(betti_numbers(change_field(c, FieldDescriptor::prime_field(3))) ==
        std::vector<std::size_t>{1, 1, 0, 0});
  CHECK(!is_minimal(c));
  CHECK(minimality_violations(c).size() == 1);
}

TEST_CASE("composition is validated") {
  auto q = FieldDescriptor::rationals();
  auto g = GroupDescriptor::free_abelian(1);
  std::vector<GRMatrix> bds{GRMatrix(1, 1, parse(g, q, "t - 1")), GRMatrix(1, 1, parse(g, q, "1"))};
  try {
    complex_from_matrices(q, g, {1, 1, 1}, bds);
    FAIL("expected a composition error");
  } catch (const CompositionError& e) {
    CHECK(e.degree() == 2);
  }
  std::vector<GRMatrix> bad{GRMatrix(1, 1, parse(g, q, "t"))};
  CHECK_THROWS_AS(complex_from_matrices(q, g, {1, 1}, bad), InputError);
  CHECK_THROWS_AS(complex_from_matrices(q, g, {2, 1}, bad), InputError);
}

TEST_CASE("base change is functorial") {
  auto q = FieldDescriptor::rationals();
  auto z3 = GroupDescriptor::free_abelian(3), z2 = GroupDescriptor::free_abelian(2),
       z1 = GroupDescriptor::free_abelian(1);
  auto c = presentation_complex(make({"a", "b", "c"}, {"abAB", "acAC", "bcBC"}),
                                {z3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, q);
  auto direct = base_change(c, z1, {{2}, {1}, {1}});
  auto via = base_change(base_change(c, z2, {{1, 1}, {0, 1}, {1, 0}}), z1, {{1}, {1}});
  for (std::size_t k = 1; k <= 2; ++k) CHECK(direct.boundary(k) == via.boundary(k));
  CHECK(betti_numbers(direct) == betti_numbers(c));
  auto c2 = GroupDescriptor::cyclic(2);
  auto mod2 = base_change(direct, c2, {{1}});
  CHECK(mod2.group() == c2);
  CHECK_THROWS_AS(base_change(c, z1, {{2}, {2}, {0}}), InputError);
  CHECK_THROWS_AS(base_change(mod2, z1, {{1}}), InputError);
}
