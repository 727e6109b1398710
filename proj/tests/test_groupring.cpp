#include <random>

#include "doctest.h"
#include "ess/errors.hpp"
#include "ess/groupring.hpp"

using namespace ess;

namespace {

GroupRingElem parse(const GroupDescriptor& g, const FieldDescriptor& f, const char* s) {
  return GroupRingElem::parse(g, f, s);
}

GroupRingElem random_elem(std::mt19937& rng, const GroupDescriptor& g, const FieldDescriptor& f) {
  std::uniform_int_distribution<int> c(-2, 2), e(-2, 2);
  GroupRingElem a(g, f);
  for (int k = 0; k < 3; ++k) {
    Exponent ex(g.arity());
    for (auto& v : ex) v = e(rng);
    a.add_term(ex, FieldElem::integer(f, c(rng)));
  }
  return a;
}

// Independent oracle for dim J^s/J^{s+1}: span the products of s factors
// (t_i - 1) times group elements inside a box of exponents, modulo J^{s+1},
// measured through ranks of explicit coefficient vectors in the truncated
// polynomial ring k[x]/(x)^{s+1}. For s <= 4 and n = 2 this is monomial
// counting.
std::size_t monomial_count(std::size_t n, std::size_t s) {
  if (n == 1) return 1;
  std::size_t total = 0;
  for (std::size_t j = 0; j <= s; ++j) total += monomial_count(n - 1, s - j);
  return total;
}

}  // namespace

TEST_CASE("parsing and printing") {
  auto q = FieldDescriptor::rationals();
  auto z2 = GroupDescriptor::free_abelian(2);
  CHECK(parse(z2, q, "t1^-2*t2^3").to_string() == "t1^-2*t2^3");
  auto z = GroupDescriptor::free_abelian(1);
  CHECK(parse(z, q, "-3*t^2").to_string() == "-3*t^2");
  CHECK(parse(z, q, "(t-1)^2").to_string() == "t^2 - 2*t + 1");
  CHECK(parse(z, q, "t1 + 1/2").to_string() == "t + 1/2");
  auto c4 = GroupDescriptor::cyclic(4);
  CHECK(parse(c4, q, "t^5").to_string() == "t");
  CHECK(parse(c4, q, "t^-1").to_string() == "t^3");
  CHECK_THROWS_AS(parse(z2, q, "t"), InputError);
  CHECK_THROWS_AS(parse(z, q, "t^-1*(1+t)^-1"), InputError);
  CHECK_THROWS_AS(parse(z, q, "2*)"), InputError);
}

TEST_CASE("augmentation") {
  auto q = FieldDescriptor::rationals();
  auto z = GroupDescriptor::free_abelian(1);
  CHECK(augmentation(parse(z, q, "t^7")).is_one());
  CHECK(augmentation(parse(z, q, "t^2 - t")).is_zero());
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto fp = FieldDescriptor::prime_field(p);
    auto g = GroupDescriptor::cyclic(p);
    GroupRingElem n(g, fp);
    for (std::uint64_t j = 0; j < p; ++j) n.add_term({static_cast<std::int64_t>(j)}, FieldElem::one(fp));
    CHECK(augmentation(n).is_zero());
  }
  std::mt19937 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto a = random_elem(rng, z, q), b = random_elem(rng, z, q);
    CHECK(augmentation(a * b) == augmentation(a) * augmentation(b));
    CHECK(augmentation(a + b) == augmentation(a) + augmentation(b));
  }
}

TEST_CASE("J-adic valuation") {
  auto q = FieldDescriptor::rationals();
  auto z = GroupDescriptor::free_abelian(1);
  CHECK(j_valuation(parse(z, q, "(t-1)^2")) == 2u);
  CHECK(j_valuation(parse(z, q, "t^-3 - 1")) == 1u);
  CHECK(!j_valuation(GroupRingElem(z, q)).has_value());
  auto f2 = FieldDescriptor::prime_field(2);
  CHECK(j_valuation(parse(GroupDescriptor::cyclic(4), f2, "t^2 - 1")) == 2u);
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto fp = FieldDescriptor::prime_field(p);
    auto g = GroupDescriptor::cyclic(p);
    GroupRingElem n(g, fp);
    for (std::uint64_t j = 0; j < p; ++j) n.add_term({static_cast<std::int64_t>(j)}, FieldElem::one(fp));
    // Oracle: over F_p, 1 + t + ... + t^{p-1} = (t - 1)^{p-1}.
    CHECK(n == GroupRingElem::x(g, fp, 0).pow(p - 1));
    CHECK(j_valuation(n) == p - 1);
  }
  // Characteristic prime to m: J = J^2, so J-elements have infinite valuation.
  auto g3 = GroupDescriptor::cyclic(3);
  CHECK(!j_valuation(parse(g3, q, "t - 1")).has_value());
  CHECK(j_valuation(parse(g3, q, "t")) == 0u);

  std::mt19937 rng(9);
  auto z2 = GroupDescriptor::free_abelian(2);
  for (int i = 0; i < 60; ++i) {
    auto a = random_elem(rng, z2, q) * GroupRingElem::x(z2, q, i % 2).pow(i % 3);
    auto b = random_elem(rng, z2, q);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(*j_valuation(a * b) == *j_valuation(a) + *j_valuation(b));
    CHECK((augmentation(a).is_zero() == (*j_valuation(a) > 0)));
  }
  auto f3 = FieldDescriptor::prime_field(3);
  auto c9 = GroupDescriptor::cyclic(9);
  for (int i = 0; i < 40; ++i) {
    auto a = random_elem(rng, c9, f3), b = random_elem(rng, c9, f3);
    if (a.is_zero() || b.is_zero() || (a * b).is_zero()) continue;
    CHECK(*j_valuation(a * b) >= *j_valuation(a) + *j_valuation(b));
  }
}

TEST_CASE("graded pieces") {
  auto q = FieldDescriptor::rationals();
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t s = 0; s <= 5; ++s)
      CHECK(gr_dimension(GroupDescriptor::free_abelian(n), q, s) == monomial_count(n, s));
  for (std::size_t s = 0; s <= 4; ++s) {
    CHECK(gr_dimension(GroupDescriptor::free_abelian(2), q, s) == s + 1);
    CHECK(gr_piece(GroupDescriptor::free_abelian(2), q, s).basis.size() == s + 1);
  }
  for (std::uint64_t p : {2u, 3u, 5u}) {
    auto fp = FieldDescriptor::prime_field(p);
    auto g = GroupDescriptor::cyclic(p);
    CHECK(gr_dimension(g, fp, p - 1) == 1);
    CHECK(gr_dimension(g, fp, p) == 0);
    CHECK(gr_dimension(g, fp, 0) == 1);
  }
  CHECK(gr_dimension(GroupDescriptor::cyclic(9), FieldDescriptor::prime_field(3), 8) == 1);
  CHECK(gr_dimension(GroupDescriptor::cyclic(9), FieldDescriptor::prime_field(3), 9) == 0);
  CHECK(gr_dimension(GroupDescriptor::cyclic(5), q, 1) == 0);
  CHECK(gr_dimension(GroupDescriptor::cyclic(6), FieldDescriptor::prime_field(2), 1) == 1);
  CHECK(gr_dimension(GroupDescriptor::cyclic(6), FieldDescriptor::prime_field(2), 2) == 0);
}

TEST_CASE("filtration model") {
  auto q = FieldDescriptor::rationals();
  auto z2 = GroupDescriptor::free_abelian(2);
  FiltrationModel model(z2, q, 4);
  CHECK(model.size() == 10);
  // Coordinates of t1^-1 - 1 = -x1 + x1^2 - x1^3 + ...
  FVector v = model.coordinates(parse(z2, q, "t1^-1 - 1"));
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) {
      ++nonzero;
      CHECK(model.degree(i) >= 1);
    }
  CHECK(nonzero == 3);
  // Multiplication matrix is consistent with coordinates of products.
  auto a = parse(z2, q, "t1*t2^-1 + 2"), b = parse(z2, q, "t2^2 - t1");
  FVector lhs = row_times(model.coordinates(b), model.multiplication_matrix(a), q);
  CHECK(lhs == model.coordinates(a * b));

  auto f3 = FieldDescriptor::prime_field(3);
  auto c9 = GroupDescriptor::cyclic(9);
  FiltrationModel cyc(c9, f3, 0);
  CHECK(cyc.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(cyc.degree(i) == i);
  auto c = parse(c9, f3, "t^4 + 2*t"), d = parse(c9, f3, "t^8 - t^2");
  CHECK(row_times(cyc.coordinates(d), cyc.multiplication_matrix(c), f3) == cyc.coordinates(c * d));
}

TEST_CASE("linear part") {
  auto q = FieldDescriptor::rationals();
  auto z2 = GroupDescriptor::free_abelian(2);
  auto lp = linear_part(parse(z2, q, "t1^2*t2 - 3*t2^-1"));
  CHECK(lp[0] == FieldElem::integer(q, 2));
  CHECK(lp[1] == FieldElem::integer(q, 4));
}
