#include "ess/twisted.hpp"

#include <numeric>

#include "ess/aomoto.hpp"
#include "ess/errors.hpp"
#include "ess/modz.hpp"

namespace ess {

namespace {

bool rational_kind(const FieldDescriptor& f) {
  return f.kind() == FieldKind::Integers || f.kind() == FieldKind::Rationals;
}

GRMatrix characteristic_zero_boundary(const EquivariantComplex& c, std::size_t q) {
  if (c.has_integral_shadow()) return c.integral_boundary(q);
  if (!rational_kind(c.field()))
    throw InputError("twisted Betti numbers need Z or Q coefficients, got " + c.field().to_string());
  return c.boundary(q);
}

std::vector<std::size_t> betti_from_ranks(const EquivariantComplex& c,
                                          const std::vector<std::int64_t>& chi, std::uint64_t d) {
  const std::size_t top = c.top_degree();
  std::vector<std::size_t> ranks(top + 2, 0);
  for (std::size_t q = 1; q <= top; ++q)
    ranks[q] = rank_exact(evaluate_at_root(characteristic_zero_boundary(c, q), d, chi));
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q <= top; ++q) out.push_back(c.dim(q) - ranks[q] - ranks[q + 1]);
  return out;
}

}  // namespace

FMatrix evaluate_at_root(const GRMatrix& m, std::uint64_t d, const std::vector<std::int64_t>& chi) {
  if (d == 0) throw InputError("the order d must be at least 1");
  const FieldDescriptor f = FieldDescriptor::cyclotomic(d);
  FMatrix out = zeros(m.rows(), m.cols(), f);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      FieldElem v(f);
      for (const auto& [e, coeff] : m(i, j).terms()) {
        if (!rational_kind(coeff.field()))
          throw InputError("cannot evaluate " + coeff.field().to_string() + " coefficients at a root of unity");
        if (e.size() != chi.size()) throw InputError("character length does not match the group");
        long long k = 0;
        for (std::size_t x = 0; x < e.size(); ++x) k += static_cast<long long>(e[x] * chi[x]);
        v += convert_scalar(coeff, f) * FieldElem::zeta_power(f, k);
      }
      out(i, j) = v;
    }
  return out;
}

std::vector<std::size_t> twisted_betti(const EquivariantComplex& c, std::uint64_t d, std::int64_t a) {
  if (!(c.group().is_free_abelian() && c.group().rank() == 1))
    throw InputError("twisted Betti numbers need G = Z; base-change " + c.group().to_string() + " first");
  return betti_from_ranks(c, {a}, d);
}

std::vector<std::size_t> twisted_betti_direct(const EquivariantComplex& c, std::uint64_t d,
                                              const std::vector<std::int64_t>& chi) {
  if (!c.group().is_free_abelian() || chi.size() != c.group().rank())
    throw InputError("character does not match " + c.group().to_string());
  return betti_from_ranks(c, chi, d);
}

std::vector<std::size_t> twisted_betti_character(const EquivariantComplex& c, std::uint64_t d,
                                                 const std::vector<std::int64_t>& chi) {
  if (!c.group().is_free_abelian() || chi.size() != c.group().rank())
    throw InputError("character does not match " + c.group().to_string());
  std::int64_t m = 0;
  for (auto v : chi) m = std::gcd(m, v);
  if (m == 0) {
    // Trivial character: ordinary rational Betti numbers.
    if (c.has_integral_shadow()) return betti_numbers_over(c, FieldDescriptor::rationals());
    return betti_numbers(c);
  }
  std::vector<Exponent> images;
  for (auto v : chi) images.push_back({v / m});
  const std::uint64_t reduced = d / std::gcd<std::uint64_t>(d, static_cast<std::uint64_t>(m));
  return twisted_betti(base_change(c, GroupDescriptor::free_abelian(1), images), reduced);
}

// --------------------------------------------------------- Alexander

LaurentPoly laurent_determinant(const Matrix<LaurentPoly>& input, const FieldDescriptor& f) {
  const std::size_t n = input.rows();
  if (n != input.cols()) throw InputError("determinant of a non-square matrix");
  const LaurentPoly one = LaurentPoly::constant(FieldElem::one(f));
  if (n == 0) return one;
  Matrix<LaurentPoly> a = input;
  LaurentPoly prev = one;
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k).is_zero()) ++piv;
    if (piv == n) return LaurentPoly(f);
    if (piv != k) {
      a.swap_rows(piv, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)).exact_div(prev);
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

mpz_class content(const LaurentPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p.coeffs()) g = gcd(g, c.rational().get_num());
  return g;
}

// gcd over Z[t, t^-1]: gcd of contents times the primitive part of the
// gcd over Q (Gauss's lemma).
LaurentPoly integer_gcd(const std::vector<LaurentPoly>& polys) {
  const FieldDescriptor z = FieldDescriptor::integers(), q = FieldDescriptor::rationals();
  mpz_class cont = 0;
  LaurentPoly g(q);
  for (const auto& p : polys) {
    cont = gcd(cont, content(p));
    g = laurent_gcd(g, p.converted(q));
  }
  if (g.is_zero()) return LaurentPoly(z);
  mpz_class den = 1;
  for (const auto& c : g.coeffs()) den = lcm(den, c.rational().get_den());
  std::vector<FieldElem> ints;
  for (const auto& c : g.coeffs()) ints.push_back(FieldElem::integer(z, mpz_class(c.rational() * den)));
  LaurentPoly prim(z, g.low(), ints);
  const mpz_class pc = content(prim);
  std::vector<FieldElem> scaled;
  for (const auto& c : prim.coeffs())
    scaled.push_back(FieldElem::integer(z, mpz_class(c.rational().get_num() / pc * cont)));
  return LaurentPoly(z, prim.low(), scaled).normalize().second;
}

}  // namespace

AlexanderResult alexander_polynomial(const EquivariantComplex& c) {
  if (!(c.group().is_free_abelian() && c.group().rank() == 1))
    throw InputError("the Alexander polynomial needs G = Z");
  const FieldDescriptor f = c.has_integral_shadow() ? FieldDescriptor::integers() : c.field();
  AlexanderResult out;
  if (c.top_degree() < 2 || c.dim(2) == 0) {
    out.poly = LaurentPoly::constant(FieldElem::one(f));
    out.notice = "no 2-cells: empty set of minors, polynomial taken as 1";
    return out;
  }
  const GRMatrix m = c.has_integral_shadow() ? c.integral_boundary(2) : c.boundary(2);
  Matrix<LaurentPoly> lm = to_laurent_matrix(m, f);
  const std::size_t n = m.cols(), k = n - 1;
  std::vector<LaurentPoly> minors;
  for (const auto& rows : subsets(m.rows(), k))
    for (const auto& cols : subsets(n, k)) {
      Matrix<LaurentPoly> sub = k == 0 ? Matrix<LaurentPoly>::shape(0, 0) : Matrix<LaurentPoly>(k, k, LaurentPoly(f));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = lm(rows[i], cols[j]);
      LaurentPoly det = laurent_determinant(sub, f);
      if (!det.is_zero()) minors.push_back(det);
    }
  if (f.kind() == FieldKind::Integers) {
    out.poly = integer_gcd(minors);
  } else {
    LaurentPoly g(f);
    for (const auto& p : minors) g = laurent_gcd(g, p);
    out.poly = g;
  }
  return out;
}

// ------------------------------------------------------------ bounds

BoundsReport bounds_report(const EquivariantComplex& c, std::uint64_t p, std::uint64_t r) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (r == 0) throw InputError("the exponent r must be at least 1");
  if (!c.has_integral_shadow()) throw UnsupportedInput("the bounds report needs integer boundary data");
  std::uint64_t order = 1;
  for (std::uint64_t i = 0; i < r; ++i) order *= p;
  const FieldDescriptor fp = FieldDescriptor::prime_field(p);
  BoundsReport rep;
  rep.p = p;
  rep.r = r;
  rep.twisted = twisted_betti(c, order);
  rep.mod_p = betti_numbers_over(c, fp);
  rep.beta = aomoto_betti(c, fp).beta;
  rep.torsion_free = integral_torsion_check(c);
  rep.cohobound_applicable = true;
  for (bool b : rep.torsion_free) rep.cohobound_applicable = rep.cohobound_applicable && b;
  for (std::size_t q = 0; q < rep.twisted.size(); ++q) {
    if (rep.twisted[q] > rep.mod_p[q]) rep.bettibound = false;
    if (rep.twisted[q] > rep.beta[q]) rep.cohobound = false;
    if (rep.beta[q] > rep.mod_p[q]) rep.aomoto_le_mod_p = false;
  }
  if (!rep.bettibound)
    throw CrossCheckFailure("b_q(X, nu/p^r) exceeds b_q(X, F_p) at a prime power order");
  if (!rep.aomoto_le_mod_p) throw CrossCheckFailure("an Aomoto Betti number exceeds b_q(X, F_p)");
  if (rep.cohobound_applicable && !rep.cohobound)
    throw CrossCheckFailure("b_q(X, nu/p^r) exceeds beta_q(X, nu_{F_p}) with torsion-free integral homology");
  return rep;
}

}  // namespace ess
