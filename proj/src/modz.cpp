#include "ess/modz.hpp"

#include <algorithm>

#include "ess/errors.hpp"

namespace ess {

SNFResult<LaurentPoly> laurent_snf(const LMatrix& a, const FieldDescriptor& f) {
  return smith_normal_form<LaurentTraits>(a, LaurentPoly(f), LaurentPoly::constant(FieldElem::one(f)));
}

SNFResult<mpz_class> integer_snf(const ZMatrix& a) {
  return smith_normal_form<IntegerTraits>(a, mpz_class(0), mpz_class(1));
}

LMatrix lmultiply(const LMatrix& a, const LMatrix& b, const FieldDescriptor& f) {
  return multiply(a, b, LaurentPoly(f));
}

LMatrix to_laurent_matrix(const GRMatrix& m, const FieldDescriptor& f) {
  if (m.rows() == 0 || m.cols() == 0) return LMatrix::shape(m.rows(), m.cols());
  LMatrix out(m.rows(), m.cols(), LaurentPoly(f));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_laurent().converted(f);
  return out;
}

std::pair<std::size_t, LaurentPoly> split_t_minus_1(const LaurentPoly& f) {
  if (f.is_zero()) throw InputError("cannot split the zero polynomial");
  const LaurentPoly x = LaurentPoly::t_minus_one(f.field());
  std::size_t e = 0;
  LaurentPoly g = f;
  while (x.divides(g)) {
    g = g.exact_div(x);
    ++e;
  }
  return {e, g.normalize().second};
}

namespace {

LMatrix laurent_identity(std::size_t n, const FieldDescriptor& f) {
  if (n == 0) return LMatrix::shape(0, 0);
  LMatrix m(n, n, LaurentPoly(f));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly::constant(FieldElem::one(f));
  return m;
}

}  // namespace

LaurentModuleDecomp homology_decomposition(const EquivariantComplex& c, std::size_t q) {
  if (!(c.group().is_free_abelian() && c.group().rank() == 1))
    throw InputError("homology decomposition needs G = Z, got " + c.group().to_string());
  const FieldDescriptor f =
      c.field().kind() == FieldKind::Integers ? FieldDescriptor::rationals() : c.field();
  LaurentModuleDecomp out;
  out.q = q;
  out.field = f;
  const std::size_t n = c.dim(q);
  if (n == 0) return out;

  // Cycles: rows r.. of U where U Mat(d_q) V = D.
  std::size_t r = 0;
  LMatrix uinv = laurent_identity(n, f);
  if (q >= 1 && q <= c.top_degree()) {
    auto s = laurent_snf(to_laurent_matrix(c.boundary(q), f), f);
    r = s.rank;
    uinv = s.Uinv;
  }
  // Boundaries written in the cycle basis.
  const std::size_t m = c.dim(q + 1), k = n - r;
  std::size_t rho = 0;
  std::vector<LaurentPoly> diag;
  if (m > 0 && k > 0) {
    LMatrix full = lmultiply(to_laurent_matrix(c.boundary(q + 1), f), uinv, f);
    LMatrix p(m, k, LaurentPoly(f));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j) p(i, j) = full(i, r + j);
    auto s = laurent_snf(p, f);
    rho = s.rank;
    diag = s.diagonal;
  }
  out.free_rank = k - rho;
  for (const auto& d : diag) {
    if (d.spread() == 0) continue;
    out.invariant_factors.push_back(d);
    auto [e, g] = split_t_minus_1(d);
    if (e > 0) out.t_minus_1_blocks.push_back(e);
    if (g.spread() > 0) {
      auto it = std::find_if(out.other_primary.begin(), out.other_primary.end(),
                             [&](const OtherPrimary& o) { return o.poly == g; });
      if (it != out.other_primary.end())
        ++it->mult;
      else
        out.other_primary.push_back({g, 1, 1});
    }
  }
  std::sort(out.t_minus_1_blocks.begin(), out.t_minus_1_blocks.end());
  return out;
}

std::size_t GrModule::dim(std::size_t s) const {
  std::size_t d = free_rank;
  for (auto b : blocks)
    if (b > s) ++d;
  return d;
}

GrModule einf_gr_module(const LaurentModuleDecomp& d) { return {d.free_rank, d.t_minus_1_blocks}; }

bool IntegralHomology::torsion_free() const {
  for (const auto& t : torsion)
    if (!t.empty()) return false;
  return true;
}

IntegralHomology integral_homology(const EquivariantComplex& c) {
  if (!c.has_integral_shadow()) throw UnsupportedInput("integral homology needs integer boundary data");
  const std::size_t top = c.top_degree();
  std::vector<std::size_t> ranks(top + 2, 0);
  std::vector<std::vector<mpz_class>> factors(top + 2);
  for (std::size_t q = 1; q <= top; ++q) {
    const FMatrix e = augmented_integral_boundary(c, q, FieldDescriptor::integers());
    ZMatrix z(e.rows(), e.cols(), mpz_class(0));
    for (std::size_t i = 0; i < e.rows(); ++i)
      for (std::size_t j = 0; j < e.cols(); ++j) z(i, j) = e(i, j).rational().get_num();
    auto s = integer_snf(z);
    ranks[q] = s.rank;
    for (const auto& d : s.diagonal)
      if (d > 1) factors[q].push_back(d);
  }
  IntegralHomology h;
  for (std::size_t q = 0; q <= top; ++q) {
    h.free_ranks.push_back(c.dim(q) - ranks[q] - ranks[q + 1]);
    h.torsion.push_back(factors[q + 1]);
  }
  return h;
}

std::vector<bool> integral_torsion_check(const EquivariantComplex& c) {
  IntegralHomology h = integral_homology(c);
  std::vector<bool> out;
  for (std::size_t q = 0; q < h.torsion.size(); ++q) out.push_back(h.torsion_free(q));
  return out;
}

}  // namespace ess
