#pragma once

// Twisted Betti numbers b_q(X, nu/d) by evaluation at roots of unity,
// Alexander polynomials, and the comparison report for the Betti bounds.

#include <string>
#include <vector>

#include "ess/complex.hpp"
#include "ess/laurent.hpp"

namespace ess {

/// Entrywise image of a matrix over Z[Z^n] or Q[Z^n] under t_i -> zeta_d^{chi_i}
/// in Q(zeta_d).
FMatrix evaluate_at_root(const GRMatrix& m, std::uint64_t d, const std::vector<std::int64_t>& chi);

/// b_q(X, nu/d) for a complex over G = Z with Z or Q coefficients, evaluating
/// at zeta_d^a (a prime to d gives a primitive root; a = 1 by default).
std::vector<std::size_t> twisted_betti(const EquivariantComplex& c, std::uint64_t d, std::int64_t a = 1);

/// Direct evaluation t_i -> zeta_d^{chi_i} for a complex over Z^n.
std::vector<std::size_t> twisted_betti_direct(const EquivariantComplex& c, std::uint64_t d,
                                              const std::vector<std::int64_t>& chi);

/// Same numbers through the reduction to a surjective character:
/// chi = m chi', and zeta_d^m has order d / gcd(d, m).
std::vector<std::size_t> twisted_betti_character(const EquivariantComplex& c, std::uint64_t d,
                                                 const std::vector<std::int64_t>& chi);

struct AlexanderResult {
  LaurentPoly poly;
  /// Set when the answer follows from a convention (no 2-cells).
  std::string notice;
};

/// gcd of the codimension-one minors of Mat(d_2) for G = Z, normalized to
/// lowest exponent 0 and positive leading coefficient. Uses the integral
/// shadow when present, so the result is over Z.
AlexanderResult alexander_polynomial(const EquivariantComplex& c);

/// Determinant over k[t, t^-1] (fraction-free elimination).
LaurentPoly laurent_determinant(const Matrix<LaurentPoly>& m, const FieldDescriptor& f);

struct BoundsReport {
  std::uint64_t p = 0;
  std::uint64_t r = 0;
  std::vector<std::size_t> twisted;     ///< b_q(X, nu/p^r)
  std::vector<std::size_t> mod_p;       ///< b_q(X, F_p)
  std::vector<std::size_t> beta;        ///< beta_q(X, nu_{F_p})
  std::vector<bool> torsion_free;       ///< H_q(X, Z) torsion-free
  bool bettibound = true;               ///< twisted <= mod_p in every degree
  bool cohobound_applicable = false;    ///< integral homology torsion-free
  bool cohobound = true;                ///< twisted <= beta in every degree
  bool aomoto_le_mod_p = true;          ///< beta <= mod_p in every degree
};

/// For a complex over G = Z with an integral shadow. Throws CrossCheckFailure
/// if a bound that the hypotheses guarantee fails.
BoundsReport bounds_report(const EquivariantComplex& c, std::uint64_t p, std::uint64_t r);

}  // namespace ess
