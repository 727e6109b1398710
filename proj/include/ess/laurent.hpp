#pragma once

// Univariate Laurent polynomials k[t, t^-1] over a FieldElem coefficient
// domain. Over Z only exact division is supported.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ess/field.hpp"

namespace ess {

class LaurentPoly {
 public:
  LaurentPoly() = default;  // zero over Q
  explicit LaurentPoly(const FieldDescriptor& f) : field_(f) {}
  /// sum_k coeffs[k] t^(low + k)
  LaurentPoly(const FieldDescriptor& f, std::int64_t low, std::vector<FieldElem> coeffs);

  static LaurentPoly constant(const FieldElem& c);
  static LaurentPoly monomial(const FieldElem& c, std::int64_t k);
  /// t - 1 over f.
  static LaurentPoly t_minus_one(const FieldDescriptor& f);
  static LaurentPoly from_int(const FieldDescriptor& f, const IntPoly& p);

  const FieldDescriptor& field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::int64_t low() const { return low_; }
  std::int64_t high() const { return low_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
  /// high - low; -1 for zero. This is the Euclidean norm used by SNF.
  std::int64_t spread() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }
  FieldElem coeff(std::int64_t k) const;
  const FieldElem& leading() const { return coeffs_.back(); }
  /// A single nonzero term with invertible coefficient.
  bool is_unit() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly scaled(const FieldElem& c) const;
  LaurentPoly shifted(std::int64_t k) const;
  bool operator==(const LaurentPoly& o) const;

  /// Writes *this = u * n with u a unit and n normalized: lowest exponent 0
  /// and leading coefficient 1 (over Z: positive). Returns {u, n}.
  std::pair<LaurentPoly, LaurentPoly> normalize() const;
  /// Euclidean division: *this = q*b + r with r.spread() < b.spread().
  std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& b) const;
  /// Throws InputError unless b divides *this exactly.
  LaurentPoly exact_div(const LaurentPoly& b) const;
  bool divides(const LaurentPoly& a) const;

  FieldElem evaluate(const FieldElem& x) const;
  /// Image under a coefficient change.
  LaurentPoly converted(const FieldDescriptor& target) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  FieldDescriptor field_;
  std::int64_t low_ = 0;
  std::vector<FieldElem> coeffs_;
};

/// Sign and magnitude text of a coefficient for polynomial printing;
/// multi-term cyclotomic values come back parenthesized.
std::pair<bool, std::string> coefficient_text(const FieldElem& c);

/// Normalized greatest common divisor over a field (gcd(0,0) = 0).
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace ess
