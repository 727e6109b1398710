#pragma once

// Exact coefficient arithmetic: Z, Q, F_p and cyclotomic fields Q(zeta_d).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace ess {

/// Dense integer polynomial, lowest degree first. The zero polynomial has
/// no coefficients; otherwise the leading coefficient is nonzero.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);

  static IntPoly constant(const mpz_class& c);
  /// c * t^k
  static IntPoly monomial(std::size_t k, const mpz_class& c = 1);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  mpz_class coeff(std::size_t k) const;
  const mpz_class& leading() const { return coeffs_.back(); }

  mpz_class evaluate(const mpz_class& x) const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator-() const;
  bool operator==(const IntPoly& o) const = default;

  /// Exact division; throws if `divisor` does not divide `*this` in Z[t].
  IntPoly exact_div(const IntPoly& divisor) const;
  /// Division with remainder by a monic polynomial.
  std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& monic) const;

  std::string to_string(std::string_view var = "t") const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

/// Phi_d(t), computed by dividing t^d - 1 by Phi_e for every proper divisor e.
IntPoly cyclotomic_polynomial(std::uint64_t d);

std::uint64_t euler_phi(std::uint64_t n);
bool is_prime(std::uint64_t n);
/// If n = p^k with p prime and k >= 1, returns p; otherwise 0.
std::uint64_t prime_power_base(std::uint64_t n);

enum class FieldKind { Integers, Rationals, PrimeField, Cyclotomic };

/// Names a coefficient domain. Integers is a ring, accepted wherever the
/// computation only needs exact division or Smith normal form.
class FieldDescriptor {
 public:
  FieldDescriptor() = default;  // rationals

  static FieldDescriptor integers();
  static FieldDescriptor rationals();
  static FieldDescriptor prime_field(std::uint64_t p);
  static FieldDescriptor cyclotomic(std::uint64_t d);
  /// "Q", "Z", "Fp:5", "cyclotomic:6"
  static FieldDescriptor parse(std::string_view text);

  FieldKind kind() const { return kind_; }
  bool is_field() const { return kind_ != FieldKind::Integers; }
  /// p for F_p, 0 otherwise.
  std::uint64_t characteristic() const {
    return kind_ == FieldKind::PrimeField ? param_ : 0;
  }
  std::uint64_t prime() const { return param_; }
  /// d for Q(zeta_d).
  std::uint64_t order() const { return param_; }
  /// Dimension over the prime field: phi(d) for cyclotomic fields, else 1.
  std::size_t degree() const;
  /// Phi_d; only meaningful for cyclotomic fields.
  const IntPoly& modulus() const { return *modulus_; }

  std::string to_string() const;

  bool operator==(const FieldDescriptor& o) const {
    return kind_ == o.kind_ && param_ == o.param_;
  }

 private:
  FieldKind kind_ = FieldKind::Rationals;
  std::uint64_t param_ = 0;
  const IntPoly* modulus_ = nullptr;
};

/// An exact scalar over a FieldDescriptor. Cyclotomic values are stored as
/// polynomials in zeta of degree < phi(d), always reduced mod Phi_d.
class FieldElem {
 public:
  FieldElem() = default;  // rational zero
  explicit FieldElem(const FieldDescriptor& field);

  static FieldElem integer(const FieldDescriptor& field, long long value);
  static FieldElem integer(const FieldDescriptor& field, const mpz_class& value);
  static FieldElem rational(const FieldDescriptor& field, const mpq_class& value);
  static FieldElem one(const FieldDescriptor& field) { return integer(field, 1); }
  /// zeta^k in Q(zeta_d), k reduced mod d.
  static FieldElem zeta_power(const FieldDescriptor& field, long long k);
  /// Element of Q(zeta_d) with the given coefficients in 1, zeta, zeta^2, ...
  static FieldElem from_poly(const FieldDescriptor& field,
                             std::vector<mpq_class> coeffs);

  const FieldDescriptor& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Value for Integers/Rationals fields.
  const mpq_class& rational() const;
  /// Canonical residue in [0, p) for prime fields.
  std::uint64_t residue() const;
  /// Reduced coefficient vector (length phi(d)) for cyclotomic fields.
  const std::vector<mpq_class>& poly() const { return poly_; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  /// Exact division; over Integers the quotient must be an integer.
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  bool operator==(const FieldElem& o) const;

  /// Multiplication by an integer scalar.
  FieldElem scaled(long long k) const;

  std::string to_string() const;

 private:
  void check_same(const FieldElem& o) const;

  FieldDescriptor field_;
  mpq_class q_;
  std::uint64_t r_ = 0;
  std::vector<mpq_class> poly_;
};

/// Multiplicative inverse; throws DivisionByZero on zero and InputError over
/// the integers when the value is not a unit.
FieldElem field_inverse(const FieldElem& a);

/// Image of an integer-valued element under the coefficient change Z or Q
/// into `target` (reduction mod p, inclusion into Q(zeta_d), ...).
FieldElem convert_scalar(const FieldElem& a, const FieldDescriptor& target);

}  // namespace ess
