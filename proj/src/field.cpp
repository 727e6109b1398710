#include "ess/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "ess/errors.hpp"

namespace ess {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly({c}); }

IntPoly IntPoly::monomial(std::size_t k, const mpz_class& c) {
  std::vector<mpz_class> v(k + 1, 0);
  v[k] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPoly::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : mpz_class(0);
}

mpz_class IntPoly::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<mpz_class> v(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
  std::vector<mpz_class> v(coeffs_);
  for (auto& c : v) c = -c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpz_class> v(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return IntPoly(std::move(v));
}

IntPoly IntPoly::exact_div(const IntPoly& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero("IntPoly: division by zero polynomial");
  if (is_zero()) return {};
  if (degree() < divisor.degree()) throw InputError("IntPoly: inexact division");
  std::vector<mpz_class> rem(coeffs_);
  std::vector<mpz_class> quot(coeffs_.size() - divisor.coeffs_.size() + 1, 0);
  const auto dd = static_cast<std::size_t>(divisor.degree());
  for (std::size_t k = quot.size(); k-- > 0;) {
    const mpz_class& top = rem[k + dd];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), divisor.leading().get_mpz_t()))
      throw InputError("IntPoly: inexact division");
    mpz_class c = top / divisor.leading();
    quot[k] = c;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= c * divisor.coeffs_[j];
  }
  for (const auto& c : rem)
    if (c != 0) throw InputError("IntPoly: inexact division");
  return IntPoly(std::move(quot));
}

std::pair<IntPoly, IntPoly> IntPoly::divmod_monic(const IntPoly& monic) const {
  if (monic.is_zero() || monic.leading() != 1)
    throw InputError("IntPoly::divmod_monic: divisor must be monic");
  if (degree() < monic.degree()) return {IntPoly{}, *this};
  std::vector<mpz_class> rem(coeffs_);
  std::vector<mpz_class> quot(coeffs_.size() - monic.coeffs_.size() + 1, 0);
  const auto dd = static_cast<std::size_t>(monic.degree());
  for (std::size_t k = quot.size(); k-- > 0;) {
    mpz_class c = rem[k + dd];
    if (c == 0) continue;
    quot[k] = c;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= c * monic.coeffs_[j];
  }
  return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
}

std::string IntPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const mpz_class& c = coeffs_[k];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

// ---------------------------------------------------- number theory helpers

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::uint64_t prime_power_base(std::uint64_t n) {
  if (n < 2) return 0;
  std::uint64_t p = 0;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      p = f;
      break;
    }
  }
  if (p == 0) return n;  // n itself is prime
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f != 0) continue;
    while (n % f == 0) n /= f;
    result -= result / f;
  }
  if (n > 1) result -= result / n;
  return result;
}

IntPoly cyclotomic_polynomial(std::uint64_t d) {
  if (d == 0) throw InputError("cyclotomic_polynomial: d must be positive");
  static std::mutex mu;
  static std::map<std::uint64_t, IntPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  IntPoly acc = IntPoly::monomial(d) - IntPoly::constant(1);
  for (std::uint64_t e = 1; e < d; ++e)
    if (d % e == 0) acc = acc.exact_div(cyclotomic_polynomial(e));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(d, acc);
  return acc;
}

// -------------------------------------------------------- FieldDescriptor

namespace {

const IntPoly* registered_modulus(std::uint64_t d) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::unique_ptr<IntPoly>> registry;
  IntPoly phi = cyclotomic_polynomial(d);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[d];
  if (!slot) slot = std::make_unique<IntPoly>(std::move(phi));
  return slot.get();
}

std::uint64_t parse_positive(std::string_view text, std::string_view what) {
  if (text.empty()) throw InputError(std::string("missing ") + std::string(what));
  std::uint64_t v = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9')
      throw InputError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    if (v > (1ULL << 40)) throw InputError("value too large: " + std::string(text));
  }
  return v;
}

}  // namespace

FieldDescriptor FieldDescriptor::integers() {
  FieldDescriptor f;
  f.kind_ = FieldKind::Integers;
  return f;
}

FieldDescriptor FieldDescriptor::rationals() { return FieldDescriptor{}; }

FieldDescriptor FieldDescriptor::prime_field(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("Fp: " + std::to_string(p) + " is not prime");
  if (p >= (1ULL << 31)) throw InputError("Fp: prime too large (must be < 2^31)");
  FieldDescriptor f;
  f.kind_ = FieldKind::PrimeField;
  f.param_ = p;
  return f;
}

FieldDescriptor FieldDescriptor::cyclotomic(std::uint64_t d) {
  if (d == 0) throw InputError("cyclotomic field order must be positive");
  FieldDescriptor f;
  f.kind_ = FieldKind::Cyclotomic;
  f.param_ = d;
  f.modulus_ = registered_modulus(d);
  return f;
}

FieldDescriptor FieldDescriptor::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text == "Z") return integers();
  if (text.starts_with("Fp:")) return prime_field(parse_positive(text.substr(3), "prime"));
  if (text.starts_with("cyclotomic:"))
    return cyclotomic(parse_positive(text.substr(11), "cyclotomic order"));
  throw InputError("unknown field descriptor '" + std::string(text) +
                   "' (expected Q, Z, Fp:<p> or cyclotomic:<d>)");
}

std::size_t FieldDescriptor::degree() const {
  return kind_ == FieldKind::Cyclotomic ? static_cast<std::size_t>(modulus_->degree()) : 1;
}

std::string FieldDescriptor::to_string() const {
  switch (kind_) {
    case FieldKind::Integers: return "Z";
    case FieldKind::Rationals: return "Q";
    case FieldKind::PrimeField: return "Fp:" + std::to_string(param_);
    case FieldKind::Cyclotomic: return "cyclotomic:" + std::to_string(param_);
  }
  return "?";
}

// --------------------------------------------------------------- FieldElem

namespace {

using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Reduce a polynomial over Q modulo the monic integer polynomial `m`,
// returning exactly deg(m) coefficients.
QPoly reduce_mod(QPoly a, const IntPoly& m) {
  const std::size_t n = static_cast<std::size_t>(m.degree());
  for (std::size_t k = a.size(); k-- > n;) {
    if (a[k] == 0) continue;
    mpq_class c = a[k];
    for (std::size_t j = 0; j <= n; ++j) a[k - n + j] -= c * mpq_class(m.coeffs()[j]);
  }
  a.resize(n, mpq_class(0));
  return a;
}

// Division with remainder in Q[s].
std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
  qtrim(a);
  QPoly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, mpq_class(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    mpq_class c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  qtrim(a);
  qtrim(q);
  return {q, a};
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

QPoly qsub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qtrim(r);
  return r;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) acc = acc * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return acc;
}

std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

FieldElem::FieldElem(const FieldDescriptor& field) : field_(field) {
  if (field_.kind() == FieldKind::Cyclotomic) poly_.assign(field_.degree(), mpq_class(0));
}

FieldElem FieldElem::integer(const FieldDescriptor& field, long long value) {
  return integer(field, mpz_class(static_cast<long>(value)));
}

FieldElem FieldElem::integer(const FieldDescriptor& field, const mpz_class& value) {
  FieldElem e(field);
  switch (field.kind()) {
    case FieldKind::Integers:
    case FieldKind::Rationals: e.q_ = value; break;
    case FieldKind::PrimeField: e.r_ = reduce_mpz(value, field.prime()); break;
    case FieldKind::Cyclotomic: e.poly_[0] = value; break;
  }
  return e;
}

FieldElem FieldElem::rational(const FieldDescriptor& field, const mpq_class& value) {
  FieldElem e(field);
  switch (field.kind()) {
    case FieldKind::Integers:
      if (value.get_den() != 1) throw InputError("non-integer value over Z: " + value.get_str());
      e.q_ = value;
      break;
    case FieldKind::Rationals: e.q_ = value; break;
    case FieldKind::PrimeField: {
      std::uint64_t den = reduce_mpz(value.get_den(), field.prime());
      if (den == 0)
        throw DivisionByZero("denominator of " + value.get_str() + " vanishes mod " +
                             std::to_string(field.prime()));
      std::uint64_t num = reduce_mpz(value.get_num(), field.prime());
      e.r_ = num * mod_pow(den, field.prime() - 2, field.prime()) % field.prime();
      break;
    }
    case FieldKind::Cyclotomic: e.poly_[0] = value; break;
  }
  return e;
}

FieldElem FieldElem::zeta_power(const FieldDescriptor& field, long long k) {
  if (field.kind() != FieldKind::Cyclotomic)
    throw InputError("zeta_power requires a cyclotomic field");
  const auto d = static_cast<long long>(field.order());
  long long r = ((k % d) + d) % d;
  QPoly a(static_cast<std::size_t>(r) + 1, mpq_class(0));
  a[static_cast<std::size_t>(r)] = 1;
  return from_poly(field, std::move(a));
}

FieldElem FieldElem::from_poly(const FieldDescriptor& field, std::vector<mpq_class> coeffs) {
  if (field.kind() != FieldKind::Cyclotomic)
    throw InputError("from_poly requires a cyclotomic field");
  FieldElem e(field);
  e.poly_ = reduce_mod(std::move(coeffs), field.modulus());
  return e;
}

void FieldElem::check_same(const FieldElem& o) const {
  if (!(field_ == o.field_))
    throw DescriptorMismatch("field mismatch: " + field_.to_string() + " vs " +
                             o.field_.to_string());
}

bool FieldElem::is_zero() const {
  switch (field_.kind()) {
    case FieldKind::Integers:
    case FieldKind::Rationals: return q_ == 0;
    case FieldKind::PrimeField: return r_ == 0;
    case FieldKind::Cyclotomic:
      for (const auto& c : poly_)
        if (c != 0) return false;
      return true;
  }
  return false;
}

bool FieldElem::is_one() const { return *this == one(field_); }

const mpq_class& FieldElem::rational() const {
  if (field_.kind() != FieldKind::Integers && field_.kind() != FieldKind::Rationals)
    throw DescriptorMismatch("rational() called on " + field_.to_string());
  return q_;
}

std::uint64_t FieldElem::residue() const {
  if (field_.kind() != FieldKind::PrimeField)
    throw DescriptorMismatch("residue() called on " + field_.to_string());
  return r_;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  FieldElem e(*this);
  switch (field_.kind()) {
    case FieldKind::Integers:
    case FieldKind::Rationals: e.q_ += o.q_; break;
    case FieldKind::PrimeField: e.r_ = (r_ + o.r_) % field_.prime(); break;
    case FieldKind::Cyclotomic:
      for (std::size_t i = 0; i < poly_.size(); ++i) e.poly_[i] += o.poly_[i];
      break;
  }
  return e;
}

FieldElem FieldElem::operator-() const {
  FieldElem e(*this);
  switch (field_.kind()) {
    case FieldKind::Integers:
    case FieldKind::Rationals: e.q_ = -q_; break;
    case FieldKind::PrimeField: e.r_ = r_ == 0 ? 0 : field_.prime() - r_; break;
    case FieldKind::Cyclotomic:
      for (auto& c : e.poly_) c = -c;
      break;
  }
  return e;
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  FieldElem e(field_);
  switch (field_.kind()) {
    case FieldKind::Integers:
    case FieldKind::Rationals: e.q_ = q_ * o.q_; break;
    case FieldKind::PrimeField: e.r_ = r_ * o.r_ % field_.prime(); break;
    case FieldKind::Cyclotomic:
      e.poly_ = reduce_mod(qmul(poly_, o.poly_), field_.modulus());
      if (e.poly_.size() != field_.degree()) e.poly_.resize(field_.degree(), mpq_class(0));
      break;
  }
  return e;
}

FieldElem FieldElem::scaled(long long k) const { return *this * integer(field_, k); }

FieldElem FieldElem::operator/(const FieldElem& o) const {
  check_same(o);
  if (o.is_zero()) throw DivisionByZero("division by zero in " + field_.to_string());
  if (field_.kind() == FieldKind::Integers) {
    mpq_class q = q_ / o.q_;
    if (q.get_den() != 1) throw InputError("inexact integer division");
    FieldElem e(field_);
    e.q_ = q;
    return e;
  }
  return *this * field_inverse(o);
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (!(field_ == o.field_)) return false;
  switch (field_.kind()) {
    case FieldKind::Integers:
    case FieldKind::Rationals: return q_ == o.q_;
    case FieldKind::PrimeField: return r_ == o.r_;
    case FieldKind::Cyclotomic: return poly_ == o.poly_;
  }
  return false;
}

std::string FieldElem::to_string() const {
  switch (field_.kind()) {
    case FieldKind::Integers:
    case FieldKind::Rationals: return q_.get_str();
    case FieldKind::PrimeField: return std::to_string(r_);
    case FieldKind::Cyclotomic: {
      std::ostringstream os;
      bool first = true;
      for (std::size_t k = poly_.size(); k-- > 0;) {
        const mpq_class& c = poly_[k];
        if (c == 0) continue;
        mpq_class mag = abs(c);
        if (first) {
          if (c < 0) os << "-";
        } else {
          os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
          os << mag.get_str();
          continue;
        }
        if (mag != 1) os << mag.get_str() << "*";
        os << "z";
        if (k > 1) os << "^" << k;
      }
      return first ? "0" : os.str();
    }
  }
  return "?";
}

FieldElem field_inverse(const FieldElem& a) {
  if (a.is_zero()) throw DivisionByZero("inverse of zero in " + a.field().to_string());
  const FieldDescriptor& f = a.field();
  switch (f.kind()) {
    case FieldKind::Integers: {
      const mpq_class& v = a.rational();
      if (v != 1 && v != -1) throw InputError("not a unit in Z: " + v.get_str());
      return a;
    }
    case FieldKind::Rationals: return FieldElem::rational(f, 1 / a.rational());
    case FieldKind::PrimeField: {
      return FieldElem::integer(f, static_cast<long long>(
                                       mod_pow(a.residue(), f.prime() - 2, f.prime())));
    }
    case FieldKind::Cyclotomic: {
      // Extended Euclid: find u with u*a == 1 mod Phi_d.
      QPoly m;
      for (const auto& c : f.modulus().coeffs()) m.emplace_back(c);
      QPoly r0 = m, r1 = a.poly();
      qtrim(r1);
      QPoly s0, s1{mpq_class(1)};  // coefficients of a
      while (!r1.empty()) {
        auto [q, r] = qdivmod(r0, r1);
        QPoly s2 = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
      }
      // r0 is a nonzero constant since Phi_d is irreducible.
      if (r0.size() != 1) throw CrossCheckFailure("cyclotomic inverse: nonconstant gcd");
      for (auto& c : s0) c /= r0[0];
      return FieldElem::from_poly(f, std::move(s0));
    }
  }
  throw DivisionByZero("unreachable");
}

FieldElem convert_scalar(const FieldElem& a, const FieldDescriptor& target) {
  const FieldDescriptor& src = a.field();
  if (src == target) return a;
  if (src.kind() == FieldKind::Integers || src.kind() == FieldKind::Rationals)
    return FieldElem::rational(target, a.rational());
  if (src.kind() == FieldKind::Cyclotomic && target.kind() == FieldKind::Cyclotomic &&
      src.degree() == 1 && target.degree() == 1) {
    // Q(zeta_1) = Q(zeta_2) = Q.
    return FieldElem::rational(target, a.poly()[0]);
  }
  if (src.kind() == FieldKind::Cyclotomic && src.degree() == 1)
    return FieldElem::rational(target, a.poly()[0]);
  throw DescriptorMismatch("no coefficient change from " + src.to_string() + " to " +
                           target.to_string());
}

}  // namespace ess
