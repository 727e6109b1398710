#include "ess/laurent.hpp"

#include <sstream>

#include "ess/errors.hpp"

namespace ess {

namespace {

bool is_rational_kind(const FieldDescriptor& f) {
  return f.kind() == FieldKind::Integers || f.kind() == FieldKind::Rationals;
}

}  // namespace

std::pair<bool, std::string> coefficient_text(const FieldElem& c) {
  if (is_rational_kind(c.field())) {
    const mpq_class& v = c.rational();
    return {v < 0, mpq_class(abs(v)).get_str()};
  }
  std::string s = c.to_string();
  if (c.field().kind() == FieldKind::Cyclotomic &&
      s.find_first_of("+-", 1) != std::string::npos)
    s = "(" + s + ")";
  return {false, s};
}

LaurentPoly::LaurentPoly(const FieldDescriptor& f, std::int64_t low, std::vector<FieldElem> coeffs)
    : field_(f), low_(low), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (!(c.field() == field_)) throw DescriptorMismatch("LaurentPoly: coefficient field mismatch");
  trim();
}

void LaurentPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<std::int64_t>(lead);
  }
  if (coeffs_.empty()) low_ = 0;
}

LaurentPoly LaurentPoly::constant(const FieldElem& c) { return monomial(c, 0); }

LaurentPoly LaurentPoly::monomial(const FieldElem& c, std::int64_t k) {
  return LaurentPoly(c.field(), k, {c});
}

LaurentPoly LaurentPoly::t_minus_one(const FieldDescriptor& f) {
  return LaurentPoly(f, 0, {-FieldElem::one(f), FieldElem::one(f)});
}

LaurentPoly LaurentPoly::from_int(const FieldDescriptor& f, const IntPoly& p) {
  std::vector<FieldElem> c;
  for (const auto& v : p.coeffs()) c.push_back(FieldElem::integer(f, v));
  return LaurentPoly(f, 0, std::move(c));
}

FieldElem LaurentPoly::coeff(std::int64_t k) const {
  if (k < low_ || k > high()) return FieldElem(field_);
  return coeffs_[static_cast<std::size_t>(k - low_)];
}

bool LaurentPoly::is_unit() const {
  if (coeffs_.size() != 1) return false;
  if (field_.kind() == FieldKind::Integers) {
    const mpq_class& v = coeffs_[0].rational();
    return v == 1 || v == -1;
  }
  return true;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (is_zero()) return o.is_zero() ? LaurentPoly(field_) : o;
  if (o.is_zero()) return *this;
  if (!(field_ == o.field_)) throw DescriptorMismatch("LaurentPoly: field mismatch");
  const std::int64_t lo = std::min(low_, o.low_);
  const std::int64_t hi = std::max(high(), o.high());
  std::vector<FieldElem> c(static_cast<std::size_t>(hi - lo + 1), FieldElem(field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    c[static_cast<std::size_t>(low_ - lo) + i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
    c[static_cast<std::size_t>(o.low_ - lo) + i] += o.coeffs_[i];
  return LaurentPoly(field_, lo, std::move(c));
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return LaurentPoly(is_zero() ? field_ : o.field_);
  if (!(field_ == o.field_)) throw DescriptorMismatch("LaurentPoly: field mismatch");
  std::vector<FieldElem> c(coeffs_.size() + o.coeffs_.size() - 1, FieldElem(field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return LaurentPoly(field_, low_ + o.low_, std::move(c));
}

LaurentPoly LaurentPoly::scaled(const FieldElem& k) const {
  LaurentPoly r(*this);
  for (auto& c : r.coeffs_) c *= k;
  r.trim();
  return r;
}

LaurentPoly LaurentPoly::shifted(std::int64_t k) const {
  LaurentPoly r(*this);
  if (!r.is_zero()) r.low_ += k;
  return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (is_zero() && o.is_zero()) return true;
  return field_ == o.field_ && low_ == o.low_ && coeffs_ == o.coeffs_;
}

std::pair<LaurentPoly, LaurentPoly> LaurentPoly::normalize() const {
  if (is_zero()) return {constant(FieldElem::one(field_)), *this};
  FieldElem lead = leading();
  if (field_.kind() == FieldKind::Integers) {
    const FieldElem sign = FieldElem::integer(field_, lead.rational() < 0 ? -1 : 1);
    return {monomial(sign, low_), shifted(-low_).scaled(sign)};
  }
  return {monomial(lead, low_), shifted(-low_).scaled(field_inverse(lead))};
}

std::pair<LaurentPoly, LaurentPoly> LaurentPoly::divmod(const LaurentPoly& b) const {
  if (b.is_zero()) throw DivisionByZero("LaurentPoly: division by zero");
  if (is_zero()) return {LaurentPoly(field_), LaurentPoly(field_)};
  if (!(field_ == b.field_)) throw DescriptorMismatch("LaurentPoly: field mismatch");
  // Work with plain polynomials a0 = t^-low(a) a, b0 = t^-low(b) b.
  std::vector<FieldElem> rem = coeffs_;
  const std::vector<FieldElem>& bc = b.coeffs_;
  const std::size_t db = bc.size() - 1;
  const bool integral = field_.kind() == FieldKind::Integers;
  const FieldElem inv_lead = integral ? FieldElem::one(field_) : field_inverse(b.leading());
  std::vector<FieldElem> quot;
  if (rem.size() > db) {
    quot.assign(rem.size() - db, FieldElem(field_));
    for (std::size_t k = quot.size(); k-- > 0;) {
      const FieldElem& top = rem[k + db];
      if (top.is_zero()) continue;
      FieldElem c = integral ? top / b.leading() : top * inv_lead;
      quot[k] = c;
      for (std::size_t j = 0; j <= db; ++j)
        if (!bc[j].is_zero()) rem[k + j] -= c * bc[j];
    }
  }
  LaurentPoly q(field_, low_ - b.low_, std::move(quot));
  LaurentPoly r(field_, low_, std::move(rem));
  return {q, r};
}

LaurentPoly LaurentPoly::exact_div(const LaurentPoly& b) const {
  auto [q, r] = divmod(b);
  if (!r.is_zero()) throw InputError("LaurentPoly: inexact division");
  return q;
}

bool LaurentPoly::divides(const LaurentPoly& a) const {
  if (is_zero()) return a.is_zero();
  try {
    return a.divmod(*this).second.is_zero();
  } catch (const InputError&) {
    return false;  // inexact integer step
  }
}

FieldElem LaurentPoly::evaluate(const FieldElem& x) const {
  FieldElem acc(x.field());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + convert_scalar(*it, x.field());
  if (low_ == 0 || is_zero()) return acc;
  FieldElem base = low_ > 0 ? x : field_inverse(x);
  for (std::int64_t i = 0; i < (low_ > 0 ? low_ : -low_); ++i) acc *= base;
  return acc;
}

LaurentPoly LaurentPoly::converted(const FieldDescriptor& target) const {
  std::vector<FieldElem> c;
  c.reserve(coeffs_.size());
  for (const auto& v : coeffs_) c.push_back(convert_scalar(v, target));
  return LaurentPoly(target, low_, std::move(c));
}

std::string LaurentPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_zero()) continue;
    const std::int64_t k = low_ + static_cast<std::int64_t>(i);
    auto [neg, mag] = coefficient_text(coeffs_[i]);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != "1") os << mag << "*";
    os << var;
    if (k != 1) os << "^" << k;
  }
  return os.str();
}

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly x = a, y = b;
  while (!y.is_zero()) {
    LaurentPoly r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x.normalize().second;
}

}  // namespace ess
