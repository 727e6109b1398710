#include "ess/groupring.hpp"

#include <cctype>
#include <mutex>
#include <numeric>
#include <sstream>

#include "ess/errors.hpp"

namespace ess {

// ------------------------------------------------------------ descriptor

GroupDescriptor GroupDescriptor::free_abelian(std::size_t n) {
  GroupDescriptor g;
  g.kind_ = GroupKind::FreeAbelian;
  g.rank_ = n;
  return g;
}

GroupDescriptor GroupDescriptor::cyclic(std::uint64_t m) {
  if (m < 2) throw InputError("cyclic group order must be at least 2");
  GroupDescriptor g;
  g.kind_ = GroupKind::Cyclic;
  g.rank_ = 0;
  g.order_ = m;
  g.prime_power_ = prime_power_base(m) != 0;
  return g;
}

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
  auto number = [&](std::string_view s) -> std::uint64_t {
    if (s.empty()) throw InputError("missing number in group '" + std::string(text) + "'");
    std::uint64_t v = 0;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw InputError("bad number in group '" + std::string(text) + "'");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  };
  if (text == "Z") return free_abelian(1);
  if (text.starts_with("Z^")) return free_abelian(number(text.substr(2)));
  if (text.starts_with("Zmod:")) return cyclic(number(text.substr(5)));
  throw InputError("unknown group '" + std::string(text) + "' (expected Z, Z^<n> or Zmod:<m>)");
}

std::string GroupDescriptor::to_string() const {
  if (kind_ == GroupKind::Cyclic) return "Zmod:" + std::to_string(order_);
  if (rank_ == 1) return "Z";
  return "Z^" + std::to_string(rank_);
}

// ------------------------------------------------------------- elements

namespace {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

std::string variable_name(const GroupDescriptor& g, std::size_t i) {
  if (g.arity() == 1) return "t";
  return "t" + std::to_string(i + 1);
}

}  // namespace

Exponent GroupRingElem::normalized(Exponent e) const {
  if (e.size() != group_.arity())
    throw InputError("exponent length " + std::to_string(e.size()) + " does not match group " +
                     group_.to_string());
  if (group_.is_cyclic()) e[0] = mod_floor(e[0], static_cast<std::int64_t>(group_.order()));
  return e;
}

void GroupRingElem::check_same(const GroupRingElem& o) const {
  if (!(group_ == o.group_)) throw DescriptorMismatch("group ring elements over different groups");
  if (!(field_ == o.field_))
    throw DescriptorMismatch("group ring elements over " + field_.to_string() + " and " +
                             o.field_.to_string());
}

GroupRingElem GroupRingElem::constant(const GroupDescriptor& g, const FieldElem& c) {
  return monomial(g, Exponent(g.arity(), 0), c);
}

GroupRingElem GroupRingElem::one(const GroupDescriptor& g, const FieldDescriptor& f) {
  return constant(g, FieldElem::one(f));
}

GroupRingElem GroupRingElem::monomial(const GroupDescriptor& g, const Exponent& e,
                                      const FieldElem& c) {
  GroupRingElem a(g, c.field());
  a.add_term(e, c);
  return a;
}

GroupRingElem GroupRingElem::group_element(const GroupDescriptor& g, const FieldDescriptor& f,
                                           const Exponent& e) {
  return monomial(g, e, FieldElem::one(f));
}

GroupRingElem GroupRingElem::x(const GroupDescriptor& g, const FieldDescriptor& f,
                               std::size_t i) {
  if (i >= g.arity()) throw InputError("variable index out of range");
  Exponent e(g.arity(), 0);
  e[i] = 1;
  return group_element(g, f, e) - one(g, f);
}

GroupRingElem GroupRingElem::from_laurent(const GroupDescriptor& g, const LaurentPoly& p) {
  if (g.arity() != 1) throw InputError("from_laurent needs a one-variable group");
  GroupRingElem a(g, p.field());
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    a.add_term({p.low() + static_cast<std::int64_t>(i)}, p.coeffs()[i]);
  return a;
}

FieldElem GroupRingElem::coeff(const Exponent& e) const {
  auto it = terms_.find(normalized(e));
  return it == terms_.end() ? FieldElem(field_) : it->second;
}

void GroupRingElem::add_term(Exponent e, const FieldElem& c) {
  if (!(c.field() == field_))
    throw DescriptorMismatch("coefficient over " + c.field().to_string() + " added to " +
                             field_.to_string() + " group ring element");
  if (c.is_zero()) return;
  e = normalized(std::move(e));
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(std::move(e), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
  GroupRingElem r(*this);
  r += o;
  return r;
}

GroupRingElem& GroupRingElem::operator+=(const GroupRingElem& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

GroupRingElem GroupRingElem::operator-() const {
  GroupRingElem r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const { return *this + (-o); }

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
  check_same(o);
  GroupRingElem r(group_, field_);
  Exponent e(group_.arity());
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

GroupRingElem GroupRingElem::scaled(const FieldElem& c) const {
  GroupRingElem r(group_, field_);
  for (const auto& [e, v] : terms_) r.add_term(e, v * c);
  return r;
}

GroupRingElem GroupRingElem::pow(std::uint64_t k) const {
  GroupRingElem result = one(group_, field_);
  GroupRingElem base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

bool GroupRingElem::operator==(const GroupRingElem& o) const {
  return group_ == o.group_ && field_ == o.field_ && terms_ == o.terms_;
}

GroupRingElem GroupRingElem::converted(const FieldDescriptor& target) const {
  GroupRingElem r(group_, target);
  for (const auto& [e, c] : terms_) r.add_term(e, convert_scalar(c, target));
  return r;
}

GroupRingElem GroupRingElem::mapped(const GroupDescriptor& target,
                                    const std::vector<Exponent>& images) const {
  if (images.size() != group_.arity())
    throw InputError("homomorphism needs " + std::to_string(group_.arity()) + " images");
  for (const auto& img : images)
    if (img.size() != target.arity())
      throw InputError("image length does not match target group " + target.to_string());
  GroupRingElem r(target, field_);
  Exponent out(target.arity());
  for (const auto& [e, c] : terms_) {
    std::fill(out.begin(), out.end(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += e[i] * images[i][j];
    r.add_term(out, c);
  }
  return r;
}

LaurentPoly GroupRingElem::to_laurent() const {
  if (!group_.is_free_abelian() || group_.rank() != 1)
    throw InputError("to_laurent needs the group Z, not " + group_.to_string());
  LaurentPoly p(field_);
  for (const auto& [e, c] : terms_) p = p + LaurentPoly::monomial(c, e[0]);
  return p;
}

std::string GroupRingElem::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    auto [neg, mag] = coefficient_text(c);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variable_name(group_, i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      os << mag;
    else if (mag == "1")
      os << mono;
    else
      os << mag << "*" << mono;
  }
  return os.str();
}

// --------------------------------------------------------------- parser

namespace {

class ElemParser {
 public:
  ElemParser(const GroupDescriptor& g, const FieldDescriptor& f, std::string_view text)
      : g_(g), f_(f), text_(text) {}

  GroupRingElem run() {
    GroupRingElem v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("cannot parse group ring element '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  GroupRingElem expr() {
    GroupRingElem acc(g_, f_);
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    GroupRingElem t = term();
    acc += negate ? -t : t;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc += -term();
      else
        break;
    }
    return acc;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || c == 't' || std::isdigit(static_cast<unsigned char>(c));
  }

  GroupRingElem term() {
    GroupRingElem acc = power();
    while (true) {
      if (accept('*')) {
        acc = acc * power();
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  GroupRingElem power() {
    GroupRingElem base = atom();
    if (!accept('^')) return base;
    bool neg = accept('-');
    mpz_class k = integer();
    if (!k.fits_ulong_p()) fail("exponent too large");
    const auto e = k.get_ui();
    if (!neg) return base.pow(e);
    // Only units (single terms with invertible coefficient) have inverses.
    if (base.terms().size() != 1) fail("negative power of a non-monomial");
    const auto& [ex, c] = *base.terms().begin();
    Exponent inv(ex.size());
    for (std::size_t i = 0; i < ex.size(); ++i) inv[i] = -ex[i];
    return GroupRingElem::monomial(g_, inv, field_inverse(c)).pow(e);
  }

  GroupRingElem atom() {
    skip_ws();
    if (accept('(')) {
      GroupRingElem v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      mpz_class num = integer();
      mpq_class value(num);
      if (accept('/')) {
        mpz_class den = integer();
        if (den == 0) fail("zero denominator");
        value = mpq_class(num, den);
        value.canonicalize();
      }
      return GroupRingElem::constant(g_, FieldElem::rational(f_, value));
    }
    if (pos_ < text_.size() && text_[pos_] == 't') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::size_t index = 0;
      if (start == pos_) {
        if (g_.arity() != 1) fail("use t1..t" + std::to_string(g_.arity()) + " for " +
                                  g_.to_string());
      } else {
        index = std::stoul(std::string(text_.substr(start, pos_ - start)));
        if (index < 1 || index > g_.arity()) fail("variable out of range");
        --index;
      }
      Exponent e(g_.arity(), 0);
      e[index] = 1;
      return GroupRingElem::group_element(g_, f_, e);
    }
    fail("expected a number, a variable or '('");
  }

  const GroupDescriptor& g_;
  const FieldDescriptor& f_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupRingElem GroupRingElem::parse(const GroupDescriptor& g, const FieldDescriptor& f,
                                   std::string_view text) {
  return ElemParser(g, f, text).run();
}

// ----------------------------------------------------- J-adic machinery

FieldElem augmentation(const GroupRingElem& a) {
  FieldElem s(a.field());
  for (const auto& [e, c] : a.terms()) s += c;
  return s;
}

namespace {

// binom(e, j) for j = 0..count-1, valid for negative e as well.
std::vector<mpz_class> binomial_series(std::int64_t e, std::size_t count) {
  std::vector<mpz_class> out;
  out.reserve(count);
  mpz_class b = 1;
  for (std::size_t j = 0; j < count; ++j) {
    out.push_back(b);
    b = b * (e - static_cast<long>(j));
    b /= static_cast<unsigned long>(j + 1);
  }
  return out;
}

using XExpansion = std::map<std::vector<std::size_t>, FieldElem>;

// Expansion of a in the monomials x^alpha (x_i = t_i - 1), total degree < bound.
XExpansion x_expansion(const GroupRingElem& a, std::size_t bound) {
  XExpansion out;
  const std::size_t n = a.group().arity();
  const FieldDescriptor& f = a.field();
  std::vector<std::size_t> alpha(n, 0);
  for (const auto& [e, c] : a.terms()) {
    std::vector<std::vector<FieldElem>> series(n);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& b : binomial_series(e[i], bound)) series[i].push_back(FieldElem::integer(f, b));
    // Depth-first over alpha with |alpha| < bound.
    auto rec = [&](auto&& self, std::size_t i, std::size_t used, const FieldElem& acc) -> void {
      if (acc.is_zero()) return;
      if (i == n) {
        auto it = out.find(alpha);
        if (it == out.end())
          out.emplace(alpha, acc);
        else
          it->second += acc;
        return;
      }
      for (std::size_t j = 0; used + j < bound; ++j) {
        alpha[i] = j;
        self(self, i + 1, used + j, acc * series[i][j]);
      }
      alpha[i] = 0;
    };
    rec(rec, 0, 0, c);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

// The chain J^0 ⊇ J^1 ⊇ ... ⊇ J^N = J^{N+1} inside kZ_m, in the t^j basis.
struct CyclicChain {
  std::vector<FMatrix> powers;  // echelon bases of J^0 .. J^N
  FMatrix t_minus_one;          // matrix of multiplication by t - 1
};

const CyclicChain& cyclic_chain(std::uint64_t m, const FieldDescriptor& f) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::string>, std::unique_ptr<CyclicChain>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, f.to_string());
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto chain = std::make_unique<CyclicChain>();
  const std::size_t n = m;
  chain->t_minus_one = zeros(n, n, f);
  for (std::size_t j = 0; j < n; ++j) {
    chain->t_minus_one(j, (j + 1) % n) += FieldElem::one(f);
    chain->t_minus_one(j, j) -= FieldElem::one(f);
  }
  FMatrix current = identity(n, f);
  chain->powers.push_back(current);
  while (true) {
    FMatrix next = reduced_echelon(fmultiply(current, chain->t_minus_one, f), f).reduced;
    if (next.rows() == 0) next = FMatrix::shape(0, n);
    if (next.rows() == current.rows()) break;
    chain->powers.push_back(next);
    current = std::move(next);
  }
  it = cache.emplace(key, std::move(chain)).first;
  return *it->second;
}

FVector cyclic_vector(const GroupRingElem& a) {
  const std::size_t m = a.group().order();
  FVector v = zero_vector(m, a.field());
  for (const auto& [e, c] : a.terms()) v[static_cast<std::size_t>(e[0])] += c;
  return v;
}

bool in_row_space(const FMatrix& basis, const FVector& v, const FieldDescriptor& f) {
  if (basis.rows() == 0) {
    for (const auto& c : v)
      if (!c.is_zero()) return false;
    return true;
  }
  return solve_left(basis, v, f).has_value();
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r.get_ui();
}

}  // namespace

std::optional<std::size_t> j_valuation(const GroupRingElem& a) {
  if (a.is_zero()) return std::nullopt;
  const GroupDescriptor& g = a.group();
  if (g.is_free_abelian()) {
    const std::size_t n = g.arity();
    if (n == 0) return 0;
    // Multiply by a unit so that all exponents are nonnegative; the
    // x-expansion is then a polynomial of degree at most the top degree.
    Exponent lo(n, 0);
    for (const auto& [e, c] : a.terms())
      for (std::size_t i = 0; i < n; ++i) lo[i] = std::min(lo[i], e[i]);
    for (auto& v : lo) v = -v;
    GroupRingElem b = a * GroupRingElem::group_element(g, a.field(), lo);
    std::int64_t top = 0;
    for (const auto& [e, c] : b.terms()) top = std::max(top, std::accumulate(e.begin(), e.end(), std::int64_t{0}));
    XExpansion ex = x_expansion(b, static_cast<std::size_t>(top) + 1);
    std::size_t best = kInfiniteDegree;
    for (const auto& [alpha, c] : ex)
      best = std::min(best, std::accumulate(alpha.begin(), alpha.end(), std::size_t{0}));
    if (best == kInfiniteDegree) throw CrossCheckFailure("j_valuation: nonzero element with empty expansion");
    return best;
  }
  const CyclicChain& chain = cyclic_chain(g.order(), a.field());
  const FVector v = cyclic_vector(a);
  const std::size_t top = chain.powers.size() - 1;
  std::size_t n = 0;
  while (n < top && in_row_space(chain.powers[n + 1], v, a.field())) ++n;
  if (n == top) return std::nullopt;  // lies in J^N = J^{N+1} = ...
  return n;
}

std::size_t gr_dimension(const GroupDescriptor& g, const FieldDescriptor& f, std::size_t s) {
  if (g.is_free_abelian()) {
    const std::size_t n = g.rank();
    if (n == 0) return s == 0 ? 1 : 0;
    return binomial_u64(s + n - 1, n - 1);
  }
  const CyclicChain& chain = cyclic_chain(g.order(), f);
  if (s + 1 >= chain.powers.size()) return 0;
  return chain.powers[s].rows() - chain.powers[s + 1].rows();
}

std::vector<FieldElem> linear_part(const GroupRingElem& a) {
  const GroupDescriptor& g = a.group();
  std::vector<FieldElem> out(g.arity(), FieldElem(a.field()));
  for (const auto& [e, c] : a.terms())
    for (std::size_t i = 0; i < g.arity(); ++i)
      if (e[i] != 0) out[i] += c * FieldElem::integer(a.field(), static_cast<long long>(e[i]));
  return out;
}

// ------------------------------------------------------ FiltrationModel

FiltrationModel::FiltrationModel(const GroupDescriptor& g, const FieldDescriptor& f,
                                 std::size_t truncation)
    : group_(g), field_(f), truncation_(truncation) {
  if (!f.is_field()) throw UnsupportedInput("filtration model needs field coefficients, got Z");
  if (g.is_free_abelian()) {
    const std::size_t n = g.rank();
    std::vector<std::size_t> alpha(n, 0);
    for (std::size_t deg = 0; deg < truncation; ++deg) {
      // Exponent vectors of total degree deg, first coordinate largest first.
      auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
        if (i + 1 == n) {
          alpha[i] = left;
          monomial_index_.emplace(alpha, monomials_.size());
          monomials_.push_back(alpha);
          degrees_.push_back(deg);
          return;
        }
        for (std::size_t j = left + 1; j-- > 0;) {
          alpha[i] = j;
          self(self, i + 1, left - j);
        }
      };
      if (n == 0) {
        if (deg == 0) {
          monomial_index_.emplace(alpha, 0);
          monomials_.push_back(alpha);
          degrees_.push_back(0);
        }
      } else {
        rec(rec, 0, deg);
      }
    }
    return;
  }
  // Cyclic: adapted basis built from the elements (t-1)^n t^j, top of the
  // chain first.
  const CyclicChain& chain = cyclic_chain(g.order(), f);
  const std::size_t m = g.order();
  const std::size_t top = chain.powers.size() - 1;
  std::vector<std::pair<FVector, std::size_t>> chosen;
  FMatrix span = FMatrix::shape(0, m);
  auto try_add = [&](const FVector& v, std::size_t deg) {
    FMatrix trial = span;
    trial.append_row(v);
    if (rank_exact(trial) > span.rows()) {
      span = std::move(trial);
      chosen.emplace_back(v, deg);
    }
  };
  // (t-1)^n as a vector in the t^j basis.
  std::vector<FVector> power_rows;
  {
    FVector v = zero_vector(m, f);
    v[0] = FieldElem::one(f);
    power_rows.push_back(v);
    for (std::size_t n = 1; n <= top; ++n) power_rows.push_back(row_times(power_rows.back(), chain.t_minus_one, f));
  }
  auto shifted = [&](const FVector& v, std::size_t j) {
    FVector out = zero_vector(m, f);
    for (std::size_t k = 0; k < m; ++k) out[(k + j) % m] = v[k];
    return out;
  };
  for (std::size_t n = top + 1; n-- > 0;) {
    const std::size_t deg = n == top ? kInfiniteDegree : n;
    for (std::size_t j = 0; j < m && span.rows() < chain.powers[n].rows(); ++j)
      try_add(shifted(power_rows[n], j), deg);
  }
  // Order by degree, infinite last.
  std::stable_sort(chosen.begin(), chosen.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  basis_ = FMatrix::shape(0, m);
  for (const auto& [v, deg] : chosen) {
    basis_.append_row(v);
    degrees_.push_back(deg);
  }
  basis_inverse_ = zeros(m, m, f);
  for (std::size_t j = 0; j < m; ++j) {
    FVector e = zero_vector(m, f);
    e[j] = FieldElem::one(f);
    auto sol = solve_left(basis_, e, f);
    if (!sol) throw CrossCheckFailure("filtration basis is not a basis");
    basis_inverse_.set_row(j, *sol);
  }
}

std::vector<std::size_t> FiltrationModel::indices_of_degree(std::size_t s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < degrees_.size(); ++i)
    if (degrees_[i] == s) out.push_back(i);
  return out;
}

GroupRingElem FiltrationModel::basis_element(std::size_t i) const {
  if (group_.is_free_abelian()) {
    GroupRingElem r = GroupRingElem::one(group_, field_);
    for (std::size_t k = 0; k < monomials_[i].size(); ++k)
      r = r * GroupRingElem::x(group_, field_, k).pow(monomials_[i][k]);
    return r;
  }
  GroupRingElem r(group_, field_);
  for (std::size_t j = 0; j < basis_.cols(); ++j) r.add_term({static_cast<std::int64_t>(j)}, basis_(i, j));
  return r;
}

FVector FiltrationModel::free_coordinates(const GroupRingElem& a) const {
  FVector v = zero_vector(size(), field_);
  for (const auto& [alpha, c] : x_expansion(a, truncation_)) v[monomial_index_.at(alpha)] = c;
  return v;
}

FVector FiltrationModel::coordinates(const GroupRingElem& a) const {
  if (!(a.group() == group_) || !(a.field() == field_))
    throw DescriptorMismatch("element does not belong to this filtration model");
  if (group_.is_free_abelian()) return free_coordinates(a);
  return row_times(cyclic_vector(a), basis_inverse_, field_);
}

FMatrix FiltrationModel::multiplication_matrix(const GroupRingElem& a) const {
  const std::size_t n = size();
  FMatrix out = zeros(n, n, field_);
  if (group_.is_free_abelian()) {
    const XExpansion ex = x_expansion(a, truncation_);
    std::vector<std::size_t> sum(group_.rank());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& beta = monomials_[i];
      for (const auto& [alpha, c] : ex) {
        if (degrees_[i] + std::accumulate(alpha.begin(), alpha.end(), std::size_t{0}) >= truncation_) continue;
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = alpha[k] + beta[k];
        out(i, monomial_index_.at(sum)) += c;
      }
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out.set_row(i, coordinates(basis_element(i) * a));
  return out;
}

GrPiece gr_piece(const GroupDescriptor& g, const FieldDescriptor& f, std::size_t s) {
  GrPiece piece;
  piece.group = g;
  piece.s = s;
  const FieldDescriptor field = f.is_field() ? f : FieldDescriptor::rationals();
  if (g.is_free_abelian()) {
    FiltrationModel model(g, field, s + 1);
    for (std::size_t i : model.indices_of_degree(s)) piece.basis.push_back(model.basis_element(i));
  } else {
    FiltrationModel model(g, field, 0);
    for (std::size_t i : model.indices_of_degree(s)) piece.basis.push_back(model.basis_element(i));
  }
  return piece;
}

}  // namespace ess
