#include "ess/linalg.hpp"

#include "ess/errors.hpp"

namespace ess {

FMatrix zeros(std::size_t rows, std::size_t cols, const FieldDescriptor& f) {
  if (rows == 0 || cols == 0) return FMatrix::shape(rows, cols);
  return FMatrix(rows, cols, FieldElem(f));
}

FMatrix identity(std::size_t n, const FieldDescriptor& f) {
  FMatrix m = zeros(n, n, f);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElem::one(f);
  return m;
}

FVector zero_vector(std::size_t n, const FieldDescriptor& f) { return FVector(n, FieldElem(f)); }

FMatrix fmultiply(const FMatrix& a, const FMatrix& b, const FieldDescriptor& f) {
  return multiply(a, b, FieldElem(f));
}

FVector row_times(const FVector& x, const FMatrix& a, const FieldDescriptor& f) {
  if (x.size() != a.rows()) throw InputError("row_times: length mismatch");
  FVector out = zero_vector(a.cols(), f);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) out[j] += x[i] * a(i, j);
  }
  return out;
}

FMatrix stack(const FMatrix& a, const FMatrix& b) {
  if (a.rows() == 0) {
    if (b.rows() == 0) return FMatrix::shape(0, std::max(a.cols(), b.cols()));
    return b;
  }
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw InputError("stack: column mismatch");
  FMatrix out = a;
  for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
  return out;
}

bool is_zero_matrix(const FMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

FieldDescriptor common_field(const FMatrix& a, const FieldDescriptor& fallback) {
  if (a.rows() == 0 || a.cols() == 0) return fallback;
  const FieldDescriptor f = a(0, 0).field();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(a(i, j).field() == f))
        throw DescriptorMismatch("matrix mixes " + f.to_string() + " and " +
                                 a(i, j).field().to_string());
  return f;
}

namespace {

// Sparse incremental elimination. Rows are sorted (column, value) lists;
// stored rows have leading coefficient 1.
struct RationalDomain {
  using V = mpq_class;
  FieldDescriptor f;
  V none() const { return 0; }
  V from(const FieldElem& a) const { return a.rational(); }
  FieldElem to(const V& v) const { return FieldElem::rational(f, v); }
  static bool zero(const V& v) { return sgn(v) == 0; }
  V inv(const V& v) const { return 1 / v; }
  V mul(const V& a, const V& b) const { return a * b; }
  V sub(const V& a, const V& b) const { return a - b; }
};

struct PrimeDomain {
  using V = std::uint64_t;
  FieldDescriptor f;
  std::uint64_t p;
  V none() const { return 0; }
  V from(const FieldElem& a) const { return a.residue(); }
  FieldElem to(const V& v) const { return FieldElem::integer(f, static_cast<long long>(v)); }
  static bool zero(const V& v) { return v == 0; }
  V mul(const V& a, const V& b) const {
    return static_cast<V>(static_cast<unsigned __int128>(a) * b % p);
  }
  V sub(const V& a, const V& b) const { return a >= b ? a - b : a + (p - b); }
  V inv(const V& v) const {
    V result = 1, base = v, e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
};

struct GenericDomain {
  using V = FieldElem;
  FieldDescriptor f;
  V none() const { return FieldElem(f); }
  V from(const FieldElem& a) const { return a; }
  FieldElem to(const V& v) const { return v; }
  static bool zero(const V& v) { return v.is_zero(); }
  V inv(const V& v) const { return field_inverse(v); }
  V mul(const V& a, const V& b) const { return a * b; }
  V sub(const V& a, const V& b) const { return a - b; }
};

template <class D>
class SparseEchelon {
 public:
  using Row = std::vector<std::pair<std::size_t, typename D::V>>;

  SparseEchelon(D dom, std::size_t cols) : dom_(std::move(dom)), pivot_(cols, -1) {}

  Row row_of(const FMatrix& a, std::size_t i) const {
    Row r;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) r.emplace_back(j, dom_.from(a(i, j)));
    return r;
  }

  // r - c * s.
  Row axpy(const Row& r, const typename D::V& c, const Row& s) const {
    Row out;
    out.reserve(r.size() + s.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
      if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
        out.push_back(r[i++]);
      } else if (i == r.size() || s[j].first < r[i].first) {
        out.emplace_back(s[j].first, dom_.sub(dom_.none(), dom_.mul(c, s[j].second)));
        ++j;
      } else {
        typename D::V v = dom_.sub(r[i].second, dom_.mul(c, s[j].second));
        if (!D::zero(v)) out.emplace_back(r[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  bool insert(Row r) {
    while (!r.empty()) {
      const long idx = pivot_[r.front().first];
      if (idx < 0) {
        const typename D::V inv = dom_.inv(r.front().second);
        for (auto& [c, v] : r) v = dom_.mul(v, inv);
        pivot_[r.front().first] = static_cast<long>(rows_.size());
        rows_.push_back(std::move(r));
        return true;
      }
      const typename D::V c = r.front().second;
      r = axpy(r, c, rows_[static_cast<std::size_t>(idx)]);
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }

  // Reduced rows in pivot order.
  Echelon reduced() {
    Echelon e;
    const std::size_t n = pivot_.size();
    for (std::size_t c = 0; c < n; ++c)
      if (pivot_[c] >= 0) e.pivots.push_back(c);
    for (std::size_t k = e.pivots.size(); k-- > 0;) {
      Row& r = rows_[static_cast<std::size_t>(pivot_[e.pivots[k]])];
      for (std::size_t pos = 1; pos < r.size();) {
        const long idx = pivot_[r[pos].first];
        if (idx < 0) {
          ++pos;
          continue;
        }
        const typename D::V c = r[pos].second;
        r = axpy(r, c, rows_[static_cast<std::size_t>(idx)]);
      }
    }
    if (e.pivots.empty() || n == 0) {
      e.reduced = FMatrix::shape(0, n);
      return e;
    }
    e.reduced = FMatrix(e.pivots.size(), n, dom_.to(dom_.none()));
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
      for (const auto& [c, v] : rows_[static_cast<std::size_t>(pivot_[e.pivots[k]])]) e.reduced(k, c) = dom_.to(v);
    return e;
  }

 private:
  D dom_;
  std::vector<long> pivot_;
  std::vector<Row> rows_;
};

template <class F>
auto with_domain(const FieldDescriptor& f, F&& fn) {
  switch (f.kind()) {
    case FieldKind::Integers:
    case FieldKind::Rationals: return fn(RationalDomain{FieldDescriptor::rationals()});
    case FieldKind::PrimeField: return fn(PrimeDomain{f, f.prime()});
    case FieldKind::Cyclotomic: break;
  }
  return fn(GenericDomain{f});
}

// In-place Gauss-Jordan elimination; returns pivot columns.
std::vector<std::size_t> gauss_jordan(FMatrix& w, bool full_reduce) {
  const std::size_t m = w.rows(), n = w.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t piv = m;
    for (std::size_t i = r; i < m; ++i)
      if (!w(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv == m) continue;
    w.swap_rows(piv, r);
    const FieldElem inv = field_inverse(w(r, col));
    for (std::size_t j = col; j < n; ++j)
      if (!w(r, j).is_zero()) w(r, j) = w(r, j) * inv;
    const std::size_t start = full_reduce ? 0 : r + 1;
    for (std::size_t i = start; i < m; ++i) {
      if (i == r || w(i, col).is_zero()) continue;
      const FieldElem factor = w(i, col);
      for (std::size_t j = col; j < n; ++j)
        if (!w(r, j).is_zero()) w(i, j) -= factor * w(r, j);
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank_exact(const FMatrix& a) {
  if (a.empty()) return 0;
  const FieldDescriptor f = common_field(a, FieldDescriptor::rationals());
  return with_domain(f, [&](auto dom) {
    SparseEchelon<decltype(dom)> ech(dom, a.cols());
    for (std::size_t i = 0; i < a.rows() && ech.rank() < a.cols(); ++i) ech.insert(ech.row_of(a, i));
    return ech.rank();
  });
}

Echelon reduced_echelon(const FMatrix& a, const FieldDescriptor& f) {
  Echelon e;
  if (a.rows() == 0) {
    e.reduced = FMatrix::shape(0, a.cols());
    return e;
  }
  if (a.cols() == 0) {
    e.reduced = FMatrix::shape(0, 0);
    return e;
  }
  const FieldDescriptor field = common_field(a, f);
  return with_domain(field, [&](auto dom) {
    SparseEchelon<decltype(dom)> ech(dom, a.cols());
    for (std::size_t i = 0; i < a.rows() && ech.rank() < a.cols(); ++i) ech.insert(ech.row_of(a, i));
    return ech.reduced();
  });
}

FMatrix nullspace(const FMatrix& a, const FieldDescriptor& f) {
  const std::size_t n = a.cols();
  FieldDescriptor field = a.empty() ? f : common_field(a, f);
  if (field.kind() == FieldKind::Integers) field = FieldDescriptor::rationals();
  Echelon e = reduced_echelon(a, field);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  FMatrix basis = FMatrix::shape(0, n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    FVector v = zero_vector(n, field);
    v[free] = FieldElem::one(field);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    basis.append_row(v);
  }
  return basis;
}

FMatrix left_kernel(const FMatrix& a, const FieldDescriptor& f) {
  return nullspace(a.transpose(), f);
}

std::optional<FVector> solve_left(const FMatrix& a, const FVector& b, const FieldDescriptor& f) {
  if (b.size() != a.cols()) throw InputError("solve_left: length mismatch");
  FieldDescriptor field = f.kind() == FieldKind::Integers ? FieldDescriptor::rationals() : f;
  const std::size_t m = a.rows(), n = a.cols();
  // Solve A^T x^T = b^T via the augmented matrix [A^T | b^T].
  if (m == 0) {
    for (const auto& v : b)
      if (!v.is_zero()) return std::nullopt;
    return FVector{};
  }
  FMatrix aug = zeros(n, m + 1, field);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) aug(j, i) = convert_scalar(a(i, j), field);
  for (std::size_t j = 0; j < n; ++j) aug(j, m) = convert_scalar(b[j], field);
  if (n == 0) return zero_vector(m, field);
  std::vector<std::size_t> pivots = gauss_jordan(aug, true);
  FVector x = zero_vector(m, field);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m) return std::nullopt;
    x[pivots[i]] = aug(i, m);
  }
  return x;
}

HomologyBasis::HomologyBasis(const FMatrix& outgoing, const FMatrix& incoming, std::size_t n,
                             const FieldDescriptor& f)
    : field_(f.kind() == FieldKind::Integers ? FieldDescriptor::rationals() : f),
      n_(n),
      outgoing_(outgoing) {
  if (outgoing.rows() != n || incoming.cols() != n)
    throw InputError("HomologyBasis: shape mismatch");
  boundary_basis_ = reduced_echelon(incoming, field_).reduced;
  if (boundary_basis_.cols() != n) boundary_basis_ = FMatrix::shape(0, n);
  FMatrix cycles = outgoing.cols() == 0 ? identity(n, field_) : left_kernel(outgoing, field_);
  reps_ = FMatrix::shape(0, n);
  FMatrix span = boundary_basis_;
  std::size_t span_rank = span.rows();
  for (std::size_t i = 0; i < cycles.rows(); ++i) {
    FMatrix trial = stack(span, FMatrix::shape(0, n));
    trial.append_row(cycles.row(i));
    const std::size_t r = rank_exact(trial);
    if (r > span_rank) {
      span = std::move(trial);
      span_rank = r;
      reps_.append_row(cycles.row(i));
    }
  }
  combined_ = stack(reps_, boundary_basis_);
  if (combined_.cols() != n) combined_ = FMatrix::shape(0, n);
}

FVector HomologyBasis::coordinates(const FVector& cycle) const {
  if (cycle.size() != n_) throw InputError("HomologyBasis::coordinates: length mismatch");
  if (outgoing_.cols() > 0) {
    FVector img = row_times(cycle, outgoing_, field_);
    for (const auto& v : img)
      if (!v.is_zero()) throw CrossCheckFailure("HomologyBasis::coordinates: not a cycle");
  }
  auto sol = solve_left(combined_, cycle, field_);
  if (!sol) throw CrossCheckFailure("HomologyBasis::coordinates: cycle outside span");
  FVector out(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(reps_.rows()));
  return out;
}

}  // namespace ess
