#include "ess/pages.hpp"

#include <algorithm>
#include <tuple>

#include "ess/errors.hpp"
#include "ess/modz.hpp"

namespace ess {

// ------------------------------------------------------ filtered complex

namespace {

FieldDescriptor require_field(const EquivariantComplex& c) {
  if (!c.field().is_field())
    throw UnsupportedInput("spectral sequence pages need field coefficients; reduce Z to Q or F_p first");
  return c.field();
}

}  // namespace

FilteredComplex::FilteredComplex(const EquivariantComplex& c, std::size_t truncation)
    : model_(c.group(), require_field(c), truncation), dims_(c.dims()) {
  const std::size_t d = model_.size();
  const FieldDescriptor& f = model_.field();
  differentials_.push_back(FMatrix::shape(0, 0));
  for (std::size_t q = 1; q <= c.top_degree(); ++q) {
    const GRMatrix b = c.boundary(q);
    FMatrix m = zeros(chain_dim(q), chain_dim(q - 1), f);
    for (std::size_t j = 0; j < b.rows(); ++j)
      for (std::size_t k = 0; k < b.cols(); ++k) {
        if (b(j, k).is_zero()) continue;
        const FMatrix block = model_.multiplication_matrix(b(j, k));
        for (std::size_t x = 0; x < d; ++x)
          for (std::size_t y = 0; y < d; ++y) m(j * d + x, k * d + y) = block(x, y);
      }
    differentials_.push_back(std::move(m));
  }
}

const FMatrix& FilteredComplex::differential(std::size_t q) const {
  if (q == 0 || q >= differentials_.size()) throw InputError("no differential in degree " + std::to_string(q));
  return differentials_[q];
}

FVector FilteredComplex::lift(std::size_t q, std::size_t b, const FVector& cell_coeffs) const {
  FVector v = zero_vector(chain_dim(q), field());
  for (std::size_t j = 0; j < cells(q); ++j) v[j * model_.size() + b] = cell_coeffs.at(j);
  return v;
}

// ------------------------------------------------------------ page table

std::size_t PageTable::dim(std::size_t s, std::size_t q) const {
  auto it = dims.find({s, q});
  return it == dims.end() ? 0 : it->second;
}

std::size_t PageTable::d_rank(std::size_t s, std::size_t q) const {
  auto it = d_ranks.find({s, q});
  return it == d_ranks.end() ? 0 : it->second;
}

std::size_t PageTable::row_total(std::size_t q) const {
  std::size_t total = 0;
  for (std::size_t s = 0; s <= s_max; ++s) total += dim(s, q);
  return total;
}

std::vector<PageEntry> PageTable::entries() const {
  std::vector<PageEntry> out;
  for (std::size_t s = 0; s <= s_max; ++s)
    for (std::size_t q = 0; q <= q_max; ++q) out.push_back({s, q, dim(s, q), d_rank(s, q)});
  return out;
}

bool PageTable::same_dims(const PageTable& o) const {
  for (std::size_t s = 0; s <= std::min(s_max, o.s_max); ++s)
    for (std::size_t q = 0; q <= std::min(q_max, o.q_max); ++q)
      if (dim(s, q) != o.dim(s, q)) return false;
  return true;
}

// ----------------------------------------------------------------- pages

namespace {

// Subspace arithmetic in the chain spaces of a FilteredComplex, with the
// cycle spaces Z^r_s(q) = {z in F^s : dz in F^{s+r}} cached.
class PageEngine {
 public:
  explicit PageEngine(const FilteredComplex& fc) : fc_(fc), f_(fc.field()) {}

  const FMatrix& cycles(std::int64_t r, std::int64_t s, std::size_t q) {
    const auto key = std::make_tuple(r, s, q);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const std::size_t lo = static_cast<std::size_t>(std::max<std::int64_t>(s, 0));
    const std::size_t hi = static_cast<std::size_t>(std::max<std::int64_t>(s + r, 0));
    const std::size_t n = fc_.chain_dim(q);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < n; ++i)
      if (fc_.degree(i) >= lo) rows.push_back(i);
    std::vector<std::size_t> cols;
    if (q >= 1 && r > 0)
      for (std::size_t j = 0; j < fc_.chain_dim(q - 1); ++j)
        if (fc_.degree(j) < hi) cols.push_back(j);
    FMatrix basis;
    if (cols.empty() || rows.empty()) {
      basis = zeros(rows.size(), n, f_);
      for (std::size_t i = 0; i < rows.size(); ++i) basis(i, rows[i]) = FieldElem::one(f_);
    } else {
      const FMatrix& d = fc_.differential(q);
      FMatrix sub = zeros(rows.size(), cols.size(), f_);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = d(rows[i], cols[j]);
      const FMatrix k = left_kernel(sub, f_);
      basis = zeros(k.rows(), n, f_);
      for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) basis(i, rows[j]) = k(i, j);
    }
    return cache_.emplace(key, std::move(basis)).first->second;
  }

  FMatrix boundary_of(const FMatrix& z, std::size_t q) {
    if (q == 0) return zeros(z.rows(), 0, f_);
    return fmultiply(z, fc_.differential(q), f_);
  }

  std::size_t e_dim(std::size_t r, std::size_t s, std::size_t q) {
    const auto ri = static_cast<std::int64_t>(r), si = static_cast<std::int64_t>(s);
    const FMatrix& z = cycles(ri, si, q);
    FMatrix den = cycles(ri - 1, si + 1, q);
    if (q + 1 <= fc_.top_degree()) den = stack(den, boundary_of(cycles(ri - 1, si - ri + 1, q + 1), q + 1));
    return rank_exact(z) - rank_exact(den);
  }

  std::size_t d_rank(std::size_t r, std::size_t s, std::size_t q) {
    if (q == 0) return 0;
    const auto ri = static_cast<std::int64_t>(r), si = static_cast<std::int64_t>(s);
    const FMatrix& target = cycles(ri - 1, si + ri + 1, q - 1);
    const FMatrix image = stack(boundary_of(cycles(ri, si, q), q), target);
    const FMatrix base = stack(boundary_of(cycles(ri - 1, si + 1, q), q), target);
    return rank_exact(image) - rank_exact(base);
  }

 private:
  const FilteredComplex& fc_;
  FieldDescriptor f_;
  std::map<std::tuple<std::int64_t, std::int64_t, std::size_t>, FMatrix> cache_;
};

}  // namespace

std::size_t pages_truncation(const GroupDescriptor& g, std::size_t r_max, std::size_t s_max) {
  // d^r out of column s lands in column s + r, whose page is exact once
  // J^M lies in the cycles Z^{r-1}_{s+r+1}, i.e. for s + 2r <= M.
  return g.is_cyclic() ? 0 : s_max + 2 * r_max;
}

PageSet compute_pages(const EquivariantComplex& c, std::size_t r_max, std::size_t s_max) {
  if (r_max == 0) throw InputError("the page count must be at least 1");
  PageSet out;
  out.truncation = pages_truncation(c.group(), r_max, s_max);
  FilteredComplex fc(c, out.truncation);
  PageEngine engine(fc);
  const std::size_t top = c.top_degree();
  for (std::size_t r = 1; r <= r_max; ++r) {
    PageTable t;
    t.r = r;
    t.s_max = s_max;
    t.q_max = top;
    bool quiet = true;
    for (std::size_t s = 0; s <= s_max; ++s)
      for (std::size_t q = 0; q <= top; ++q) {
        t.dims[{s, q}] = engine.e_dim(r, s, q);
        const std::size_t dr = engine.d_rank(r, s, q);
        t.d_ranks[{s, q}] = dr;
        if (dr) quiet = false;
      }
    if (quiet && !out.window_collapse) out.window_collapse = r;
    out.pages.push_back(std::move(t));
  }
  for (std::size_t r = 1; r < r_max; ++r) {
    const PageTable& now = out.page(r);
    const PageTable& next = out.page(r + 1);
    for (std::size_t s = 0; s <= s_max; ++s)
      for (std::size_t q = 0; q <= top; ++q) {
        const std::size_t in = (s >= r && q + 1 <= top) ? now.d_rank(s - r, q + 1) : 0;
        const std::size_t out_rank = now.d_rank(s, q);
        if (now.dim(s, q) < in + out_rank || next.dim(s, q) != now.dim(s, q) - in - out_rank)
          throw CrossCheckFailure("page bookkeeping fails at r = " + std::to_string(r) + ", (s, q) = (" +
                                  std::to_string(s) + ", " + std::to_string(q) + ")");
      }
  }
  return out;
}

std::size_t einf_page_bound(const EquivariantComplex& c) {
  const GroupDescriptor& g = c.group();
  if (g.is_cyclic()) {
    FiltrationModel model(g, require_field(c), 0);
    std::size_t finite = 0;
    for (auto d : model.degrees())
      if (d != kInfiniteDegree) finite = std::max(finite, d + 1);
    return std::max<std::size_t>(finite + 1, 2);
  }
  if (!(g.is_free_abelian() && g.rank() == 1))
    throw UnsupportedInput("E-infinity is only computed for G = Z or a finite cyclic group");
  const FieldDescriptor f = require_field(c);
  std::size_t worst = 0;
  for (std::size_t q = 1; q <= c.top_degree(); ++q) {
    auto s = laurent_snf(to_laurent_matrix(c.boundary(q), f), f);
    for (const auto& d : s.diagonal) worst = std::max(worst, split_t_minus_1(d).first);
  }
  return std::max<std::size_t>(3, worst + 2);
}

PageTable einf_window(const EquivariantComplex& c, std::size_t s_max) {
  return compute_pages(c, einf_page_bound(c), s_max).pages.back();
}

// -------------------------------------------------------------------- d1

HomologyBasis specialized_homology(const EquivariantComplex& c, std::size_t q) {
  const FieldDescriptor f =
      c.field().kind() == FieldKind::Integers ? FieldDescriptor::rationals() : c.field();
  return HomologyBasis(augmented_boundary(c, q), augmented_boundary(c, q + 1), c.dim(q), f);
}

FMatrix d1_from_pages(const EquivariantComplex& c, std::size_t s, std::size_t q) {
  const FieldDescriptor f = require_field(c);
  FilteredComplex fc(c, c.group().is_cyclic() ? 0 : s + 2);
  const auto& model = fc.model();
  const std::vector<std::size_t> src = model.indices_of_degree(s);
  const HomologyBasis hq = specialized_homology(c, q);
  const std::size_t hdim = hq.dimension();
  if (q == 0 || q > c.top_degree()) return zeros(src.size() * hdim, 0, f);
  const std::vector<std::size_t> dst = model.indices_of_degree(s + 1);
  const HomologyBasis hp = specialized_homology(c, q - 1);
  const std::size_t pdim = hp.dimension(), d = model.size(), n_prev = c.dim(q - 1);
  FMatrix out = zeros(src.size() * hdim, dst.size() * pdim, f);
  const FMatrix& reps = hq.representatives();
  for (std::size_t bi = 0; bi < src.size(); ++bi)
    for (std::size_t h = 0; h < hdim; ++h) {
      const FVector w = row_times(fc.lift(q, src[bi], reps.row(h)), fc.differential(q), f);
      for (std::size_t i = 0; i < w.size(); ++i)
        if (!w[i].is_zero() && fc.degree(i) <= s)
          throw CrossCheckFailure("lifted cycle does not raise the filtration degree");
      for (std::size_t bj = 0; bj < dst.size(); ++bj) {
        FVector u = zero_vector(n_prev, f);
        for (std::size_t k = 0; k < n_prev; ++k) u[k] = w[k * d + dst[bj]];
        const FVector coords = hp.coordinates(u);
        for (std::size_t x = 0; x < pdim; ++x) out(bi * hdim + h, bj * pdim + x) = coords[x];
      }
    }
  return out;
}

std::vector<FMatrix> d1_closed_form(const EquivariantComplex& input) {
  EquivariantComplex c = input;
  if (!c.field().is_field()) {
    if (!integral_homology(c).torsion_free())
      throw UnsupportedInput("closed-form d^1 over Z needs torsion-free integral homology");
    c = change_field(c, FieldDescriptor::rationals());
  }
  const FieldDescriptor f = c.field();
  const GroupDescriptor& g = c.group();
  FiltrationModel model(g, f, g.is_cyclic() ? 0 : 2);
  const std::vector<std::size_t> gr1 = model.indices_of_degree(1);
  // Coordinates of the classes of t_i - 1 in gr^1.
  std::vector<FVector> x_coords;
  for (std::size_t i = 0; i < g.arity(); ++i) {
    const FVector full = model.coordinates(GroupRingElem::x(g, f, i));
    FVector v;
    for (auto b : gr1) v.push_back(full[b]);
    x_coords.push_back(v);
  }
  std::vector<FMatrix> out{FMatrix::shape(0, 0)};
  for (std::size_t q = 1; q <= c.top_degree(); ++q) {
    const HomologyBasis hq = specialized_homology(c, q), hp = specialized_homology(c, q - 1);
    const std::size_t hdim = hq.dimension(), pdim = hp.dimension(), n_prev = c.dim(q - 1);
    const GRMatrix m = c.boundary(q);
    FMatrix mat = zeros(hdim, gr1.size() * pdim, f);
    for (std::size_t h = 0; h < hdim; ++h) {
      const FVector cyc = hq.representatives().row(h);
      // Linear parts of sum_j c_j M(j, k), one vector over gr^1 per k.
      std::vector<FVector> lin(n_prev, zero_vector(gr1.size(), f));
      for (std::size_t k = 0; k < n_prev; ++k) {
        GroupRingElem a(g, f);
        for (std::size_t j = 0; j < c.dim(q); ++j)
          if (!cyc[j].is_zero()) a += m(j, k).scaled(cyc[j]);
        const std::vector<FieldElem> lam = linear_part(a);
        for (std::size_t i = 0; i < lam.size(); ++i)
          for (std::size_t b = 0; b < gr1.size(); ++b) lin[k][b] += lam[i] * x_coords[i][b];
      }
      for (std::size_t b = 0; b < gr1.size(); ++b) {
        FVector u = zero_vector(n_prev, f);
        for (std::size_t k = 0; k < n_prev; ++k) u[k] = lin[k][b];
        const FVector coords = hp.coordinates(u);
        for (std::size_t x = 0; x < pdim; ++x) mat(h, b * pdim + x) = coords[x];
      }
    }
    out.push_back(std::move(mat));
  }
  return out;
}

// -------------------------------------------------------- finite groups

std::vector<std::size_t> direct_homology_dims(const EquivariantComplex& c) {
  if (!c.group().is_cyclic()) throw InputError("direct homology needs a finite cyclic group");
  FilteredComplex fc(c, 0);
  const std::size_t top = c.top_degree();
  std::vector<std::size_t> ranks(top + 2, 0);
  for (std::size_t q = 1; q <= top; ++q) ranks[q] = rank_exact(fc.differential(q));
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q <= top; ++q) out.push_back(fc.chain_dim(q) - ranks[q] - ranks[q + 1]);
  return out;
}

namespace {

void require_p_group(const EquivariantComplex& c, bool prime_order) {
  const GroupDescriptor& g = c.group();
  if (!g.is_cyclic() || !g.order_is_prime_power())
    throw InputError("expected G = Z_{p^r}, got " + g.to_string());
  const std::uint64_t p = prime_power_base(g.order());
  if (prime_order && g.order() != p) throw InputError("expected G = Z_p, got " + g.to_string());
  if (c.field().characteristic() != p)
    throw InputError("characteristic mismatch: " + c.field().to_string() + " with " + g.to_string());
}

}  // namespace

ReznikovResult reznikov_collapse(const EquivariantComplex& c) {
  require_p_group(c, false);
  const std::size_t n = c.group().order();
  ReznikovResult res;
  // (t-1)^{p^r} = t^{p^r} - 1 = 0, so d^r vanishes for r >= p^r.
  res.pages = compute_pages(c, n, n - 1);
  const PageTable& last = res.pages.pages.back();
  for (std::size_t q = 0; q <= c.top_degree(); ++q) res.einf_totals.push_back(last.row_total(q));
  res.direct_homology = direct_homology_dims(c);
  if (res.einf_totals != res.direct_homology)
    throw CrossCheckFailure("E-infinity totals disagree with the homology of kZ_{p^r} (x) C");
  return res;
}

JordanWitness jordan_block_witness(const EquivariantComplex& c, std::size_t q) {
  require_p_group(c, true);
  const FieldDescriptor f = c.field();
  JordanWitness w;
  w.q = q;
  const std::size_t b = specialized_homology(c, q).dimension();
  const std::size_t out_rank = q >= 1 ? rank_exact(d1_from_pages(c, 0, q)) : 0;
  const std::size_t in_rank = q + 1 <= c.top_degree() ? rank_exact(d1_from_pages(c, 0, q + 1)) : 0;
  w.acyclic = out_rank + in_rank == b;

  FilteredComplex fc(c, 0);
  const auto& model = fc.model();
  const std::size_t d = model.size(), n = fc.chain_dim(q);
  FMatrix cycles = q >= 1 ? left_kernel(fc.differential(q), f) : identity(n, f);
  FMatrix bounds = q + 1 <= c.top_degree() ? fc.differential(q + 1) : zeros(0, n, f);
  const FMatrix act = model.multiplication_matrix(GroupRingElem::x(c.group(), f, 0).pow(2));
  const std::size_t base = rank_exact(bounds);
  w.j2_kills = true;
  for (std::size_t i = 0; i < cycles.rows() && w.j2_kills; ++i) {
    const FVector row = cycles.row(i);
    FVector z = zero_vector(n, f);
    for (std::size_t cell = 0; cell < fc.cells(q); ++cell) {
      FVector block(row.begin() + static_cast<std::ptrdiff_t>(cell * d),
                    row.begin() + static_cast<std::ptrdiff_t>((cell + 1) * d));
      const FVector moved = row_times(block, act, f);
      for (std::size_t x = 0; x < d; ++x) z[cell * d + x] = moved[x];
    }
    FMatrix probe = bounds;
    probe.append_row(z);
    if (rank_exact(probe) != base) w.j2_kills = false;
  }
  return w;
}

}  // namespace ess
