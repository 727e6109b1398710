#pragma once

// The spectral sequence of the J-adic filtration on C_*(X, kG).
//
// Filtration degrees s >= 0 are used throughout (F^s = J^s C), with
// d^r : E^r_s(q) -> E^r_{s+r}(q-1). The position (s, q) corresponds to total
// degree q + s in the second-quadrant indexing.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ess/complex.hpp"
#include "ess/groupring.hpp"
#include "ess/linalg.hpp"

namespace ess {

/// C_*(X, kG) / J^M C_*(X, kG) as a filtered k-linear complex. Coordinate
/// cell * D + b holds the coefficient of basis vector b of the model on the
/// given cell, D being the model size.
class FilteredComplex {
 public:
  FilteredComplex(const EquivariantComplex& c, std::size_t truncation);

  const FiltrationModel& model() const { return model_; }
  const FieldDescriptor& field() const { return model_.field(); }
  std::size_t top_degree() const { return dims_.size() - 1; }
  std::size_t cells(std::size_t q) const { return q < dims_.size() ? dims_[q] : 0; }
  std::size_t chain_dim(std::size_t q) const { return cells(q) * model_.size(); }
  std::size_t degree(std::size_t index) const { return model_.degree(index % model_.size()); }
  /// k-matrix of d_q, chain_dim(q) x chain_dim(q-1).
  const FMatrix& differential(std::size_t q) const;
  /// Chain with coefficient cell_coeffs[j] on basis vector b of cell j.
  FVector lift(std::size_t q, std::size_t b, const FVector& cell_coeffs) const;

 private:
  FiltrationModel model_;
  std::vector<std::size_t> dims_;
  std::vector<FMatrix> differentials_;  // index q, entry 0 empty
};

struct PageEntry {
  std::size_t s = 0;
  std::size_t q = 0;
  std::size_t dim = 0;
  std::size_t d_rank = 0;
};

struct PageTable {
  std::size_t r = 1;
  std::size_t s_max = 0;
  std::size_t q_max = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> dims;     ///< (s, q)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> d_ranks;  ///< rank of d^r out of (s, q)

  std::size_t dim(std::size_t s, std::size_t q) const;
  std::size_t d_rank(std::size_t s, std::size_t q) const;
  /// Sum over s of dim (s, q) within the window.
  std::size_t row_total(std::size_t q) const;
  std::vector<PageEntry> entries() const;
  bool same_dims(const PageTable& o) const;
};

struct PageSet {
  std::vector<PageTable> pages;  ///< pages[i] is E^{i+1}
  std::size_t truncation = 0;    ///< M, or 0 when the model is the whole ring
  /// First r whose differentials all vanish on the window.
  std::optional<std::size_t> window_collapse;

  const PageTable& page(std::size_t r) const { return pages.at(r - 1); }
};

/// Truncation level used by compute_pages for a given window.
std::size_t pages_truncation(const GroupDescriptor& g, std::size_t r_max, std::size_t s_max);

/// Pages E^1 .. E^{r_max} for 0 <= s <= s_max. Field coefficients only.
/// Throws CrossCheckFailure if dim E^{r+1} != dim E^r - rank in - rank out.
PageSet compute_pages(const EquivariantComplex& c, std::size_t r_max, std::size_t s_max);

/// For G = Z: a page count large enough for the window to show E^infinity,
/// from the (t-1)-adic valuations of the Smith invariants of the boundaries.
std::size_t einf_page_bound(const EquivariantComplex& c);
/// The E^infinity window for G = Z or a cyclic G.
PageTable einf_window(const EquivariantComplex& c, std::size_t s_max);

/// Homology representatives of C_*(X, k) used for the canonical bases.
HomologyBasis specialized_homology(const EquivariantComplex& c, std::size_t q);

/// d^1 : E^1_s(q) -> E^1_{s+1}(q-1) in the canonical bases
/// (gr^s basis) x (homology basis), gr-index major. Rows index the source.
FMatrix d1_from_pages(const EquivariantComplex& c, std::size_t s, std::size_t q);

/// d^1 out of column 0 from the linear parts of the boundary entries,
/// in the same bases as d1_from_pages(c, 0, q). Entry q of the result is the
/// matrix out of degree q (entry 0 is empty). Integer complexes need
/// torsion-free integral homology and are handled over Q.
std::vector<FMatrix> d1_closed_form(const EquivariantComplex& c);

struct ReznikovResult {
  PageSet pages;
  std::vector<std::size_t> einf_totals;     ///< sum over s of E^infinity_s(q)
  std::vector<std::size_t> direct_homology;  ///< dim_k H_q(X, kZ_{p^r})
};

/// G = Z_{p^r} over a field of characteristic p: pages up to p^r + 1 and
/// their agreement with direct homology. Throws CrossCheckFailure on
/// disagreement and InputError on a characteristic mismatch.
ReznikovResult reznikov_collapse(const EquivariantComplex& c);

/// dim_k H_q(X, kG) for finite G, from the k-linear complex kG (x) C.
std::vector<std::size_t> direct_homology_dims(const EquivariantComplex& c);

struct JordanWitness {
  std::size_t q = 0;
  /// The complex (H_*(X, F_p), d^1 at column 0) is exact at q.
  bool acyclic = false;
  /// (t-1)^2 kills every class of H_q(X, kZ_p).
  bool j2_kills = false;
};

/// G = Z_p over F_p.
JordanWitness jordan_block_witness(const EquivariantComplex& c, std::size_t q);

}  // namespace ess
