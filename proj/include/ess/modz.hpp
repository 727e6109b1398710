#pragma once

// Modules over the PID k[t, t^-1] and over Z: Smith normal forms, the
// primary decomposition of H_q(X, kZ), its associated graded k[x]-module,
// and torsion in integral homology.

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ess/complex.hpp"
#include "ess/laurent.hpp"
#include "ess/snf.hpp"

namespace ess {

using LMatrix = Matrix<LaurentPoly>;
using ZMatrix = Matrix<mpz_class>;

SNFResult<LaurentPoly> laurent_snf(const LMatrix& a, const FieldDescriptor& f);
SNFResult<mpz_class> integer_snf(const ZMatrix& a);

LMatrix lmultiply(const LMatrix& a, const LMatrix& b, const FieldDescriptor& f);

/// Entrywise conversion of a matrix over kZ.
LMatrix to_laurent_matrix(const GRMatrix& m, const FieldDescriptor& f);

struct OtherPrimary {
  LaurentPoly poly;  ///< normalized, poly(1) != 0, not factored further
  std::size_t exp = 1;
  std::size_t mult = 1;
};

struct LaurentModuleDecomp {
  std::size_t q = 0;
  FieldDescriptor field;
  std::size_t free_rank = 0;
  /// Normalized non-unit invariant factors, each dividing the next.
  std::vector<LaurentPoly> invariant_factors;
  /// Sizes of the (t-1)-primary cyclic summands, ascending.
  std::vector<std::size_t> t_minus_1_blocks;
  std::vector<OtherPrimary> other_primary;

  /// The J-adic filtration of H_q is separated iff nothing beyond the free
  /// and (t-1)-primary parts is present.
  bool separated() const { return other_primary.empty(); }
};

/// H_q(X, kZ) for a complex over Z. Integer complexes are treated over Q.
LaurentModuleDecomp homology_decomposition(const EquivariantComplex& c, std::size_t q);

/// Splits a normalized nonzero polynomial as (t-1)^e * g.
std::pair<std::size_t, LaurentPoly> split_t_minus_1(const LaurentPoly& f);

/// gr_J H_q = k[x]^free (+) sum k[x]/x^b.
struct GrModule {
  std::size_t free_rank = 0;
  std::vector<std::size_t> blocks;
  std::size_t dim(std::size_t s) const;
};

GrModule einf_gr_module(const LaurentModuleDecomp& d);

/// H_q(X, Z) from the augmentation-specialized integral shadow.
struct IntegralHomology {
  std::vector<std::size_t> free_ranks;
  /// Invariant factors > 1 of H_q.
  std::vector<std::vector<mpz_class>> torsion;
  bool torsion_free(std::size_t q) const { return torsion.at(q).empty(); }
  bool torsion_free() const;
};

IntegralHomology integral_homology(const EquivariantComplex& c);
/// Per-degree torsion-free flags; throws UnsupportedInput without a shadow.
std::vector<bool> integral_torsion_check(const EquivariantComplex& c);

struct MonodromyDegree {
  std::size_t q = 0;
  std::size_t beta = 0;  ///< Aomoto Betti number via E^2
  LaurentModuleDecomp decomposition;
  /// H_q finite-dimensional with (t-1)-blocks of size <= 1.
  bool snf_trivial = false;
  /// E^infinity_1(q) = 0 on the spectral sequence side.
  bool pages_trivial = false;
};

struct MonodromyReport {
  std::vector<MonodromyDegree> degrees;
  /// verdicts[k]: the equivalent conditions hold for all q <= k.
  std::vector<bool> verdicts;
};

/// G = Z. Throws CrossCheckFailure if the three routes ever disagree.
MonodromyReport monodromy_report(const EquivariantComplex& c, std::size_t k_max);

}  // namespace ess
