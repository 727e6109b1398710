#pragma once

// Aomoto complexes: Betti numbers beta_q(X, nu_k) read off the E^2 page for
// G = Z, and the universal Aomoto complex of a minimal complex over kZ^n.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "ess/complex.hpp"

namespace ess {

struct AomotoData {
  std::vector<std::size_t> beta;
  /// Rank of the differential out of degree q (entry 0 is 0).
  std::vector<std::size_t> ranks;
  std::string route;  ///< "E2" or "universal"
};

/// beta_q = dim E^2_1(q) of the spectral sequence over kZ, for a complex
/// over G = Z. The complex is moved to the field k first (integral shadow
/// for Z -> F_p).
AomotoData aomoto_betti(const EquivariantComplex& c, const FieldDescriptor& k);

/// Same for a complex over Z^n and an arbitrary character chi in Z^n:
/// chi = 0 (or chi divisible by char k) gives the ordinary Betti numbers,
/// otherwise chi / gcd(chi) defines the epimorphism onto Z.
AomotoData aomoto_betti_character(const EquivariantComplex& c, const std::vector<std::int64_t>& chi,
                                  const FieldDescriptor& k);

/// A linear form sum c_i e_i.
struct LinearForm {
  std::vector<FieldElem> coeffs;

  bool is_zero() const;
  FieldElem evaluate(const std::vector<FieldElem>& z) const;
  /// "2*e1 - e3"; "0" for the zero form.
  std::string to_string() const;
  bool operator==(const LinearForm&) const = default;
};

/// Entries in the cohomological row convention: a cochain is a row vector
/// and D^q maps degree q to degree q + 1 as v -> v D^q.
struct UniversalAomoto {
  FieldDescriptor field;
  std::size_t variables = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix<LinearForm>> differentials;  ///< differentials[q] = D^q

  /// D^{q+1} o D^q = 0 with exact quadratic-form arithmetic.
  bool squares_to_zero() const;
};

/// D^{q-1} = transpose of Mat(d_q) modulo J^2. Requires a minimal complex
/// over kZ^n; throws InputError listing the offending entries otherwise.
UniversalAomoto universal_aomoto(const EquivariantComplex& c);

/// beta_q of the specialization e_i -> z_i.
AomotoData aomoto_specialize(const UniversalAomoto& u, const std::vector<FieldElem>& z);

}  // namespace ess
