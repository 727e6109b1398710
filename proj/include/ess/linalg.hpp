#pragma once

// Exact linear algebra over the coefficient fields of field.hpp.
//
// Vectors are rows. A matrix A acts on row vectors from the right (x -> xA),
// which matches how boundary matrices are stored throughout the library.

#include <optional>
#include <vector>

#include "ess/field.hpp"
#include "ess/matrix.hpp"

namespace ess {

using FMatrix = Matrix<FieldElem>;
using FVector = std::vector<FieldElem>;

FMatrix zeros(std::size_t rows, std::size_t cols, const FieldDescriptor& f);
FMatrix identity(std::size_t n, const FieldDescriptor& f);
FVector zero_vector(std::size_t n, const FieldDescriptor& f);
FMatrix fmultiply(const FMatrix& a, const FMatrix& b, const FieldDescriptor& f);
FVector row_times(const FVector& x, const FMatrix& a, const FieldDescriptor& f);
/// Rows of `a` followed by rows of `b`.
FMatrix stack(const FMatrix& a, const FMatrix& b);
bool is_zero_matrix(const FMatrix& a);

/// The single field shared by all entries; throws DescriptorMismatch when
/// entries disagree. Empty matrices report `fallback`.
FieldDescriptor common_field(const FMatrix& a, const FieldDescriptor& fallback);

/// Rank over the field (over Q for integer matrices). Q and Z use
/// fraction-free Bareiss elimination; F_p and Q(zeta) use Gaussian
/// elimination. Pivots: first nonzero entry scanning rows top-down within
/// each column, columns left to right.
std::size_t rank_exact(const FMatrix& a);

struct Echelon {
  FMatrix reduced;                  ///< reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  ///< pivot column of each row
};

/// Reduced row echelon form. Integer input is treated over Q.
Echelon reduced_echelon(const FMatrix& a, const FieldDescriptor& f);

/// Basis (as rows) of {v : A v^T = 0}.
FMatrix nullspace(const FMatrix& a, const FieldDescriptor& f);
/// Basis (as rows) of {x : x A = 0}.
FMatrix left_kernel(const FMatrix& a, const FieldDescriptor& f);
/// Some x with x A = b, if one exists.
std::optional<FVector> solve_left(const FMatrix& a, const FVector& b, const FieldDescriptor& f);

/// Homology of C_{q+1} -> C_q -> C_{q-1} at C_q, with a deterministic basis
/// of cycle representatives: a cycle is taken when it is independent of the
/// boundaries and of the cycles already chosen, scanning the echelon basis
/// of the cycle space in order.
class HomologyBasis {
 public:
  /// `outgoing` is n x n_{q-1} (boundary out of degree q); `incoming` is
  /// n_{q+1} x n (boundary into degree q).
  HomologyBasis(const FMatrix& outgoing, const FMatrix& incoming, std::size_t n,
                const FieldDescriptor& f);

  std::size_t dimension() const { return reps_.rows(); }
  const FMatrix& representatives() const { return reps_; }
  const FMatrix& boundaries() const { return boundary_basis_; }
  /// Coordinates of the class of `cycle`; throws if `cycle` is not a cycle.
  FVector coordinates(const FVector& cycle) const;

 private:
  FieldDescriptor field_;
  std::size_t n_ = 0;
  FMatrix outgoing_;
  FMatrix reps_;
  FMatrix boundary_basis_;
  FMatrix combined_;  // reps_ stacked over boundary_basis_
};

}  // namespace ess
