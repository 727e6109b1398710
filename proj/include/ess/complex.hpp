#pragma once

// Equivariant chain complexes over kG: presentation 2-complexes via Fox
// calculus, explicit boundary matrices, base change and Betti numbers.
//
// Matrices follow the row convention: Mat(d_q) has dims[q] rows and
// dims[q-1] columns, row j being the boundary of the j-th q-cell, so that
// d_q d_{q-1} = 0 reads Mat(d_q) * Mat(d_{q-1}) = 0.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ess/groupring.hpp"
#include "ess/linalg.hpp"
#include "ess/matrix.hpp"

namespace ess {

/// Letters are +(i+1) for generator i and -(i+1) for its inverse.
using FreeWord = std::vector<int>;

struct Presentation {
  std::vector<std::string> generators;
  std::vector<FreeWord> relators;

  std::size_t arity() const { return generators.size(); }
  /// Index of a generator name; throws InputError if unknown.
  std::size_t index_of(std::string_view name) const;
};

/// Parses "abAB", "x1x2X1X2", "(xyXY)^3": lowercase names are generators,
/// capitalized names their inverses, and parenthesized groups may carry an
/// integer power (negative powers invert).
FreeWord parse_word(std::string_view text, const std::vector<std::string>& generators);
std::string word_to_string(const FreeWord& w, const std::vector<std::string>& generators);
FreeWord inverse_word(const FreeWord& w);

struct FoxTerm {
  int sign = 1;
  FreeWord prefix;
  bool operator==(const FoxTerm&) const = default;
};

/// d w / d x_i as an unsimplified list of signed prefixes.
std::vector<FoxTerm> fox_derivative(const FreeWord& w, std::size_t i, std::size_t arity);

/// A homomorphism from the free group (or from a group G) to `target`,
/// given by the images of the generators.
struct Epimorphism {
  GroupDescriptor target;
  std::vector<Exponent> images;

  Exponent image_of(const FreeWord& w) const;
  /// Throws InputError unless the images generate the target.
  void check_surjective() const;
  /// Throws InputError unless every relator maps to the identity.
  void check_relators(const Presentation& p) const;
};

using GRMatrix = Matrix<GroupRingElem>;

/// Image of a word in kG (coefficient 1).
GroupRingElem word_image(const FreeWord& w, const Epimorphism& nu, const FieldDescriptor& f);
/// Sum of signed prefix images.
GroupRingElem fox_image(const std::vector<FoxTerm>& terms, const Epimorphism& nu,
                        const FieldDescriptor& f);

class EquivariantComplex {
 public:
  /// Validates shapes, dims[0] = 1, augmentation of d_1 and d o d = 0.
  EquivariantComplex(FieldDescriptor field, GroupDescriptor group, std::vector<std::size_t> dims,
                     std::vector<GRMatrix> boundaries,
                     std::optional<std::vector<GRMatrix>> integral = std::nullopt,
                     std::string provenance = "matrices");

  const FieldDescriptor& field() const { return field_; }
  const GroupDescriptor& group() const { return group_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t top_degree() const { return dims_.size() - 1; }
  std::size_t dim(std::size_t q) const { return q < dims_.size() ? dims_[q] : 0; }
  /// Mat(d_q) for q >= 1; empty shapes outside the range.
  GRMatrix boundary(std::size_t q) const;
  bool has_integral_shadow() const { return integral_.has_value(); }
  /// Mat(d_q) with integer coefficients.
  GRMatrix integral_boundary(std::size_t q) const;
  const std::string& provenance() const { return provenance_; }

  /// Presentation data when built from a presentation.
  const std::optional<Presentation>& presentation() const { return presentation_; }
  void set_presentation(Presentation p) { presentation_ = std::move(p); }

 private:
  FieldDescriptor field_;
  GroupDescriptor group_;
  std::vector<std::size_t> dims_;
  std::vector<GRMatrix> boundaries_;  // boundaries_[q-1] = Mat(d_q)
  std::optional<std::vector<GRMatrix>> integral_;
  std::string provenance_;
  std::optional<Presentation> presentation_;
};

/// Throws CompositionError naming the degree where Mat(d_{q+1}) Mat(d_q) != 0.
void check_composition(const std::vector<GRMatrix>& boundaries, const GroupDescriptor& g,
                       const FieldDescriptor& f);

/// dims = [1, #generators, #relators], built over Z and converted to `field`.
EquivariantComplex presentation_complex(const Presentation& p, const Epimorphism& nu,
                                        const FieldDescriptor& field);

EquivariantComplex complex_from_matrices(const FieldDescriptor& field, const GroupDescriptor& group,
                                         const std::vector<std::size_t>& dims,
                                         const std::vector<GRMatrix>& boundaries);

/// Appends cells of the next degree with the given boundary matrix.
EquivariantComplex attach_cells(const EquivariantComplex& c, const GRMatrix& boundary,
                                const std::optional<GRMatrix>& integral_boundary = std::nullopt);

/// Pushes the complex along the surjection G -> target given by generator
/// images; requires well-definedness and surjectivity.
EquivariantComplex base_change(const EquivariantComplex& c, const GroupDescriptor& target,
                               const std::vector<Exponent>& images);
/// Coefficient change, using the integral shadow when the current field
/// cannot be mapped directly (e.g. Q -> F_p).
EquivariantComplex change_field(const EquivariantComplex& c, const FieldDescriptor& target);

/// Entrywise augmentation of Mat(d_q) (over the complex's field; over Q for
/// integer complexes).
FMatrix augmented_boundary(const EquivariantComplex& c, std::size_t q);
/// Same, from the integral shadow, mapped into `target`.
FMatrix augmented_integral_boundary(const EquivariantComplex& c, std::size_t q,
                                    const FieldDescriptor& target);

/// b_q(X, k) for q = 0..top degree.
std::vector<std::size_t> betti_numbers(const EquivariantComplex& c);
/// b_q(X, target) computed from the integral shadow.
std::vector<std::size_t> betti_numbers_over(const EquivariantComplex& c,
                                            const FieldDescriptor& target);

/// All augmentation-specialized boundary maps vanish.
bool is_minimal(const EquivariantComplex& c);
/// Positions (q, row, col) of nonzero specialized entries.
std::vector<std::array<std::size_t, 3>> minimality_violations(const EquivariantComplex& c);

/// Smith normal form over Z of the image vectors: true iff all invariant
/// factors are 1 and there are as many as the target rank.
bool integer_images_generate(const std::vector<Exponent>& images, std::size_t rank);

}  // namespace ess
