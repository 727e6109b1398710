#pragma once

// Group rings kG for G = Z^n (Laurent polynomials in t1..tn) and G = Z_m
// (k[t]/(t^m - 1)), with augmentation, J-adic valuation and the graded
// pieces J^s/J^{s+1}.

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ess/field.hpp"
#include "ess/laurent.hpp"
#include "ess/linalg.hpp"

namespace ess {

enum class GroupKind { FreeAbelian, Cyclic };

class GroupDescriptor {
 public:
  GroupDescriptor() = default;  // Z

  static GroupDescriptor free_abelian(std::size_t n);
  static GroupDescriptor cyclic(std::uint64_t m);
  /// "Z", "Z^3", "Zmod:5"
  static GroupDescriptor parse(std::string_view text);

  GroupKind kind() const { return kind_; }
  bool is_free_abelian() const { return kind_ == GroupKind::FreeAbelian; }
  bool is_cyclic() const { return kind_ == GroupKind::Cyclic; }
  /// Rank n for Z^n.
  std::size_t rank() const { return rank_; }
  /// Order m for Z_m.
  std::uint64_t order() const { return order_; }
  /// Number of exponent coordinates: n for Z^n, 1 for Z_m.
  std::size_t arity() const { return kind_ == GroupKind::FreeAbelian ? rank_ : 1; }
  bool order_is_prime_power() const { return prime_power_; }

  std::string to_string() const;
  bool operator==(const GroupDescriptor& o) const {
    return kind_ == o.kind_ && rank_ == o.rank_ && order_ == o.order_;
  }

 private:
  GroupKind kind_ = GroupKind::FreeAbelian;
  std::size_t rank_ = 1;
  std::uint64_t order_ = 0;
  bool prime_power_ = false;
};

using Exponent = std::vector<std::int64_t>;

/// Sparse element of kG: exponent vector -> nonzero coefficient.
class GroupRingElem {
 public:
  GroupRingElem() = default;
  GroupRingElem(const GroupDescriptor& g, const FieldDescriptor& f) : group_(g), field_(f) {}

  static GroupRingElem zero(const GroupDescriptor& g, const FieldDescriptor& f) { return {g, f}; }
  static GroupRingElem constant(const GroupDescriptor& g, const FieldElem& c);
  static GroupRingElem one(const GroupDescriptor& g, const FieldDescriptor& f);
  static GroupRingElem monomial(const GroupDescriptor& g, const Exponent& e, const FieldElem& c);
  /// The group element g (coefficient 1).
  static GroupRingElem group_element(const GroupDescriptor& g, const FieldDescriptor& f,
                                     const Exponent& e);
  /// t_i - 1 (i is 0-based).
  static GroupRingElem x(const GroupDescriptor& g, const FieldDescriptor& f, std::size_t i);
  /// Parses sums/products/powers of t (or t1..tn) with rational coefficients.
  static GroupRingElem parse(const GroupDescriptor& g, const FieldDescriptor& f,
                             std::string_view text);
  static GroupRingElem from_laurent(const GroupDescriptor& g, const LaurentPoly& p);

  const GroupDescriptor& group() const { return group_; }
  const FieldDescriptor& field() const { return field_; }
  const std::map<Exponent, FieldElem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  FieldElem coeff(const Exponent& e) const;

  void add_term(Exponent e, const FieldElem& c);

  GroupRingElem operator+(const GroupRingElem& o) const;
  GroupRingElem operator-(const GroupRingElem& o) const;
  GroupRingElem operator*(const GroupRingElem& o) const;
  GroupRingElem operator-() const;
  GroupRingElem& operator+=(const GroupRingElem& o);
  GroupRingElem scaled(const FieldElem& c) const;
  GroupRingElem pow(std::uint64_t k) const;
  bool operator==(const GroupRingElem& o) const;

  /// Coefficient change (Z -> F_p, Z -> Q, ...), dropping vanishing terms.
  GroupRingElem converted(const FieldDescriptor& target) const;
  /// Image under the homomorphism G -> target sending generator i to images[i].
  GroupRingElem mapped(const GroupDescriptor& target, const std::vector<Exponent>& images) const;
  /// Only for G = Z.
  LaurentPoly to_laurent() const;

  std::string to_string() const;

 private:
  Exponent normalized(Exponent e) const;
  void check_same(const GroupRingElem& o) const;

  GroupDescriptor group_;
  FieldDescriptor field_;
  std::map<Exponent, FieldElem> terms_;
};

/// epsilon: sum of coefficients.
FieldElem augmentation(const GroupRingElem& a);

/// Largest n with a in J^n; nullopt stands for infinity (a = 0, or a lies in
/// the stable part of the J-adic chain of a cyclic group ring).
std::optional<std::size_t> j_valuation(const GroupRingElem& a);

/// dim_k J^s / J^{s+1}.
std::size_t gr_dimension(const GroupDescriptor& g, const FieldDescriptor& f, std::size_t s);

struct GrPiece {
  GroupDescriptor group;
  std::size_t s = 0;
  /// Representatives of a basis of J^s / J^{s+1}.
  std::vector<GroupRingElem> basis;
};
GrPiece gr_piece(const GroupDescriptor& g, const FieldDescriptor& f, std::size_t s);

/// Class of a modulo J^2, as coefficients of the classes of t_i - 1 (one
/// entry per exponent coordinate). The constant term is epsilon(a).
std::vector<FieldElem> linear_part(const GroupRingElem& a);

inline constexpr std::size_t kInfiniteDegree = std::numeric_limits<std::size_t>::max();

/// A finite-dimensional k-model of kG / J^M with a basis adapted to the
/// J-adic filtration: J^s / J^M is spanned by the basis vectors of degree
/// >= s. For Z^n the basis is the monomials prod (t_i - 1)^a_i with
/// |a| < M. For Z_m the whole ring is used (no truncation) and basis vectors
/// lying in every power of J get degree kInfiniteDegree.
class FiltrationModel {
 public:
  FiltrationModel(const GroupDescriptor& g, const FieldDescriptor& f, std::size_t truncation);

  const GroupDescriptor& group() const { return group_; }
  const FieldDescriptor& field() const { return field_; }
  std::size_t truncation() const { return truncation_; }
  std::size_t size() const { return degrees_.size(); }
  std::size_t degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<std::size_t>& degrees() const { return degrees_; }
  std::vector<std::size_t> indices_of_degree(std::size_t s) const;
  /// Basis vector i as an element of kG.
  GroupRingElem basis_element(std::size_t i) const;

  /// Coordinates of the image of a in kG / J^M.
  FVector coordinates(const GroupRingElem& a) const;
  /// Row i holds the coordinates of (basis_i * a).
  FMatrix multiplication_matrix(const GroupRingElem& a) const;

 private:
  FVector free_coordinates(const GroupRingElem& a) const;

  GroupDescriptor group_;
  FieldDescriptor field_;
  std::size_t truncation_;
  std::vector<std::size_t> degrees_;
  // Z^n: monomial exponents in basis order and their index.
  std::vector<std::vector<std::size_t>> monomials_;
  std::map<std::vector<std::size_t>, std::size_t> monomial_index_;
  // Z_m: basis vectors in the t^j basis, and the inverse change of basis.
  FMatrix basis_;
  FMatrix basis_inverse_;
};

}  // namespace ess
