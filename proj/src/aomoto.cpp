#include "ess/aomoto.hpp"

#include <map>
#include <numeric>
#include <sstream>

#include "ess/errors.hpp"
#include "ess/laurent.hpp"
#include "ess/pages.hpp"

namespace ess {

AomotoData aomoto_betti(const EquivariantComplex& c, const FieldDescriptor& k) {
  if (!(c.group().is_free_abelian() && c.group().rank() == 1))
    throw InputError("Aomoto Betti numbers via E^2 need G = Z; give a character for " + c.group().to_string());
  if (!k.is_field()) throw InputError("Aomoto Betti numbers need a field");
  const EquivariantComplex kc = c.field() == k ? c : change_field(c, k);
  const PageSet ps = compute_pages(kc, 2, 1);
  AomotoData out;
  out.route = "E2";
  for (std::size_t q = 0; q <= kc.top_degree(); ++q) {
    out.beta.push_back(ps.page(2).dim(1, q));
    out.ranks.push_back(ps.page(1).d_rank(1, q));
  }
  return out;
}

AomotoData aomoto_betti_character(const EquivariantComplex& c, const std::vector<std::int64_t>& chi,
                                  const FieldDescriptor& k) {
  if (!c.group().is_free_abelian()) throw InputError("characters are taken on a free abelian group");
  if (chi.size() != c.group().rank())
    throw InputError("character has " + std::to_string(chi.size()) + " entries, expected " +
                     std::to_string(c.group().rank()));
  std::int64_t g = 0;
  for (auto v : chi) g = std::gcd(g, v);
  const std::uint64_t p = k.characteristic();
  if (g == 0 || (p != 0 && static_cast<std::uint64_t>(g) % p == 0)) {
    // nu_k = 0: the Aomoto differential vanishes.
    AomotoData out;
    out.route = "E2";
    out.beta = betti_numbers(c.field() == k ? c : change_field(c, k));
    out.ranks.assign(out.beta.size(), 0);
    return out;
  }
  std::vector<Exponent> images;
  for (auto v : chi) images.push_back({v / g});
  return aomoto_betti(base_change(c, GroupDescriptor::free_abelian(1), images), k);
}

// ------------------------------------------------------- linear forms

bool LinearForm::is_zero() const {
  for (const auto& c : coeffs)
    if (!c.is_zero()) return false;
  return true;
}

FieldElem LinearForm::evaluate(const std::vector<FieldElem>& z) const {
  if (z.size() != coeffs.size())
    throw InputError("evaluation point has " + std::to_string(z.size()) + " entries, expected " +
                     std::to_string(coeffs.size()));
  FieldElem out = coeffs.empty() ? FieldElem() : FieldElem(coeffs[0].field());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out += coeffs[i] * z[i];
  return out;
}

std::string LinearForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    auto [neg, mag] = coefficient_text(coeffs[i]);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (mag != "1") os << mag << "*";
    os << "e" << (i + 1);
  }
  return first ? "0" : os.str();
}

bool UniversalAomoto::squares_to_zero() const {
  for (std::size_t q = 0; q + 1 < differentials.size(); ++q) {
    const auto& a = differentials[q];
    const auto& b = differentials[q + 1];
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < b.cols(); ++k) {
        // Symmetric coefficients of sum_j a(i,j) b(j,k) in Sym^2.
        std::map<std::pair<std::size_t, std::size_t>, FieldElem> quad;
        for (std::size_t j = 0; j < a.cols(); ++j)
          for (std::size_t x = 0; x < variables; ++x)
            for (std::size_t y = 0; y < variables; ++y) {
              const FieldElem term = a(i, j).coeffs[x] * b(j, k).coeffs[y];
              if (term.is_zero()) continue;
              auto key = std::minmax(x, y);
              auto it = quad.find(key);
              if (it == quad.end())
                quad.emplace(key, term);
              else
                it->second += term;
            }
        for (const auto& [key, v] : quad)
          if (!v.is_zero()) return false;
      }
  }
  return true;
}

UniversalAomoto universal_aomoto(const EquivariantComplex& input) {
  if (!input.group().is_free_abelian())
    throw InputError("the universal Aomoto complex needs G = Z^n, got " + input.group().to_string());
  const auto bad = minimality_violations(input);
  if (!bad.empty()) {
    std::string list;
    for (const auto& v : bad) {
      if (!list.empty()) list += ", ";
      list += "d_" + std::to_string(v[0]) + "(" + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")";
    }
    throw InputError("complex is not minimal; nonzero specialized entries: " + list);
  }
  const EquivariantComplex c =
      input.field().is_field() ? input : change_field(input, FieldDescriptor::rationals());
  UniversalAomoto u;
  u.field = c.field();
  u.variables = c.group().rank();
  u.dims = c.dims();
  for (std::size_t q = 1; q <= c.top_degree(); ++q) {
    const GRMatrix m = c.boundary(q);
    const std::size_t rows = c.dim(q - 1), cols = c.dim(q);
    if (rows == 0 || cols == 0) {
      u.differentials.push_back(Matrix<LinearForm>::shape(rows, cols));
      continue;
    }
    Matrix<LinearForm> d(rows, cols, LinearForm{});
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < rows; ++k) d(k, j) = LinearForm{linear_part(m(j, k))};
    u.differentials.push_back(std::move(d));
  }
  if (!u.squares_to_zero()) throw CrossCheckFailure("universal Aomoto differential does not square to zero");
  return u;
}

AomotoData aomoto_specialize(const UniversalAomoto& u, const std::vector<FieldElem>& z) {
  if (z.size() != u.variables)
    throw InputError("specialization point has " + std::to_string(z.size()) + " entries, expected " +
                     std::to_string(u.variables));
  std::vector<std::size_t> ranks(u.dims.size() + 1, 0);  // ranks[q] = rank D^{q-1}
  for (std::size_t q = 0; q < u.differentials.size(); ++q) {
    const auto& d = u.differentials[q];
    FMatrix m = zeros(d.rows(), d.cols(), u.field);
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) m(i, j) = d(i, j).evaluate(z);
    ranks[q + 1] = rank_exact(m);
  }
  AomotoData out;
  out.route = "universal";
  for (std::size_t q = 0; q < u.dims.size(); ++q) {
    out.beta.push_back(u.dims[q] - ranks[q] - ranks[q + 1]);
    out.ranks.push_back(ranks[q]);
  }
  return out;
}

}  // namespace ess
