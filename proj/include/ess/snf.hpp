#pragma once

// Smith normal form over a Euclidean ring, with transforms.
//
// Traits supply: norm(a) (comparable, for nonzero a), divmod(a, b) ->
// {q, r} with norm(r) < norm(b) or r = 0, normalize(a) -> {unit, n} with
// a = unit * n, unit_inverse(u), is_zero(a).

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ess/laurent.hpp"
#include "ess/matrix.hpp"

namespace ess {

template <class R>
struct SNFResult {
  Matrix<R> D;
  Matrix<R> U;     ///< m x m, invertible
  Matrix<R> V;     ///< n x n, invertible
  Matrix<R> Uinv;  ///< inverse of U
  std::size_t rank = 0;
  /// The first `rank` diagonal entries, normalized, each dividing the next.
  std::vector<R> diagonal;
};

struct IntegerTraits {
  using R = mpz_class;
  static bool is_zero(const R& a) { return a == 0; }
  static R norm(const R& a) { return abs(a); }
  static std::pair<R, R> divmod(const R& a, const R& b) {
    R q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {q, r};
  }
  static std::pair<R, R> normalize(const R& a) { return {a < 0 ? R(-1) : R(1), abs(a)}; }
  static R unit_inverse(const R& u) { return u; }
};

struct LaurentTraits {
  using R = LaurentPoly;
  static bool is_zero(const R& a) { return a.is_zero(); }
  static std::int64_t norm(const R& a) { return a.spread(); }
  static std::pair<R, R> divmod(const R& a, const R& b) { return a.divmod(b); }
  static std::pair<R, R> normalize(const R& a) { return a.normalize(); }
  static R unit_inverse(const R& u) {
    return LaurentPoly::monomial(field_inverse(u.leading()), -u.low());
  }
};

namespace snf_detail {

template <class R>
Matrix<R> identity_like(std::size_t n, const R& zero, const R& one) {
  if (n == 0) return Matrix<R>::shape(0, 0);
  Matrix<R> m(n, n, zero);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
  return m;
}

template <class R>
void add_row(Matrix<R>& m, std::size_t dst, std::size_t src, const R& c) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) = m(dst, j) + c * m(src, j);
}
template <class R>
void add_col(Matrix<R>& m, std::size_t dst, std::size_t src, const R& c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) = m(i, dst) + m(i, src) * c;
}
template <class R>
void scale_row(Matrix<R>& m, std::size_t i, const R& c) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) * c;
}
template <class R>
void scale_col(Matrix<R>& m, std::size_t j, const R& c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = m(i, j) * c;
}

}  // namespace snf_detail

/// Computes U A V = D. Pivots are chosen by minimal norm with ties broken
/// by lowest row, then lowest column.
template <class Traits>
SNFResult<typename Traits::R> smith_normal_form(const Matrix<typename Traits::R>& a,
                                                const typename Traits::R& zero,
                                                const typename Traits::R& one) {
  using R = typename Traits::R;
  using namespace snf_detail;
  const std::size_t m = a.rows(), n = a.cols();
  SNFResult<R> res;
  res.D = a;
  res.U = identity_like(m, zero, one);
  res.Uinv = identity_like(m, zero, one);
  res.V = identity_like(n, zero, one);
  Matrix<R>& d = res.D;

  auto row_add = [&](std::size_t dst, std::size_t src, const R& c) {  // row_dst += c row_src
    add_row(d, dst, src, c);
    add_row(res.U, dst, src, c);
    add_col(res.Uinv, src, dst, R(zero - c));
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const R& c) {  // col_dst += c col_src
    add_col(d, dst, src, c);
    add_col(res.V, dst, src, c);
  };
  auto row_swap = [&](std::size_t i, std::size_t j) {
    d.swap_rows(i, j);
    res.U.swap_rows(i, j);
    res.Uinv.swap_cols(i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    d.swap_cols(i, j);
    res.V.swap_cols(i, j);
  };

  std::size_t t = 0;
  for (; t < m && t < n; ++t) {
    // Smallest-norm nonzero entry in the trailing block.
    bool found = false;
    std::size_t pi = 0, pj = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (Traits::is_zero(d(i, j))) continue;
        if (!found || Traits::norm(d(i, j)) < Traits::norm(d(pi, pj))) {
          found = true;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    row_swap(t, pi);
    col_swap(t, pj);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (Traits::is_zero(d(i, t))) continue;
        auto [q, r] = Traits::divmod(d(i, t), d(t, t));
        row_add(i, t, R(zero - q));
        if (!Traits::is_zero(d(i, t))) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (Traits::is_zero(d(t, j))) continue;
        auto [q, r] = Traits::divmod(d(t, j), d(t, t));
        col_add(j, t, R(zero - q));
        if (!Traits::is_zero(d(t, j))) clean = false;
      }
      if (!clean) {
        // A remainder of smaller norm appeared in row or column t.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (!Traits::is_zero(d(i, t)) && Traits::norm(d(i, t)) < Traits::norm(d(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (!Traits::is_zero(d(t, j)) && Traits::norm(d(t, j)) < Traits::norm(d(bi, bj))) {
            bi = t;
            bj = j;
          }
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      // Divisibility of the trailing block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (Traits::is_zero(d(i, j))) continue;
          if (!Traits::is_zero(Traits::divmod(d(i, j), d(t, t)).second)) {
            row_add(t, i, one);
            divisible = false;
            break;
          }
        }
      if (divisible) break;
    }
    auto [unit, normalized] = Traits::normalize(d(t, t));
    const R inv = Traits::unit_inverse(unit);
    scale_row(d, t, inv);
    scale_row(res.U, t, inv);
    scale_col(res.Uinv, t, unit);
    res.diagonal.push_back(d(t, t));
  }
  res.rank = res.diagonal.size();
  return res;
}

}  // namespace ess
