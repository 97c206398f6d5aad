#pragma once

// Exact integer linear algebra: determinants, Smith normal form,
// unimodular inverses and modular rank.

#include <cstdint>
#include <optional>
#include <vector>

#include "k3lat/errors.hpp"
#include "k3lat/integer.hpp"
#include "k3lat/matrix.hpp"

namespace k3lat {

// Determinant by Bareiss fraction-free elimination. The 0x0 matrix has
// determinant 1.
inline Integer det_exact(const IntMatrix& a) {
  if (!a.square()) throw DimensionError("det_exact: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SmithForm {
  std::vector<Integer> d;  // min(rows, cols) entries, d[i] | d[i+1]
  IntMatrix u;             // rows x rows, unimodular
  IntMatrix v;             // cols x cols, unimodular
};

namespace detail {

template <bool Track>
struct SnfState {
  IntMatrix a, u, v;
};

template <bool Track>
void snf_reduce(SnfState<Track>& s) {
  IntMatrix& a = s.a;
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t r = std::min(m, n);

  auto row_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
    a.add_row(dst, src, k);
    if constexpr (Track) s.u.add_row(dst, src, k);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
    a.add_col(dst, src, k);
    if constexpr (Track) s.v.add_col(dst, src, k);
  };
  auto swap_r = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if constexpr (Track) s.u.swap_rows(x, y);
  };
  auto swap_c = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if constexpr (Track) s.v.swap_cols(x, y);
  };

  for (std::size_t t = 0; t < r; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const Integer& x = a(i, j);
        if (x == 0) continue;
        Integer ax = abs(x);
        if (!best || ax < best_abs) {
          best = {i, j};
          best_abs = std::move(ax);
          if (best_abs == 1) goto found;
        }
      }
  found:
    if (!best) break;
    swap_r(t, best->first);
    swap_c(t, best->second);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        row_op(i, t, -q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        col_op(j, t, -q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // Move the smallest remainder in row/column t onto the diagonal.
        std::size_t bi = t, bj = t;
        Integer ba = abs(a(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < ba) {
            ba = abs(a(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < ba) {
            ba = abs(a(t, j));
            bi = t;
            bj = j;
          }
        swap_r(t, bi);
        swap_c(t, bj);
        continue;
      }
      if (abs(a(t, t)) == 1) break;
      // Divisibility: fold a non-divisible row into the pivot row.
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (!bad) break;
      row_op(t, *bad, Integer(1));
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      if constexpr (Track) s.u.negate_row(t);
    }
  }
}

}  // namespace detail

// u * a * v = diag(d) with d[i] | d[i+1], d[i] >= 0.
inline SmithForm smith_normal_form(const IntMatrix& a) {
  detail::SnfState<true> s{a, IntMatrix::identity(a.rows()),
                           IntMatrix::identity(a.cols())};
  detail::snf_reduce(s);
  SmithForm out;
  const std::size_t r = std::min(a.rows(), a.cols());
  out.d.reserve(r);
  for (std::size_t i = 0; i < r; ++i) out.d.push_back(s.a(i, i));
  out.u = std::move(s.u);
  out.v = std::move(s.v);
  return out;
}

// Diagonal of the Smith form without the transforms; much cheaper for tall
// matrices (coboundary maps).
inline std::vector<Integer> smith_diagonal(const IntMatrix& a) {
  detail::SnfState<false> s{a, {}, {}};
  detail::snf_reduce(s);
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    d.push_back(s.a(i, i));
  return d;
}

// Invariant factors > 1 of the cokernel Z^rows / a Z^cols (torsion part).
inline std::vector<Integer> torsion_factors(const IntMatrix& a) {
  std::vector<Integer> out;
  for (auto& x : smith_diagonal(a))
    if (x > 1) out.push_back(std::move(x));
  return out;
}

inline std::size_t rank_from_smith(std::span<const Integer> d) {
  std::size_t r = 0;
  for (const auto& x : d)
    if (x != 0) ++r;
  return r;
}

// Exact inverse over Q by Gauss-Jordan.
inline Matrix<Rational> rational_inverse(const IntMatrix& a) {
  if (!a.square()) throw DimensionError("inverse: matrix is not square");
  const std::size_t n = a.rows();
  Matrix<Rational> m(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(a(i, j));
    m(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw DegeneracyError("inverse: matrix is singular");
    m.swap_rows(c, p);
    Rational inv = 1 / m(c, c);
    for (auto& x : m.row(c)) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rational k = -m(i, c);
      m.add_row(i, c, k);
    }
  }
  Matrix<Rational> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(i, n + j);
  return out;
}

inline IntMatrix unimodular_inverse(const IntMatrix& a) {
  auto inv = rational_inverse(a);
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Rational& x = inv(i, j);
      if (denominator(x) != 1)
        throw DomainError("unimodular_inverse: matrix is not unimodular");
      out(i, j) = numerator(x);
    }
  return out;
}

// Rank over F_p of a stream of rows, kept in echelon form. Rank over F_p
// never exceeds rank over Q.
class ModularEchelon {
 public:
  static constexpr std::uint64_t kPrime = 2147483647ULL;  // 2^31 - 1

  explicit ModularEchelon(std::size_t cols) : cols_(cols), pivot_of_(cols, -1) {}

  std::size_t rank() const noexcept { return rows_.size(); }

  // Entries are reduced mod p on entry. Returns true if the rank grew.
  bool insert(std::span<const std::int64_t> row) {
    std::vector<std::uint64_t> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = reduce(row[j]);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (r[j] == 0) continue;
      const int p = pivot_of_[j];
      if (p < 0) {
        const std::uint64_t inv = inverse(r[j]);
        for (std::size_t k = j; k < cols_; ++k) r[k] = mul(r[k], inv);
        pivot_of_[j] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(r));
        return true;
      }
      const auto& pr = rows_[static_cast<std::size_t>(p)];
      const std::uint64_t f = r[j];
      for (std::size_t k = j; k < cols_; ++k)
        if (pr[k]) r[k] = sub(r[k], mul(f, pr[k]));
    }
    return false;
  }

 private:
  static std::uint64_t reduce(std::int64_t x) {
    std::int64_t v = x % static_cast<std::int64_t>(kPrime);
    if (v < 0) v += static_cast<std::int64_t>(kPrime);
    return static_cast<std::uint64_t>(v);
  }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return a * b % kPrime; }
  static std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + kPrime - b;
  }
  static std::uint64_t inverse(std::uint64_t a) {
    std::uint64_t r = 1, e = kPrime - 2;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::size_t cols_;
  std::vector<int> pivot_of_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

}  // namespace k3lat
