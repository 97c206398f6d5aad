#pragma once

// Helpers shared by the test binaries: the --seed flag and independent
// oracles that do not go through the library code they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "k3lat/k3lat.hpp"

namespace k3lat::testkit {

inline std::uint64_t& seed() {
  static std::uint64_t s = 20240607;
  return s;
}

// Strips --seed=N / --seed N from argv.
inline void take_seed_flag(int& argc, char** argv) {
  int w = 1;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--seed=", 0) == 0) {
      seed() = std::stoull(a.substr(7));
    } else if (a == "--seed" && i + 1 < argc) {
      seed() = std::stoull(argv[++i]);
    } else {
      argv[w++] = argv[i];
    }
  }
  argc = w;
}

// Laplace expansion along the first row.
inline Integer cofactor_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix m(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != c) m(r - 1, kk++) = a(r, k);
    const Integer t = a(0, c) * cofactor_det(m);
    s += (c % 2 == 0) ? t : Integer(-t);
  }
  return s;
}

inline IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 0) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && rng() % 2) u(0, 0) = -1;
    return u;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  const int total = steps > 0 ? steps : static_cast<int>(3 * n);
  for (int s = 0; s < total; ++s) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) {
      if (rng() % 4 == 0) u.negate_col(i);
    } else {
      u.add_col(i, j, Integer(coef(rng)));
    }
  }
  return u;
}

inline IntMatrix random_matrix(std::size_t r, std::size_t c, int lo, int hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Sorted list of q-values ("num/den" mod 2) over every element of L*/L,
// computed as G^{-1} x mod Z^n for x in [0, |det|)^n.
inline std::vector<std::string> brute_q_values(const IntMatrix& g) {
  const std::size_t n = g.rows();
  const Integer det = abs(det_exact(g));
  const auto inv = rational_inverse(g);
  const std::int64_t d = to_int64(det);
  std::map<std::vector<Rational>, Rational> seen;
  std::vector<std::int64_t> x(n, 0);
  for (;;) {
    std::vector<Rational> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += inv(i, j) * x[j];
      // fractional part in [0, 1)
      Integer fl = numerator(s) / denominator(s);
      if (fl * denominator(s) > numerator(s)) fl -= 1;
      y[i] = s - fl;
    }
    if (!seen.count(y)) {
      Rational q = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q += y[i] * Rational(g(i, j)) * y[j];
      // q mod 2 in [0, 2)
      Rational half = q / 2;
      Integer fl = numerator(half) / denominator(half);
      if (fl * denominator(half) > numerator(half)) fl -= 1;
      seen[y] = q - 2 * Rational(fl);
    }
    std::size_t k = 0;
    while (k < n && ++x[k] == d) x[k++] = 0;
    if (k == n) break;
  }
  std::vector<std::string> out;
  for (const auto& [y, q] : seen) out.push_back(numerator(q).str() + "/" + denominator(q).str());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> form_q_values(const FiniteQuadraticForm& f) {
  std::vector<std::string> out;
  for (const auto& e : f.elements()) {
    const QMod2 v = f.q(e);
    out.push_back(v.str());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Reduced binary forms [a, 2b, c] (Gram [[a,b],[b,c]]) with a, c even,
// 0 <= 2b <= a <= c and ac - b^2 = det: one per GL2(Z)-class.
inline std::size_t binary_class_oracle(std::int64_t det) {
  std::size_t n = 0;
  for (std::int64_t a = 2; 3 * a * a <= 4 * det; a += 2)
    for (std::int64_t b = 0; 2 * b <= a; ++b) {
      if ((det + b * b) % a) continue;
      const std::int64_t c = (det + b * b) / a;
      if (c >= a && c % 2 == 0) ++n;
    }
  return n;
}

}  // namespace k3lat::testkit
