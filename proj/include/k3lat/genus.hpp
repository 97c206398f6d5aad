#pragma once

// Even positive-definite lattices of rank <= 3: enumeration of reduced
// Gram matrices of a given determinant, exact isometry testing, and the
// number of isometry classes in a genus fixed by a discriminant form.

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <vector>

#include "k3lat/discform.hpp"
#include "k3lat/errors.hpp"
#include "k3lat/intlat.hpp"
#include "k3lat/lattice.hpp"

namespace k3lat {

inline constexpr std::int64_t kMaxGenusDet = 100000;

// Even positive-definite Gram matrix of rank 1..3 with ascending diagonal
// and 2|g_ij| <= g_ii for i < j.
class ReducedForm {
 public:
  explicit ReducedForm(IntMatrix gram) : gram_(std::move(gram)) {
    const std::size_t n = gram_.rows();
    if (!gram_.symmetric() || n < 1 || n > 3)
      throw DomainError("reduced form: expected a symmetric Gram matrix of rank 1..3");
    for (std::size_t i = 0; i < n; ++i) {
      if (gram_(i, i) % 2 != 0) throw DomainError("reduced form: lattice is not even");
      if (i + 1 < n && gram_(i, i) > gram_(i + 1, i + 1))
        throw DomainError("reduced form: diagonal must ascend");
      for (std::size_t j = i + 1; j < n; ++j)
        if (2 * abs(gram_(i, j)) > gram_(i, i))
          throw DomainError("reduced form: off-diagonal entry too large");
    }
    if (!is_positive_definite(gram_))
      throw DomainError("reduced form: not positive definite");
  }

  const IntMatrix& gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return gram_.rows(); }
  Integer det() const { return det_exact(gram_); }

  friend bool operator==(const ReducedForm& a, const ReducedForm& b) {
    return a.gram_ == b.gram_;
  }

 private:
  IntMatrix gram_;
};

struct GenusSpec {
  int rank = 1;
  std::int64_t det = 1;
  // Empty means "any discriminant form": all classes of the given det.
  std::optional<FiniteQuadraticForm> disc;
};

using IntVector = std::vector<std::int64_t>;

inline std::int64_t norm(const IntMatrix& g, const IntVector& x) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      s += x[i] * to_int64(g(i, j)) * x[j];
  return s;
}

inline std::int64_t inner(const IntMatrix& g, const IntVector& x, const IntVector& y) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      s += x[i] * to_int64(g(i, j)) * y[j];
  return s;
}

// All nonzero x with x^T G x <= max_norm, by completing squares:
// Q(x) = sum_i c_i (x_i + sum_{j>i} m_ij x_j)^2 with exact rational c, m.
// Coordinates are fixed from the last one down, each within the range left
// by the remaining budget.
inline std::vector<IntVector> short_vectors(const IntMatrix& g, std::int64_t max_norm) {
  const std::size_t n = g.rows();
  if (!is_positive_definite(g))
    throw DomainError("short_vectors: Gram matrix must be positive definite");
  Matrix<Rational> m(n, n);
  std::vector<Rational> c(n);
  {
    Matrix<Rational> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(g(i, j));
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) m(i, j) = a(i, j) / c[i];
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = i + 1; k < n; ++k) a(j, k) -= m(i, j) * a(i, k);
    }
  }
  std::vector<IntVector> out;
  IntVector x(n, 0);
  auto floor_q = [](const Rational& r) {
    Integer f = numerator(r) / denominator(r);
    if (f * denominator(r) > numerator(r)) f -= 1;
    return f;
  };
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t level,
                                                              const Rational& budget) {
    const std::size_t i = level - 1;
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= m(i, j) * x[j];
    // c_i (x_i - center)^2 <= budget
    const Integer span = isqrt(floor_q(budget / c[i])) + 1;
    const Integer mid = floor_q(center);
    for (Integer v = mid - span; v <= mid + span + 1; ++v) {
      const Rational d = Rational(v) - center;
      const Rational used = c[i] * d * d;
      if (used > budget) continue;
      x[i] = to_int64(v);
      if (i == 0) {
        const std::int64_t q = norm(g, x);
        if (q > 0) out.push_back(x);
      } else {
        rec(i, budget - used);
      }
    }
    x[i] = 0;
  };
  if (n > 0) rec(n, Rational(max_norm));
  return out;
}

// Number of vectors of each norm up to max_norm.
inline std::map<std::int64_t, std::size_t> vector_counts(const IntMatrix& g,
                                                        std::int64_t max_norm) {
  std::map<std::int64_t, std::size_t> out;
  for (const auto& v : short_vectors(g, max_norm)) ++out[norm(g, v)];
  return out;
}

// Integral isometry test for positive-definite Gram matrices of equal rank:
// basis vectors of a are sent to vectors of b with matching inner products.
inline bool is_isometric(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("is_isometric: ranks differ");
  if (det_exact(a) != det_exact(b)) return false;
  const std::size_t n = a.rows();
  auto max_diag_of = [n](const IntMatrix& g) {
    std::int64_t m = 0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, to_int64(g(i, i)));
    return m;
  };
  // Map the basis with the smaller norms; the relation is symmetric.
  if (max_diag_of(a) > max_diag_of(b)) return is_isometric(b, a);
  const std::int64_t max_diag = max_diag_of(a);
  if (vector_counts(a, max_diag) != vector_counts(b, max_diag)) return false;
  const auto vecs = short_vectors(b, max_diag);
  std::vector<std::vector<std::size_t>> cands(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < vecs.size(); ++k)
      if (norm(b, vecs[k]) == a(i, i)) cands[i].push_back(k);
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t)> dfs = [&](std::size_t i) {
    if (i == n) {
      IntMatrix m(n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) m(r, c) = vecs[chosen[c]][r];
      return abs(det_exact(m)) == 1;
    }
    for (std::size_t k : cands[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (inner(b, vecs[k], vecs[chosen[j]]) != a(i, j)) ok = false;
      if (!ok) continue;
      chosen.push_back(k);
      if (dfs(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return dfs(0);
}

inline bool is_isometric(const ReducedForm& a, const ReducedForm& b) {
  return is_isometric(a.gram(), b.gram());
}

namespace detail {

// Reduced candidates with a fixed leading entry g11. Signs of basis
// vectors 2 and 3 are fixed so that g12, g13 >= 0.
inline std::vector<IntMatrix> reduced_candidates(int rank, std::int64_t det, std::int64_t g11) {
  std::vector<IntMatrix> out;
  if (rank == 1) {
    if (g11 == det) out.push_back(IntMatrix{{Integer(det)}});
    return out;
  }
  if (rank == 2) {
    for (std::int64_t b = 0; 2 * b <= g11; ++b) {
      if ((det + b * b) % g11 != 0) continue;
      const std::int64_t c = (det + b * b) / g11;
      if (c < g11 || c % 2 != 0) continue;
      out.push_back(IntMatrix{{Integer(g11), Integer(b)}, {Integer(b), Integer(c)}});
    }
    return out;
  }
  const std::int64_t a = g11;
  for (std::int64_t b = a; a * b * b <= 2 * det; b += 2)
    for (std::int64_t x12 = 0; 2 * x12 <= a; ++x12)
      for (std::int64_t x13 = 0; 2 * x13 <= a; ++x13)
        for (std::int64_t x23 = -b / 2; x23 <= b / 2; ++x23) {
          const std::int64_t m2 = a * b - x12 * x12;
          if (m2 <= 0) continue;
          // det = c * m2 + rest
          const std::int64_t rest = -a * x23 * x23 + 2 * x12 * x23 * x13 - b * x13 * x13;
          if ((det - rest) % m2 != 0) continue;
          const std::int64_t c = (det - rest) / m2;
          if (c < b || c % 2 != 0 || a * b * c > 2 * det) continue;
          IntMatrix g{{Integer(a), Integer(x12), Integer(x13)},
                      {Integer(x12), Integer(b), Integer(x23)},
                      {Integer(x13), Integer(x23), Integer(c)}};
          out.push_back(std::move(g));
        }
  return out;
}

// Keeps one representative per isometry class, in input order.
inline std::vector<ReducedForm> dedup_isometric(const std::vector<IntMatrix>& grams) {
  std::vector<ReducedForm> reps;
  std::vector<std::map<std::int64_t, std::size_t>> fps;
  for (const auto& g : grams) {
    // Isometric forms share g11 (the minimum) and these counts.
    auto fp = vector_counts(g, 2 * to_int64(g(0, 0)));
    bool dup = false;
    for (std::size_t k = 0; k < reps.size() && !dup; ++k)
      if (reps[k].gram()(0, 0) == g(0, 0) && fps[k] == fp && is_isometric(reps[k].gram(), g))
        dup = true;
    if (!dup) {
      reps.emplace_back(g);
      fps.push_back(std::move(fp));
    }
  }
  return reps;
}

}  // namespace detail

// Every even positive-definite lattice of the given rank and determinant,
// one reduced Gram matrix per isometry class. Partitions by g11 may run on
// `threads` workers.
inline std::vector<ReducedForm> enumerate_reduced(int rank, std::int64_t det,
                                                  unsigned threads = 1) {
  if (rank < 1 || rank > 3) throw DomainError("enumerate_reduced: rank must be 1..3");
  if (det < 1) throw DomainError("enumerate_reduced: determinant must be positive");
  if (det > kMaxGenusDet)
    throw ResourceError("enumerate_reduced: determinant " + std::to_string(det) +
                        " exceeds the bound " + std::to_string(kMaxGenusDet));
  std::vector<std::int64_t> leads;
  for (std::int64_t a = 2;; a += 2) {
    const bool fits = rank == 1   ? a <= det
                      : rank == 2 ? 3 * a * a <= 4 * det
                                  : a * a * a <= 2 * det;
    if (!fits) break;
    leads.push_back(a);
  }
  std::vector<std::vector<IntMatrix>> parts(leads.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < leads.size(); ++i)
      parts[i] = detail::reduced_candidates(rank, det, leads[i]);
  } else {
    for (std::size_t start = 0; start < leads.size(); start += threads) {
      std::vector<std::future<std::vector<IntMatrix>>> fut;
      for (std::size_t i = start; i < std::min(leads.size(), start + threads); ++i)
        fut.push_back(std::async(std::launch::async, detail::reduced_candidates, rank, det, leads[i]));
      for (std::size_t i = 0; i < fut.size(); ++i) parts[start + i] = fut[i].get();
    }
  }
  std::vector<IntMatrix> all;
  for (auto& p : parts)
    for (auto& g : p) all.push_back(std::move(g));
  return detail::dedup_isometric(all);
}

struct GenusCount {
  std::size_t count = 0;
  std::vector<ReducedForm> representatives;
};

// Isometry classes of even positive-definite lattices whose discriminant
// form is isomorphic to spec.disc: same signature and same form means same
// genus.
inline GenusCount genus_class_count(const GenusSpec& spec, unsigned threads = 1) {
  if (spec.disc && spec.disc->group_order() != spec.det)
    throw DomainError("genus spec: discriminant group order " +
                      spec.disc->group_order().str() + " != det " +
                      std::to_string(spec.det));
  GenusCount out;
  for (auto& f : enumerate_reduced(spec.rank, spec.det, threads)) {
    if (spec.disc && !are_isomorphic(disc_form(GramLattice(f.gram())), *spec.disc)) continue;
    out.representatives.push_back(std::move(f));
  }
  out.count = out.representatives.size();
  return out;
}

}  // namespace k3lat
