#pragma once

// Randomized property suites. Each returns the number of cases run and
// failures seen; the first failure is described for the log.

#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "support.hpp"

namespace k3lat::testkit {

struct PropertyResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

inline std::string show(const IntMatrix& m) {
  std::ostringstream s;
  s << m;
  return s.str();
}

// SNF transforms, divisibility, |det| = prod d, Bareiss = cofactor expansion.
inline PropertyResult property_snf_det(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  std::uniform_int_distribution<int> dim(1, 5);
  for (int t = 0; t < cases; ++t, ++r.cases) {
    const std::size_t n = static_cast<std::size_t>(dim(rng));
    const std::size_t m = rng() % 3 == 0 ? static_cast<std::size_t>(dim(rng)) : n;
    const IntMatrix a = random_matrix(n, m, -9, 9, rng);
    const auto s = smith_normal_form(a);
    const IntMatrix d = s.u * a * s.v;
    bool ok = abs(det_exact(s.u)) == 1 && abs(det_exact(s.v)) == 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        ok = ok && d(i, j) == (i == j ? s.d[i] : Integer(0));
    for (std::size_t i = 0; i + 1 < s.d.size(); ++i)
      ok = ok && s.d[i] >= 0 && (s.d[i] == 0 ? s.d[i + 1] == 0 : s.d[i + 1] % s.d[i] == 0);
    if (n == m) {
      Integer prod = 1;
      for (const auto& x : s.d) prod *= x;
      const Integer det = det_exact(a);
      ok = ok && abs(det) == prod && det == cofactor_det(a);
    }
    r.check(ok, "snf/det mismatch for " + show(a));
  }
  return r;
}

// Random even nondegenerate Gram matrix with |det| in [2, max_det].
inline IntMatrix random_even_gram(std::mt19937_64& rng, std::size_t n, std::int64_t max_det) {
  std::uniform_int_distribution<int> diag(-3, 3), off(-2, 2);
  for (;;) {
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      g(i, i) = 2 * diag(rng);
      for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
    }
    const Integer d = abs(det_exact(g));
    if (d >= 2 && d <= max_det) return g;
  }
}

// The discriminant form does not depend on the basis, and its q-values
// agree with a brute-force enumeration of L*/L.
inline PropertyResult property_disc_basis(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  std::uniform_int_distribution<int> dim(1, 4);
  for (int t = 0; t < cases; ++t, ++r.cases) {
    const std::size_t n = static_cast<std::size_t>(dim(rng));
    const IntMatrix g = random_even_gram(rng, n, 400);
    const IntMatrix u = random_unimodular(n, rng);
    const IntMatrix h = u.transpose() * g * u;
    const auto fg = disc_form(GramLattice(g));
    const auto fh = disc_form(GramLattice(h));
    bool ok = fg.group_order() == abs(det_exact(g)) && are_isomorphic(fg, fh) &&
              are_isomorphic(fh, fg);
    const Integer d = abs(det_exact(g));
    if (ok && ipow(d, static_cast<unsigned>(n)) <= 20000)
      ok = form_q_values(fh) == brute_q_values(g);
    r.check(ok, "disc form changed under basis change of " + show(g));
  }
  return r;
}

// |h^perp / h| = |G| / |h|^2 for isotropic h in configuration forms.
inline PropertyResult property_overlattice_order(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  const std::vector<std::string> pool{
      "8*A1", "4*A1",      "6*A1",      "2*A3",     "A3,2*A1", "4*A2",      "6*A2",
      "D4,4*A1", "2*A7",   "A7,A1",     "2*A5,2*A1", "A8",     "3*A3",      "2*D4",
      "E7,5*A1", "A4,A4",  "2*A4,2*A1", "D6,2*A1",  "A15",     "A3,4*A1",   "3*A2,A2"};
  std::map<std::pair<std::size_t, std::int64_t>, std::vector<Subgroup>> cache;
  std::vector<FiniteQuadraticForm> forms;
  for (const auto& c : pool) forms.push_back(config_disc_form(ADEConfig::parse(c)));
  for (int t = 0; t < cases; ++t, ++r.cases) {
    const std::size_t ci = rng() % pool.size();
    const auto& f = forms[ci];
    const std::int64_t order = to_int64(f.group_order());
    std::vector<std::int64_t> square_divs;
    for (std::int64_t d = 1; d * d <= order; ++d)
      if (order % (d * d) == 0) square_divs.push_back(d);
    const std::int64_t d = square_divs[rng() % square_divs.size()];
    auto key = std::make_pair(ci, d);
    if (!cache.count(key)) cache[key] = isotropic_subgroups(f, d);
    const auto& subs = cache[key];
    Subgroup h;
    if (!subs.empty()) h = subs[rng() % subs.size()];
    const auto q = overlattice_disc(f, h);
    const bool ok = is_isotropic(f, h) && q.group_order() * h.order * h.order == order;
    r.check(ok, "overlattice order law fails for " + pool[ci] + " with |h| = " +
                    std::to_string(h.order));
  }
  return r;
}

inline const std::vector<ReducedForm>& cached_enumeration(int rank, std::int64_t det) {
  static std::map<std::pair<int, std::int64_t>, std::vector<ReducedForm>> cache;
  auto key = std::make_pair(rank, det);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate_reduced(rank, det)).first;
  return it->second;
}

// Reflexive, symmetric, transitive on conjugates; distinct classes stay
// apart; fingerprints agree on isometric pairs.
inline PropertyResult property_isometry(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  std::uniform_int_distribution<std::int64_t> det(1, 400);
  for (int t = 0; t < cases; ++t) {
    const int rank = 2 + static_cast<int>(rng() % 2);
    const auto& forms = cached_enumeration(rank, det(rng));
    if (forms.empty()) {
      --t;
      continue;
    }
    ++r.cases;
    const std::size_t i = rng() % forms.size();
    const IntMatrix& a = forms[i].gram();
    const IntMatrix u = random_unimodular(a.rows(), rng, 4);
    const IntMatrix v = random_unimodular(a.rows(), rng, 4);
    const IntMatrix b = u.transpose() * a * u;
    const IntMatrix c = v.transpose() * b * v;
    std::int64_t md = 0;
    for (std::size_t k = 0; k < a.rows(); ++k) md = std::max(md, to_int64(a(k, k)));
    bool ok = is_isometric(a, a) && is_isometric(a, b) && is_isometric(b, a) &&
              is_isometric(b, c) && is_isometric(a, c) &&
              vector_counts(a, 2 * md) == vector_counts(b, 2 * md);
    if (forms.size() > 1) {
      const std::size_t j = (i + 1 + rng() % (forms.size() - 1)) % forms.size();
      ok = ok && !is_isometric(a, forms[j].gram()) && !is_isometric(b, forms[j].gram());
    }
    r.check(ok, "isometry relation fails for " + show(a));
  }
  return r;
}

// Every representative returned for a genus has the requested form, and
// representatives are pairwise non-isometric, even, definite, exact det.
inline PropertyResult property_enumeration_closure(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  std::uniform_int_distribution<std::int64_t> det(2, 300);
  std::map<std::tuple<int, std::int64_t, std::size_t>, bool> done;
  for (int t = 0; t < cases; ++t) {
    const int rank = 1 + static_cast<int>(rng() % 3);
    const std::int64_t d = det(rng);
    const auto& forms = cached_enumeration(rank, d);
    if (forms.empty()) {
      --t;
      continue;
    }
    ++r.cases;
    const std::size_t i = rng() % forms.size();
    auto key = std::make_tuple(rank, d, i);
    if (auto it = done.find(key); it != done.end()) {
      r.check(it->second, "closure failed (cached)");
      continue;
    }
    GenusSpec spec;
    spec.rank = rank;
    spec.det = d;
    spec.disc = disc_form(GramLattice(forms[i].gram()));
    const auto res = genus_class_count(spec);
    bool ok = res.count == res.representatives.size() && res.count >= 1;
    bool found = false;
    for (std::size_t a = 0; a < res.representatives.size(); ++a) {
      const auto& g = res.representatives[a].gram();
      ok = ok && det_exact(g) == d && is_positive_definite(g) && GramLattice(g).even() &&
           are_isomorphic(disc_form(GramLattice(g)), *spec.disc);
      found = found || is_isometric(g, forms[i].gram());
      for (std::size_t b = a + 1; b < res.representatives.size(); ++b)
        ok = ok && !is_isometric(g, res.representatives[b].gram());
    }
    ok = ok && found;
    done[key] = ok;
    r.check(ok, "closure fails for rank " + std::to_string(rank) + " det " + std::to_string(d));
  }
  return r;
}

}  // namespace k3lat::testkit
