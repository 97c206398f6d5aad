#pragma once

// Finite groups as Cayley tables, element-order census, and the integral
// cohomology H^3(G, Z) of small groups from the normalized bar complex.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "k3lat/errors.hpp"
#include "k3lat/intlat.hpp"

namespace k3lat {

using Permutation = std::vector<int>;  // 0-based images

class FiniteGroup {
 public:
  static constexpr std::size_t kMaxElements = 10000;

  // Validates identity (element 0), closure, inverses and associativity.
  static FiniteGroup from_cayley(std::vector<std::vector<int>> table) {
    const std::size_t n = table.size();
    if (n == 0) throw DomainError("group must have at least one element");
    if (n > kMaxElements) throw ResourceError("group exceeds element cap");
    FiniteGroup g;
    g.n_ = n;
    g.mul_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (table[i].size() != n) throw DimensionError("Cayley table must be square");
      for (std::size_t j = 0; j < n; ++j) {
        const int x = table[i][j];
        if (x < 0 || static_cast<std::size_t>(x) >= n)
          throw DomainError("Cayley table entry out of range");
        g.mul_[i * n + j] = x;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (g.mul(0, static_cast<int>(i)) != static_cast<int>(i) ||
          g.mul(static_cast<int>(i), 0) != static_cast<int>(i))
        throw DomainError("element 0 is not the identity");
    for (std::size_t i = 0; i < n; ++i) {
      // Latin square rows give unique solvability, hence inverses.
      std::vector<char> seen(n, 0);
      for (std::size_t j = 0; j < n; ++j) seen[static_cast<std::size_t>(g.mul_[i * n + j])] = 1;
      if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(n))
        throw DomainError("Cayley table row is not a permutation");
    }
    for (int a = 0; a < static_cast<int>(n); ++a)
      for (int b = 0; b < static_cast<int>(n); ++b)
        for (int c = 0; c < static_cast<int>(n); ++c)
          if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
            throw DomainError("Cayley table is not associative");
    g.build_inverses();
    return g;
  }

  // Breadth-first closure of the generators under composition.
  static FiniteGroup from_permutations(const std::vector<Permutation>& gens) {
    std::size_t degree = 0;
    for (const auto& p : gens) degree = std::max(degree, p.size());
    auto pad = [&](Permutation p) {
      for (std::size_t i = p.size(); i < degree; ++i) p.push_back(static_cast<int>(i));
      return p;
    };
    std::vector<Permutation> elems;
    std::map<Permutation, int> index;
    Permutation id(degree);
    for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<int>(i);
    elems.push_back(id);
    index[id] = 0;
    std::vector<Permutation> g;
    for (const auto& p : gens) g.push_back(pad(p));
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (const auto& s : g) {
        Permutation c = compose(elems[head], s);
        if (index.emplace(c, static_cast<int>(elems.size())).second) {
          elems.push_back(std::move(c));
          if (elems.size() > kMaxElements)
            throw ResourceError("permutation group exceeds " +
                                std::to_string(kMaxElements) + " elements");
        }
      }
    }
    FiniteGroup grp;
    grp.n_ = elems.size();
    grp.mul_.resize(grp.n_ * grp.n_);
    for (std::size_t i = 0; i < grp.n_; ++i)
      for (std::size_t j = 0; j < grp.n_; ++j)
        grp.mul_[i * grp.n_ + j] = index.at(compose(elems[i], elems[j]));
    grp.build_inverses();
    return grp;
  }

  static FiniteGroup cyclic(int n) {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    return from_cayley(std::move(t));
  }

  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int na = static_cast<int>(a.order()), nb = static_cast<int>(b.order());
    std::vector<std::vector<int>> t(static_cast<std::size_t>(na * nb),
                                    std::vector<int>(static_cast<std::size_t>(na * nb)));
    for (int x = 0; x < na * nb; ++x)
      for (int y = 0; y < na * nb; ++y)
        t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    return from_cayley(std::move(t));
  }

  std::size_t order() const noexcept { return n_; }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inv_[static_cast<std::size_t>(a)]; }

  int element_order(int a) const {
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    return k;
  }

  // (p o q)(i) = p(q(i)): apply q first.
  static Permutation compose(const Permutation& p, const Permutation& q) {
    Permutation r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[static_cast<std::size_t>(q[i])];
    return r;
  }

 private:
  void build_inverses() {
    inv_.assign(n_, -1);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (mul_[a * n_ + b] == 0) {
          inv_[a] = static_cast<int>(b);
          break;
        }
  }

  std::size_t n_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
};

// "(1,2,3)(4,5)" or "(1 2 3)(4 5)"; points are 1-based, "()" is the identity.
inline Permutation parse_cycles(std::string_view text) {
  std::vector<std::vector<int>> cycles;
  int degree = 0;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation '" + std::string(text) + "'");
    ++i;
    std::vector<int> cyc;
    for (;;) {
      while (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
      if (i >= text.size()) throw ParseError("unterminated cycle in '" + std::string(text) + "'");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("bad point in cycle notation '" + std::string(text) + "'");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      if (v < 1) throw ParseError("cycle points are 1-based");
      if (std::find(cyc.begin(), cyc.end(), v) != cyc.end())
        throw ParseError("repeated point in a cycle");
      cyc.push_back(v);
      degree = std::max(degree, v);
    }
    cycles.push_back(std::move(cyc));
    skip_ws();
  }
  Permutation p(static_cast<std::size_t>(degree));
  for (int k = 0; k < degree; ++k) p[static_cast<std::size_t>(k)] = k;
  // Cycles act right to left, matching compose().
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    Permutation c = p;
    for (int k = 0; k < degree; ++k) c[static_cast<std::size_t>(k)] = k;
    const auto& cyc = *it;
    for (std::size_t k = 0; k < cyc.size(); ++k)
      c[static_cast<std::size_t>(cyc[k] - 1)] = cyc[(k + 1) % cyc.size()] - 1;
    p = FiniteGroup::compose(c, p);
  }
  return p;
}

// m(n): number of elements of order n, n >= 2.
using OrderCensus = std::map<int, std::int64_t>;

inline constexpr int kMaxSymplecticOrder = 8;

inline OrderCensus order_census(const FiniteGroup& g) {
  OrderCensus m;
  for (int a = 1; a < static_cast<int>(g.order()); ++a) {
    const int o = g.element_order(a);
    if (o > kMaxSymplecticOrder)
      throw DomainError("group has an element of order " + std::to_string(o) +
                        "; not symplectic-admissible (orders must be <= 8)");
    ++m[o];
  }
  return m;
}

inline std::int64_t census_total(const OrderCensus& c) {
  std::int64_t s = 0;
  for (const auto& [n, k] : c) s += k;
  return s;
}

struct H3Result {
  std::vector<Integer> factors;  // invariant factors > 1
  bool composite_zero = false;   // d3 o d2 == 0 checked exactly
  std::size_t rank_d2 = 0;
  std::size_t rank_d3 = 0;       // certified rank over Q
};

inline constexpr std::size_t kH3OrderCap = 12;

namespace detail {

// Normalized inhomogeneous cochains: C^n = Z^((N-1)^n), tuples of
// non-identity elements encoded in base N-1.
struct BarComplex {
  const FiniteGroup& g;
  std::size_t base;

  std::size_t dim(int n) const {
    std::size_t d = 1;
    for (int i = 0; i < n; ++i) d *= base;
    return d;
  }
  std::vector<int> decode(std::size_t idx, int n) const {
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int i = n; i-- > 0;) {
      t[static_cast<std::size_t>(i)] = static_cast<int>(idx % base) + 1;
      idx /= base;
    }
    return t;
  }
  // -1 when the tuple contains the identity (normalized cochains vanish).
  long encode(const std::vector<int>& t) const {
    long idx = 0;
    for (int x : t) {
      if (x == 0) return -1;
      idx = idx * static_cast<long>(base) + (x - 1);
    }
    return idx;
  }

  // Row of the coboundary d^{n}: C^n -> C^{n+1} at the (n+1)-tuple `t`,
  // as (column, coefficient) pairs.
  std::vector<std::pair<long, int>> coboundary_row(const std::vector<int>& t) const {
    const int n = static_cast<int>(t.size()) - 1;
    std::vector<std::pair<long, int>> row;
    auto add = [&](const std::vector<int>& s, int sign) {
      const long c = encode(s);
      if (c >= 0) row.emplace_back(c, sign);
    };
    add(std::vector<int>(t.begin() + 1, t.end()), 1);
    for (int i = 0; i < n; ++i) {
      std::vector<int> s;
      for (int j = 0; j < i; ++j) s.push_back(t[static_cast<std::size_t>(j)]);
      s.push_back(g.mul(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(i + 1)]));
      for (int j = i + 2; j <= n; ++j) s.push_back(t[static_cast<std::size_t>(j)]);
      add(s, (i + 1) % 2 == 0 ? 1 : -1);
    }
    add(std::vector<int>(t.begin(), t.end() - 1), (n + 1) % 2 == 0 ? 1 : -1);
    // Merge repeated columns.
    std::sort(row.begin(), row.end());
    std::vector<std::pair<long, int>> merged;
    for (const auto& [c, v] : row) {
      if (!merged.empty() && merged.back().first == c)
        merged.back().second += v;
      else
        merged.emplace_back(c, v);
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0; });
    return merged;
  }
};

}  // namespace detail

// H^3(G, Z) = ker d3 / im d2. The torsion is read off the Smith form of d2
// (C^3 / ker d3 embeds in the free C^4); the free rank is certified zero by
// a modular rank of d3 reaching dim C^3 - rank d2.
inline H3Result h3_bar_resolution(const FiniteGroup& g, std::size_t cap = kH3OrderCap,
                                  std::uint64_t seed = 1) {
  if (g.order() > cap)
    throw ResourceError("h3_bar_resolution: |G| = " + std::to_string(g.order()) +
                        " exceeds the cap of " + std::to_string(cap) +
                        "; supply h3_order as record data instead");
  H3Result res;
  if (g.order() == 1) {
    res.composite_zero = true;
    return res;
  }
  const detail::BarComplex bc{g, g.order() - 1};
  const std::size_t c2 = bc.dim(2), c3 = bc.dim(3), c4 = bc.dim(4);

  IntMatrix d2(c3, c2);
  std::vector<std::vector<std::pair<long, int>>> d2_rows(c3);
  for (std::size_t r = 0; r < c3; ++r) {
    d2_rows[r] = bc.coboundary_row(bc.decode(r, 3));
    for (const auto& [c, v] : d2_rows[r]) d2(r, static_cast<std::size_t>(c)) = v;
  }

  // d3 o d2 = 0, and collect d3 rows for the rank certificate.
  std::vector<std::vector<std::pair<long, int>>> d3_rows(c4);
  res.composite_zero = true;
  for (std::size_t r = 0; r < c4; ++r) {
    d3_rows[r] = bc.coboundary_row(bc.decode(r, 4));
    std::map<long, long> acc;
    for (const auto& [mid, v] : d3_rows[r])
      for (const auto& [c, w] : d2_rows[static_cast<std::size_t>(mid)]) acc[c] += static_cast<long>(v) * w;
    for (const auto& [c, v] : acc)
      if (v != 0) res.composite_zero = false;
  }
  if (!res.composite_zero) throw InconsistencyError("bar complex: d3 o d2 != 0");

  const auto diag = smith_diagonal(d2);
  res.rank_d2 = rank_from_smith(diag);
  for (const auto& x : diag)
    if (x > 1) res.factors.push_back(x);

  // rank_Q(d3) <= c3 - rank(d2). Random combinations of rows of d3 over F_p
  // give a lower bound; reaching the upper bound certifies H^3 is finite.
  const std::size_t target = c3 - res.rank_d2;
  ModularEchelon ech(c3);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coef(0, static_cast<std::int64_t>(ModularEchelon::kPrime) - 1);
  const std::size_t max_tries = target + 64;
  std::vector<std::int64_t> row(c3);
  const auto p = static_cast<std::int64_t>(ModularEchelon::kPrime);
  for (std::size_t tries = 0; tries < max_tries && ech.rank() < target; ++tries) {
    std::fill(row.begin(), row.end(), 0);
    for (const auto& r : d3_rows) {
      if (r.empty()) continue;
      const std::int64_t k = coef(rng);
      for (const auto& [c, v] : r) {
        auto& x = row[static_cast<std::size_t>(c)];
        x = (x + k * v) % p;
      }
    }
    ech.insert(row);
  }
  if (ech.rank() != target)
    throw InconsistencyError("h3_bar_resolution: could not certify rank of d3");
  res.rank_d3 = target;
  return res;
}

}  // namespace k3lat
