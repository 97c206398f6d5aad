#pragma once

// Even integral lattices given by Gram matrices, ADE root lattices in the
// negative-definite convention, and the ADE configuration text syntax.

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "k3lat/errors.hpp"
#include "k3lat/intlat.hpp"

namespace k3lat {

enum class RootKind : char { A = 'A', D = 'D', E = 'E' };

class RootComponent {
 public:
  RootComponent(RootKind kind, int n) : kind_(kind), n_(n) {
    const bool ok = (kind == RootKind::A && n >= 1) ||
                    (kind == RootKind::D && n >= 4) ||
                    (kind == RootKind::E && n >= 6 && n <= 8);
    if (!ok)
      throw DomainError("invalid root component " +
                        std::string(1, static_cast<char>(kind)) +
                        std::to_string(n));
  }

  RootKind kind() const noexcept { return kind_; }
  int rank() const noexcept { return n_; }
  std::string name() const {
    return std::string(1, static_cast<char>(kind_)) + std::to_string(n_);
  }

  // Orders by (kind, rank) descending rank first so that printed configs
  // read like "A6+2*A3+3*A2+A1".
  friend std::strong_ordering operator<=>(const RootComponent& a,
                                          const RootComponent& b) {
    if (a.kind_ != b.kind_) {
      // E before D before A.
      return static_cast<char>(b.kind_) <=> static_cast<char>(a.kind_);
    }
    return b.n_ <=> a.n_;
  }
  friend bool operator==(const RootComponent&, const RootComponent&) = default;

 private:
  RootKind kind_;
  int n_;
};

// Multiset of root components, kept sorted.
class ADEConfig {
 public:
  static constexpr int kMaxRank = 21;

  ADEConfig() = default;
  explicit ADEConfig(std::vector<RootComponent> comps)
      : comps_(std::move(comps)) {
    std::sort(comps_.begin(), comps_.end());
    if (rank() > kMaxRank)
      throw DomainError("ADE configuration of rank " + std::to_string(rank()) +
                        " exceeds " + std::to_string(kMaxRank));
  }

  // Accepts "2*A3,3*A2,5*A1", "A6", "4D4+3A1"; whitespace is ignored.
  static ADEConfig parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::vector<RootComponent> comps;
    if (s.empty()) return ADEConfig{};
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t end = s.find_first_of(",+", pos);
      if (end == std::string::npos) end = s.size();
      std::string term = s.substr(pos, end - pos);
      if (term.empty()) throw ParseError("empty term in ADE configuration '" + s + "'");
      std::size_t i = 0;
      int mult = 1;
      while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) ++i;
      if (i > 0) {
        mult = std::stoi(term.substr(0, i));
        if (i < term.size() && term[i] == '*') ++i;
      }
      if (i >= term.size()) throw ParseError("missing root type in '" + term + "'");
      const char k = static_cast<char>(std::toupper(static_cast<unsigned char>(term[i])));
      if (k != 'A' && k != 'D' && k != 'E')
        throw ParseError("unknown root type in '" + term + "'");
      ++i;
      if (i < term.size() && term[i] == '_') ++i;
      std::string digits = term.substr(i);
      if (digits.empty() ||
          !std::all_of(digits.begin(), digits.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("bad rank in '" + term + "'");
      const int n = std::stoi(digits);
      if (mult < 1) throw ParseError("multiplicity must be positive in '" + term + "'");
      for (int m = 0; m < mult; ++m) comps.emplace_back(static_cast<RootKind>(k), n);
      pos = end + 1;
    }
    return ADEConfig(std::move(comps));
  }

  const std::vector<RootComponent>& components() const noexcept { return comps_; }
  bool empty() const noexcept { return comps_.empty(); }

  int rank() const {
    int r = 0;
    for (const auto& c : comps_) r += c.rank();
    return r;
  }

  std::size_t count(const RootComponent& c) const {
    return static_cast<std::size_t>(std::count(comps_.begin(), comps_.end(), c));
  }

  // Canonical "A6,2*A3,3*A2,A1".
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < comps_.size();) {
      std::size_t j = i;
      while (j < comps_.size() && comps_[j] == comps_[i]) ++j;
      if (!out.empty()) out += ',';
      if (j - i > 1) out += std::to_string(j - i) + "*";
      out += comps_[i].name();
      i = j;
    }
    return out;
  }

  friend bool operator==(const ADEConfig&, const ADEConfig&) = default;

 private:
  std::vector<RootComponent> comps_;
};

class GramLattice {
 public:
  GramLattice() = default;
  explicit GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.symmetric()) throw DomainError("Gram matrix must be symmetric");
    even_ = true;
    for (std::size_t i = 0; i < gram_.rows(); ++i)
      if (gram_(i, i) % 2 != 0) even_ = false;
  }

  const IntMatrix& gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return gram_.rows(); }
  bool even() const noexcept { return even_; }
  Integer det() const { return det_exact(gram_); }

  friend bool operator==(const GramLattice& a, const GramLattice& b) {
    return a.gram_ == b.gram_;
  }

 private:
  IntMatrix gram_;
  bool even_ = true;
};

// Cartan matrix with diagonal -2 and +1 on Dynkin edges. D_n forks at the
// last node; E_n uses Bourbaki labels 1-3-4-5-...-n with 2 attached to 4.
inline GramLattice ade_lattice(const RootComponent& c) {
  const std::size_t n = static_cast<std::size_t>(c.rank());
  IntMatrix g(n, n);
  auto edge = [&](std::size_t a, std::size_t b) { g(a, b) = g(b, a) = 1; };
  for (std::size_t i = 0; i < n; ++i) g(i, i) = -2;
  switch (c.kind()) {
    case RootKind::A:
      for (std::size_t i = 0; i + 1 < n; ++i) edge(i, i + 1);
      break;
    case RootKind::D:
      for (std::size_t i = 0; i + 2 < n; ++i) edge(i, i + 1);
      edge(n - 3, n - 1);
      break;
    case RootKind::E:
      // 0-based: node k here is Bourbaki node k+1.
      edge(0, 2);
      edge(1, 3);
      for (std::size_t i = 2; i + 1 < n; ++i) edge(i, i + 1);
      break;
  }
  return GramLattice(std::move(g));
}

inline GramLattice direct_sum(std::span<const GramLattice> ls) {
  std::vector<IntMatrix> blocks;
  blocks.reserve(ls.size());
  for (const auto& l : ls) blocks.push_back(l.gram());
  return GramLattice(block_diagonal<Integer>(blocks));
}

inline GramLattice config_lattice(const ADEConfig& cfg) {
  std::vector<GramLattice> parts;
  for (const auto& c : cfg.components()) parts.push_back(ade_lattice(c));
  return direct_sum(parts);
}

// Invariant factors > 1 of L*/L = coker(gram), ascending by divisibility.
inline std::vector<Integer> disc_group(const GramLattice& l) {
  auto d = smith_diagonal(l.gram());
  std::vector<Integer> out;
  for (auto& x : d) {
    if (x == 0) throw DegeneracyError("disc_group: Gram matrix is singular");
    if (x > 1) out.push_back(std::move(x));
  }
  return out;
}

// Primary decomposition of a finite abelian group given by invariant
// factors: prime -> multiset of prime-power cyclic orders, ascending.
inline std::map<Integer, std::vector<Integer>> primary_decomposition(
    std::span<const Integer> factors) {
  std::map<Integer, std::vector<Integer>> out;
  for (const auto& f : factors)
    for (const auto& [p, e] : factorize(f)) out[p].push_back(ipow(p, e));
  for (auto& [p, v] : out) std::sort(v.begin(), v.end());
  return out;
}

inline GramLattice rescale(const GramLattice& l, const Integer& k) {
  if (k <= 0) throw DomainError("rescale: factor must be positive");
  return GramLattice(k * l.gram());
}

// Sign of the determinant of a nondegenerate lattice of signature (p, q).
inline int det_sign(int /*p*/, int q) { return q % 2 == 0 ? 1 : -1; }

// Order of the binary polyhedral group attached to the du Val singularity.
inline std::int64_t stabilizer_order(const RootComponent& c) {
  switch (c.kind()) {
    case RootKind::A:
      return c.rank() + 1;
    case RootKind::D:
      return 4 * (c.rank() - 2);
    case RootKind::E:
      return c.rank() == 6 ? 24 : c.rank() == 7 ? 48 : 120;
  }
  return 0;
}

// Leading principal minors of the Gram matrix, 1x1 up to full size.
inline std::vector<Integer> leading_minors(const IntMatrix& g) {
  std::vector<Integer> out;
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    IntMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = g(i, j);
    out.push_back(det_exact(sub));
  }
  return out;
}

inline bool is_positive_definite(const IntMatrix& g) {
  for (const auto& m : leading_minors(g))
    if (m <= 0) return false;
  return true;
}

inline bool is_negative_definite(const IntMatrix& g) {
  return is_positive_definite(Integer(-1) * g);
}

}  // namespace k3lat
