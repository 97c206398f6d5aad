#pragma once

// Finite quadratic forms on finite abelian groups: discriminant forms of
// even lattices, primary splitting, isomorphism testing, isotropic (glue)
// subgroups and the discriminant form of an overlattice.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "k3lat/errors.hpp"
#include "k3lat/intlat.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/modq.hpp"

namespace k3lat {

using GroupElement = std::vector<std::int64_t>;

// q : (Z/n_1 + ... + Z/n_k) -> Q/2Z given on the generators, together with
// the bilinear form b : G x G -> Q/Z on generator pairs.
class FiniteQuadraticForm {
 public:
  FiniteQuadraticForm() = default;

  FiniteQuadraticForm(std::vector<std::int64_t> orders, std::vector<QMod2> q,
                      std::vector<std::vector<QMod1>> b)
      : orders_(std::move(orders)), q_(std::move(q)), b_(std::move(b)) {
    const std::size_t k = orders_.size();
    if (q_.size() != k || b_.size() != k)
      throw DimensionError("finite quadratic form: generator count mismatch");
    for (std::size_t i = 0; i < k; ++i) {
      if (orders_[i] < 2) throw DomainError("cyclic factor orders must exceed 1");
      if (b_[i].size() != k) throw DimensionError("bilinear table must be square");
      // b(g, g) = q(g) mod 1
      if (b_[i][i] != mod1(q_[i]))
        throw DomainError("bilinear diagonal inconsistent with q");
      if (!q_[i].times(orders_[i] * orders_[i]).is_zero() ||
          (2 * orders_[i]) % q_[i].den() != 0)
        throw DomainError("q is not well defined on a cyclic factor of order " +
                          std::to_string(orders_[i]));
      for (std::size_t j = 0; j < k; ++j) {
        if (b_[i][j] != b_[j][i]) throw DomainError("bilinear table not symmetric");
        if (!b_[i][j].times(orders_[i]).is_zero())
          throw DomainError("b is not well defined");
      }
    }
  }

  // Diagonal form with b determined by q on each generator and zero across.
  static FiniteQuadraticForm diagonal(std::vector<std::int64_t> orders,
                                      std::vector<QMod2> q) {
    const std::size_t k = orders.size();
    std::vector<std::vector<QMod1>> b(k, std::vector<QMod1>(k));
    for (std::size_t i = 0; i < k; ++i) b[i][i] = mod1(q[i]);
    return FiniteQuadraticForm(std::move(orders), std::move(q), std::move(b));
  }

  const std::vector<std::int64_t>& orders() const noexcept { return orders_; }
  const std::vector<QMod2>& q_values() const noexcept { return q_; }
  const std::vector<std::vector<QMod1>>& b_values() const noexcept { return b_; }
  std::size_t generators() const noexcept { return orders_.size(); }

  Integer group_order() const {
    Integer n = 1;
    for (auto o : orders_) n *= o;
    return n;
  }

  // Evaluation on coordinate vectors (coordinates taken mod n_i).
  QMod2 q(const GroupElement& x) const {
    QMod2 s;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (x[i] == 0) continue;
      s += q_[i].times(x[i] * x[i]);
      for (std::size_t j = i + 1; j < orders_.size(); ++j)
        if (x[j] != 0) s += b_[i][j].template rescaled<2>(2).times(x[i] * x[j]);
    }
    return s;
  }

  QMod1 b(const GroupElement& x, const GroupElement& y) const {
    QMod1 s;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < orders_.size(); ++j)
        if (y[j] != 0) s += b_[i][j].times(x[i] * y[j]);
    }
    return s;
  }

  std::int64_t element_order(const GroupElement& x) const {
    std::int64_t o = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const std::int64_t oi = orders_[i] / gcd(mod_floor(x[i], orders_[i]), orders_[i]);
      o = std::lcm(o, oi);
    }
    return o;
  }

  GroupElement add(const GroupElement& x, const GroupElement& y) const {
    GroupElement z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % orders_[i];
    return z;
  }

  // Mixed-radix indexing of elements, index 0 is the identity.
  GroupElement element(std::int64_t idx) const {
    GroupElement x(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      x[i] = idx % orders_[i];
      idx /= orders_[i];
    }
    return x;
  }
  std::int64_t index(const GroupElement& x) const {
    std::int64_t idx = 0;
    for (std::size_t i = orders_.size(); i-- > 0;)
      idx = idx * orders_[i] + mod_floor(x[i], orders_[i]);
    return idx;
  }

  // Materializes every element; refuses groups above `bound`.
  std::vector<GroupElement> elements(std::int64_t bound = kMaterializeBound) const {
    const Integer n = group_order();
    if (n > bound)
      throw ResourceError("finite quadratic form: group of order " + n.str() +
                          " exceeds the element bound " + std::to_string(bound));
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
      out.push_back(element(i));
    return out;
  }

  static constexpr std::int64_t kMaterializeBound = 10000;

  static QMod1 mod1(const QMod2& v) {
    return QMod1::of_wide(v.num(), v.den());
  }

 private:
  std::vector<std::int64_t> orders_;
  std::vector<QMod2> q_;
  std::vector<std::vector<QMod1>> b_;
};

// Form on L*/L for an even nondegenerate lattice. With u*G*v = D the dual
// generators are v_i / d_i.
inline FiniteQuadraticForm disc_form(const GramLattice& l) {
  if (!l.even()) throw DomainError("disc_form: lattice is not even");
  const IntMatrix& g = l.gram();
  const std::size_t n = l.rank();
  auto snf = smith_normal_form(g);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (snf.d[i] == 0) throw DegeneracyError("disc_form: lattice is singular");
    if (snf.d[i] > 1) idx.push_back(i);
  }
  std::vector<std::vector<Integer>> cols;
  for (auto i : idx) {
    std::vector<Integer> c(n);
    for (std::size_t r = 0; r < n; ++r) c[r] = snf.v(r, i);
    cols.push_back(std::move(c));
  }
  const std::size_t k = idx.size();
  std::vector<std::int64_t> orders;
  std::vector<QMod2> q;
  std::vector<std::vector<QMod1>> b(k, std::vector<QMod1>(k));
  for (std::size_t a = 0; a < k; ++a) {
    const Integer& da = snf.d[idx[a]];
    orders.push_back(to_int64(da));
    q.emplace_back(bilinear(g, cols[a], cols[a]), da * da);
    for (std::size_t c = 0; c < k; ++c)
      b[a][c] = QMod1(bilinear(g, cols[a], cols[c]), da * snf.d[idx[c]]);
  }
  return FiniteQuadraticForm(std::move(orders), std::move(q), std::move(b));
}

inline FiniteQuadraticForm negate(const FiniteQuadraticForm& f) {
  std::vector<QMod2> q;
  for (const auto& v : f.q_values()) q.push_back(-v);
  auto b = f.b_values();
  for (auto& row : b)
    for (auto& v : row) v = -v;
  return FiniteQuadraticForm(f.orders(), std::move(q), std::move(b));
}

inline FiniteQuadraticForm orthogonal_sum(std::span<const FiniteQuadraticForm> fs) {
  std::vector<std::int64_t> orders;
  std::vector<QMod2> q;
  std::size_t k = 0;
  for (const auto& f : fs) k += f.generators();
  std::vector<std::vector<QMod1>> b(k, std::vector<QMod1>(k));
  std::size_t off = 0;
  for (const auto& f : fs) {
    orders.insert(orders.end(), f.orders().begin(), f.orders().end());
    q.insert(q.end(), f.q_values().begin(), f.q_values().end());
    for (std::size_t i = 0; i < f.generators(); ++i)
      for (std::size_t j = 0; j < f.generators(); ++j)
        b[off + i][off + j] = f.b_values()[i][j];
    off += f.generators();
  }
  return FiniteQuadraticForm(std::move(orders), std::move(q), std::move(b));
}

// Sub-form on explicitly chosen elements that are assumed to form a basis
// of a direct sum of cyclic groups with the given orders.
inline FiniteQuadraticForm restrict_to(const FiniteQuadraticForm& f,
                                       const std::vector<GroupElement>& gens,
                                       std::vector<std::int64_t> orders) {
  const std::size_t k = gens.size();
  std::vector<QMod2> q;
  std::vector<std::vector<QMod1>> b(k, std::vector<QMod1>(k));
  for (std::size_t i = 0; i < k; ++i) {
    q.push_back(f.q(gens[i]));
    for (std::size_t j = 0; j < k; ++j) b[i][j] = f.b(gens[i], gens[j]);
  }
  return FiniteQuadraticForm(std::move(orders), std::move(q), std::move(b));
}

struct PrimaryPart {
  FiniteQuadraticForm form;
  // Generator i of `form` is embedded[i] in the parent group.
  std::vector<GroupElement> embedded;
};

inline std::map<std::int64_t, PrimaryPart> primary_parts_embedded(
    const FiniteQuadraticForm& f) {
  std::map<std::int64_t, std::vector<std::size_t>> by_prime;
  for (std::size_t i = 0; i < f.generators(); ++i)
    for (const auto& [p, e] : small_factorize(f.orders()[i])) by_prime[p].push_back(i);
  std::map<std::int64_t, PrimaryPart> out;
  for (const auto& [p, gens] : by_prime) {
    std::vector<GroupElement> elems;
    std::vector<std::int64_t> orders;
    for (auto i : gens) {
      std::int64_t pe = 1, n = f.orders()[i];
      while (n % p == 0) {
        n /= p;
        pe *= p;
      }
      GroupElement x(f.generators(), 0);
      x[i] = f.orders()[i] / pe;
      elems.push_back(std::move(x));
      orders.push_back(pe);
    }
    auto form = restrict_to(f, elems, orders);
    out.emplace(p, PrimaryPart{std::move(form), std::move(elems)});
  }
  return out;
}

inline std::map<std::int64_t, FiniteQuadraticForm> p_primary_parts(
    const FiniteQuadraticForm& f) {
  std::map<std::int64_t, FiniteQuadraticForm> out;
  for (auto& [p, part] : primary_parts_embedded(f)) out.emplace(p, std::move(part.form));
  return out;
}

// Multiset of (element order, q value) over the whole group.
inline std::vector<std::pair<std::int64_t, QMod2>> fingerprint(
    const FiniteQuadraticForm& f) {
  std::vector<std::pair<std::int64_t, QMod2>> out;
  for (const auto& x : f.elements()) out.emplace_back(f.element_order(x), f.q(x));
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Backtracking isomorphism search between two p-groups with equal
// invariants. Generator images must match q, pairwise b and stay
// independent.
class FormIsoSearch {
 public:
  FormIsoSearch(const FiniteQuadraticForm& src, const FiniteQuadraticForm& dst,
                std::int64_t node_bound)
      : src_(src), dst_(dst), bound_(node_bound) {}

  bool run() {
    elems_ = dst_.elements();
    n_ = static_cast<std::int64_t>(elems_.size());
    std::vector<std::int64_t> ord(elems_.size());
    std::vector<QMod2> qv(elems_.size());
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      ord[i] = dst_.element_order(elems_[i]);
      qv[i] = dst_.q(elems_[i]);
    }
    // Largest generators first: fewest candidates.
    perm_.resize(src_.generators());
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    std::stable_sort(perm_.begin(), perm_.end(), [&](auto a, auto b) {
      return src_.orders()[a] > src_.orders()[b];
    });
    cands_.assign(perm_.size(), {});
    for (std::size_t t = 0; t < perm_.size(); ++t) {
      const std::size_t g = perm_[t];
      for (std::size_t i = 0; i < elems_.size(); ++i)
        if (ord[i] == src_.orders()[g] && qv[i] == src_.q_values()[g])
          cands_[t].push_back(i);
      if (cands_[t].empty()) return false;
    }
    in_span_.assign(elems_.size(), 0);
    in_span_[0] = 1;
    span_ = {0};
    chosen_.clear();
    return dfs(0);
  }

 private:
  bool dfs(std::size_t t) {
    if (t == perm_.size()) return static_cast<std::int64_t>(span_.size()) == n_;
    if (++nodes_ > bound_)
      throw ResourceError("are_isomorphic: search exceeded " +
                          std::to_string(bound_) + " nodes");
    const std::size_t g = perm_[t];
    for (std::size_t c : cands_[t]) {
      const GroupElement& y = elems_[c];
      bool ok = true;
      for (std::size_t s = 0; s < t && ok; ++s)
        if (dst_.b(y, elems_[chosen_[s]]) != src_.b_values()[g][perm_[s]]) ok = false;
      if (!ok) continue;
      // <y> must meet the current span trivially.
      const std::int64_t o = src_.orders()[g];
      GroupElement m = y;
      for (std::int64_t k = 1; k < o && ok; ++k) {
        if (in_span_[dst_.index(m)]) ok = false;
        m = dst_.add(m, y);
      }
      if (!ok) continue;
      const std::size_t old = span_.size();
      extend(y, o);
      chosen_.push_back(c);
      if (dfs(t + 1)) return true;
      chosen_.pop_back();
      for (std::size_t i = old; i < span_.size(); ++i) in_span_[span_[i]] = 0;
      span_.resize(old);
    }
    return false;
  }

  void extend(const GroupElement& y, std::int64_t o) {
    const std::size_t base = span_.size();
    GroupElement m = y;
    for (std::int64_t k = 1; k < o; ++k) {
      for (std::size_t i = 0; i < base; ++i) {
        auto idx = dst_.index(dst_.add(elems_[span_[i]], m));
        in_span_[idx] = 1;
        span_.push_back(static_cast<std::size_t>(idx));
      }
      m = dst_.add(m, y);
    }
  }

  const FiniteQuadraticForm& src_;
  const FiniteQuadraticForm& dst_;
  std::int64_t bound_;
  std::int64_t nodes_ = 0;
  std::int64_t n_ = 0;
  std::vector<GroupElement> elems_;
  std::vector<std::size_t> perm_;
  std::vector<std::vector<std::size_t>> cands_;
  std::vector<char> in_span_;
  std::vector<std::size_t> span_;
  std::vector<std::size_t> chosen_;
};

inline std::vector<std::int64_t> sorted_orders(const FiniteQuadraticForm& f) {
  auto o = f.orders();
  std::sort(o.begin(), o.end());
  return o;
}

}  // namespace detail

inline constexpr std::int64_t kIsoNodeBound = 1000000;

inline bool are_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                           std::int64_t node_bound = kIsoNodeBound) {
  if (a.group_order() != b.group_order()) return false;
  auto pa = p_primary_parts(a);
  auto pb = p_primary_parts(b);
  if (pa.size() != pb.size()) return false;
  for (const auto& [p, fa] : pa) {
    auto it = pb.find(p);
    if (it == pb.end()) return false;
    const auto& fb = it->second;
    if (detail::sorted_orders(fa) != detail::sorted_orders(fb)) return false;
    if (fingerprint(fa) != fingerprint(fb)) return false;
    if (!detail::FormIsoSearch(fa, fb, node_bound).run()) return false;
  }
  return true;
}

// A subgroup given by generators in the coordinates of its ambient form.
struct Subgroup {
  std::vector<GroupElement> generators;
  std::int64_t order = 1;
};

namespace detail {

// All totally isotropic subgroups of exactly `order` elements inside a
// materialized group.
inline std::vector<std::vector<std::size_t>> isotropic_in_group(
    const FiniteQuadraticForm& f, std::int64_t order, std::int64_t node_bound,
    std::vector<std::vector<std::size_t>>* gens_out) {
  const auto elems = f.elements();
  const std::size_t n = elems.size();
  std::vector<std::size_t> iso;  // nonzero isotropic elements
  for (std::size_t i = 1; i < n; ++i)
    if (f.q(elems[i]).is_zero()) iso.push_back(i);

  std::map<std::vector<char>, bool> seen;
  std::vector<std::vector<std::size_t>> found;
  std::int64_t nodes = 0;

  struct Node {
    std::vector<char> mask;
    std::vector<std::size_t> members;
    std::vector<std::size_t> gens;
  };

  std::vector<Node> stack;
  Node root{std::vector<char>(n, 0), {0}, {}};
  root.mask[0] = 1;
  stack.push_back(std::move(root));
  seen[stack.back().mask] = true;
  while (!stack.empty()) {
    Node cur = std::move(stack.back());
    stack.pop_back();
    if (++nodes > node_bound)
      throw ResourceError("isotropic_subgroups: search exceeded " +
                          std::to_string(node_bound) + " nodes");
    if (static_cast<std::int64_t>(cur.members.size()) == order) {
      found.push_back(cur.members);
      if (gens_out) gens_out->push_back(cur.gens);
      continue;
    }
    for (std::size_t x : iso) {
      if (cur.mask[x]) continue;
      bool orth = true;
      for (std::size_t g : cur.gens)
        if (!f.b(elems[x], elems[g]).is_zero()) {
          orth = false;
          break;
        }
      if (!orth) continue;
      Node next{cur.mask, cur.members, cur.gens};
      next.gens.push_back(x);
      // Close under adding multiples of x.
      GroupElement m = elems[x];
      while (!next.mask[static_cast<std::size_t>(f.index(m))]) {
        for (std::size_t i = 0; i < cur.members.size(); ++i) {
          auto idx = static_cast<std::size_t>(f.index(f.add(elems[cur.members[i]], m)));
          if (!next.mask[idx]) {
            next.mask[idx] = 1;
            next.members.push_back(idx);
          }
        }
        m = f.add(m, elems[x]);
      }
      const auto sz = static_cast<std::int64_t>(next.members.size());
      if (order % sz != 0) continue;
      if (seen.emplace(next.mask, true).second) {
        std::sort(next.members.begin(), next.members.end());
        stack.push_back(std::move(next));
      }
    }
  }
  return found;
}

}  // namespace detail

inline constexpr std::int64_t kSubgroupNodeBound = 1000000;

// Totally isotropic subgroups (q = 0 and b = 0 on the subgroup) of the given
// order. Subgroups split over primes, so only the relevant primary parts are
// materialized.
inline std::vector<Subgroup> isotropic_subgroups(
    const FiniteQuadraticForm& f, std::int64_t order,
    std::int64_t node_bound = kSubgroupNodeBound) {
  if (order < 1 || f.group_order() % order != 0)
    throw DomainError("isotropic_subgroups: order must divide the group order");
  std::vector<Subgroup> result{Subgroup{}};
  if (order == 1) return result;
  auto parts = primary_parts_embedded(f);
  for (const auto& [p, pe] : small_factorize(order)) {
    auto it = parts.find(p);
    if (it == parts.end()) return {};
    std::int64_t need = 1;
    for (unsigned i = 0; i < pe; ++i) need *= p;
    const auto& part = it->second;
    std::vector<std::vector<std::size_t>> gens;
    detail::isotropic_in_group(part.form, need, node_bound, &gens);
    const auto elems = part.form.elements();
    std::vector<Subgroup> next;
    for (const auto& base : result)
      for (const auto& gset : gens) {
        Subgroup s = base;
        s.order *= need;
        for (auto gi : gset) {
          // p-part coordinates back to the parent group.
          GroupElement x(f.generators(), 0);
          for (std::size_t j = 0; j < part.embedded.size(); ++j)
            for (std::size_t c = 0; c < x.size(); ++c)
              x[c] += elems[gi][j] * part.embedded[j][c];
          for (std::size_t c = 0; c < x.size(); ++c) x[c] = mod_floor(x[c], f.orders()[c]);
          s.generators.push_back(std::move(x));
        }
        next.push_back(std::move(s));
      }
    result = std::move(next);
  }
  return result;
}

inline bool is_isotropic(const FiniteQuadraticForm& f, const Subgroup& h) {
  for (std::size_t i = 0; i < h.generators.size(); ++i) {
    if (!f.q(h.generators[i]).is_zero()) return false;
    for (std::size_t j = i + 1; j < h.generators.size(); ++j)
      if (!f.b(h.generators[i], h.generators[j]).is_zero()) return false;
  }
  return true;
}

// Induced form on h^perp / h. Both subgroups are handled as lattices in Z^k
// containing the relation lattice diag(n_i) Z^k.
inline FiniteQuadraticForm overlattice_disc(const FiniteQuadraticForm& f,
                                            const Subgroup& h) {
  if (!is_isotropic(f, h)) throw DomainError("overlattice_disc: subgroup is not isotropic");
  const std::size_t k = f.generators();
  if (k == 0) return f;

  // h^perp: x with sum_i x_i b(e_i, g) in Z for every generator g of h.
  // Kernel of [C | N I] projected onto x.
  const std::size_t m = h.generators.size();
  std::int64_t big_n = 1;
  for (auto o : f.orders()) big_n = std::lcm(big_n, o);
  IntMatrix perp_basis;
  if (m == 0) {
    perp_basis = IntMatrix::identity(k);
  } else {
    IntMatrix sys(m, k + m);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t i = 0; i < k; ++i) {
        GroupElement e(k, 0);
        e[i] = 1;
        const QMod1 v = f.b(e, h.generators[r]);
        sys(r, i) = Integer(v.num()) * (big_n / v.den());
      }
      sys(r, k + r) = big_n;
    }
    auto snf = smith_normal_form(sys);
    const std::size_t rank = rank_from_smith(snf.d);
    if (k + m - rank != k) throw DomainError("overlattice_disc: unexpected kernel rank");
    perp_basis = IntMatrix(k, k);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t i = 0; i < k; ++i) perp_basis(c, i) = snf.v(i, rank + c);
  }

  // Sublattice generated by h and the relations, in coordinates of perp_basis.
  IntMatrix sub(m + k, k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i < k; ++i) sub(r, i) = h.generators[r][i];
  for (std::size_t i = 0; i < k; ++i) sub(m + i, i) = f.orders()[i];
  const auto inv = rational_inverse(perp_basis);
  IntMatrix coords(m + k, k);
  for (std::size_t r = 0; r < m + k; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      Rational s = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (sub(r, i) != 0) s += Rational(sub(r, i)) * inv(i, c);
      if (denominator(s) != 1)
        throw DomainError("overlattice_disc: subgroup not inside its orthogonal");
      coords(r, c) = numerator(s);
    }
  auto snf = smith_normal_form(coords);
  const IntMatrix w = unimodular_inverse(snf.v) * perp_basis;

  std::vector<GroupElement> gens;
  std::vector<std::int64_t> orders;
  for (std::size_t i = 0; i < k; ++i) {
    if (snf.d[i] == 0) throw DomainError("overlattice_disc: degenerate quotient");
    if (snf.d[i] == 1) continue;
    GroupElement x(k);
    for (std::size_t c = 0; c < k; ++c) {
      Integer v = w(i, c) % f.orders()[c];
      if (v < 0) v += f.orders()[c];
      x[c] = to_int64(v);
    }
    gens.push_back(std::move(x));
    orders.push_back(to_int64(snf.d[i]));
  }
  return restrict_to(f, gens, std::move(orders));
}

// Discriminant form of a direct sum of ADE components.
inline FiniteQuadraticForm config_disc_form(const ADEConfig& cfg) {
  return disc_form(config_lattice(cfg));
}

}  // namespace k3lat
