#pragma once

// Lattice invariants of a symplectic group action: the two rank formulas,
// the stabilizer-count consistency check, the fixed-point profile, the
// discriminant chain d(K) -> d(M) -> d(J) -> d(H^2(X)^G) -> d(S_G) and the
// quotient-singularity tables.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3lat/errors.hpp"
#include "k3lat/groups.hpp"
#include "k3lat/integer.hpp"
#include "k3lat/lattice.hpp"

namespace k3lat {

inline constexpr int kK3Rank = 22;      // rank H^2(X, Z)
inline constexpr int kTotalBetti = 24;  // rank H^*(X, Z)
inline constexpr int kMaxPicardRank = 19;

struct ActionRecord {
  std::string name;
  std::int64_t group_order = 1;
  std::optional<OrderCensus> census;
  ADEConfig config;
  std::optional<std::int64_t> glue_index;  // [M : K]
  std::optional<std::int64_t> h3_order;    // |H^3(G, Z)|
  std::string provenance;
  // Values printed in the literature, as factored expressions, keyed by
  // report field (d_k, d_m, d_j, d_h2g, d_sg, rank_sg).
  std::map<std::string, std::string> published;

  friend bool operator==(const ActionRecord&, const ActionRecord&) = default;
};

// f(n): fixed points of an element of order n.
using FixedPointProfile = std::map<int, std::int64_t>;

struct Discrepancy {
  std::string field;
  std::string published;
  Integer published_value;
  Integer computed;
};

struct InvariantReport {
  std::string name;
  std::int64_t group_order = 1;
  int rank_sg = 0;
  int rank_h2g = 0;
  Integer d_k, d_m, d_j, d_h2g, d_sg;
  bool xiao_ok = false;
  std::optional<bool> rank_cross_ok;  // empty when no census ships
  bool sign_ok = false;
  std::vector<Discrepancy> discrepancies;
  static constexpr const char* kIndexAssumption =
      "[H^2(X,Z)^G : J] = |H^3(G,Z)| (cokernel of the transfer map)";
};

// "-2^6*3^2", "-7*4^2*3^3*2", "196".
inline Integer eval_factored(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty factored integer");
  Integer sign = 1;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    if (s[0] == '-') sign = -1;
    i = 1;
  }
  Integer value = 1;
  auto number = [&]() {
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw ParseError("bad factored integer '" + text + "'");
    return Integer(s.substr(start, i - start));
  };
  for (;;) {
    Integer base = number();
    unsigned exp = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      exp = number().convert_to<unsigned>();
    }
    value *= ipow(base, exp);
    if (i == s.size()) break;
    if (s[i] != '*') throw ParseError("bad factored integer '" + text + "'");
    ++i;
  }
  return sign * value;
}

inline int rank_from_config(const ADEConfig& cfg) { return cfg.rank(); }

// rank S_G = 24 - (24 + sum m(n) f(n)) / |G|.
inline int rank_from_group(const OrderCensus& census, std::int64_t group_order,
                           const FixedPointProfile& f) {
  if (group_order < 1) throw DomainError("group order must be positive");
  Integer num = kTotalBetti;
  for (const auto& [n, m] : census) {
    if (n < 2 || n > kMaxSymplecticOrder)
      throw DomainError("census has element order " + std::to_string(n) +
                        " outside 2..8");
    auto it = f.find(n);
    if (it == f.end())
      throw InconsistencyError("fixed-point profile has no value for order " +
                               std::to_string(n));
    num += Integer(m) * it->second;
  }
  if (num % group_order != 0)
    throw InconsistencyError("invariant rank (" + num.str() + ")/" +
                             std::to_string(group_order) +
                             " is not an integer: census and profile disagree");
  const Integer inv_rank = num / group_order;
  if (inv_rank < 4)
    throw InconsistencyError("rank H^*(X,Z)^G = " + inv_rank.str() + " < 4");
  return kTotalBetti - inv_rank.convert_to<int>();
}

// sum (N_i - 1)/N_i over the singular points, one point per component.
inline Rational stabilizer_defect(const ADEConfig& cfg) {
  Rational s = 0;
  for (const auto& c : cfg.components()) {
    const auto n = stabilizer_order(c);
    s += Rational(n - 1, n);
  }
  return s;
}

inline Rational xiao_rhs(const ADEConfig& cfg, std::int64_t group_order) {
  return Rational(24 * (group_order - 1), group_order) - stabilizer_defect(cfg);
}

inline bool xiao_consistency(const ADEConfig& cfg, std::int64_t group_order) {
  if (group_order < 1) throw DomainError("group order must be positive");
  return Rational(cfg.rank()) == xiao_rhs(cfg, group_order);
}

// Census of the cyclic group of order n.
inline OrderCensus cyclic_census(int n) {
  OrderCensus c;
  for (int k = 1; k < n; ++k) ++c[n / static_cast<int>(gcd(std::int64_t{k}, std::int64_t{n}))];
  return c;
}

inline void validate_record(const ActionRecord& rec) {
  const std::string who = "record '" + rec.name + "': ";
  if (rec.group_order < 1) throw DomainError(who + "group_order must be positive");
  if (rec.config.rank() > kMaxPicardRank)
    throw DomainError(who + "configuration rank exceeds 19");
  if (rec.census) {
    for (const auto& [n, m] : *rec.census)
      if (n < 2 || n > kMaxSymplecticOrder || m < 0)
        throw DomainError(who + "census entries must have order 2..8");
    if (census_total(*rec.census) != rec.group_order - 1)
      throw InconsistencyError(who + "census counts do not sum to |G| - 1");
  }
  if (rec.glue_index) {
    if (*rec.glue_index < 1) throw DomainError(who + "glue_index must be positive");
    const Integer dk = config_lattice(rec.config).det();
    const Integer g2 = Integer(*rec.glue_index) * *rec.glue_index;
    if (dk % g2 != 0) throw InconsistencyError(who + "d(K) not divisible by glue^2");
  }
  if (rec.h3_order && *rec.h3_order < 1) throw DomainError(who + "h3_order must be positive");
}

// Solves the stabilizer-count formula of a C_n record for the number k of
// A_{n-1} components, holding the rest of the configuration fixed.
inline Rational solve_full_stabilizer_count(const ADEConfig& cfg, int n) {
  const RootComponent full(RootKind::A, n - 1);
  std::vector<RootComponent> rest;
  for (const auto& c : cfg.components())
    if (!(c == full)) rest.push_back(c);
  const ADEConfig rest_cfg(rest);
  // k(n-1) + rank(rest) = 24(n-1)/n - k(n-1)/n - defect(rest)
  const Rational rhs = Rational(24 * (n - 1), n) - stabilizer_defect(rest_cfg) -
                       Rational(rest_cfg.rank());
  const Rational coeff = Rational((n - 1) * (n + 1), n);
  return rhs / coeff;
}

// f(n) from the cyclic records C_2..C_8: the number of points with full
// stabilizer C_n, i.e. A_{n-1} components. Cross-checked against the
// fixed-point rank formula on each record.
inline FixedPointProfile derive_fixed_point_profile(const std::vector<ActionRecord>& records) {
  FixedPointProfile f;
  std::map<int, const ActionRecord*> cyc;
  for (const auto& r : records)
    for (int n = 2; n <= kMaxSymplecticOrder; ++n)
      if (r.name == "C" + std::to_string(n)) cyc[n] = &r;
  for (int n = 2; n <= kMaxSymplecticOrder; ++n) {
    auto it = cyc.find(n);
    if (it == cyc.end())
      throw InconsistencyError("fixed-point profile needs a C" + std::to_string(n) + " record");
    const ActionRecord& r = *it->second;
    if (r.group_order != n)
      throw InconsistencyError("record " + r.name + " has group_order " +
                               std::to_string(r.group_order));
    if (!xiao_consistency(r.config, n))
      throw InconsistencyError("record " + r.name + " fails the stabilizer-count formula");
    const Rational k = solve_full_stabilizer_count(r.config, n);
    const auto actual = r.config.count(RootComponent(RootKind::A, n - 1));
    if (denominator(k) != 1 || numerator(k) < 0 || numerator(k) != actual)
      throw InconsistencyError("record " + r.name + ": A" + std::to_string(n - 1) +
                               " count is not the unique solution");
    f[n] = static_cast<std::int64_t>(actual);
  }
  for (const auto& [n, r] : cyc) {
    const OrderCensus census = r->census ? *r->census : cyclic_census(n);
    if (rank_from_group(census, n, f) != rank_from_config(r->config))
      throw InconsistencyError("record " + r->name + ": rank cross-check failed");
  }
  return f;
}

struct ClassificationTables {
  std::vector<std::pair<std::string, ADEConfig>> torus;
  std::vector<std::pair<std::string, ADEConfig>> perfect;
};

// Singularities of T^2/Gamma, and the configurations of perfect groups that
// survive the primitivity filter.
inline ClassificationTables torus_quotient_tables() {
  ClassificationTables t;
  t.torus = {
      {"C2", ADEConfig::parse("16*A1")},
      {"C3", ADEConfig::parse("9*A2")},
      {"C4", ADEConfig::parse("4*A3,6*A1")},
      {"C6", ADEConfig::parse("A5,4*A2,5*A1")},
      {"Q8", ADEConfig::parse("4*D4,3*A1")},
      {"Q12", ADEConfig::parse("D5,3*A3,2*A2,A1")},
      {"T24", ADEConfig::parse("A5,2*A3,4*A2")},
      {"T24", ADEConfig::parse("E6,D4,4*A2,A1")},
  };
  t.perfect = {
      {"A5", ADEConfig::parse("2*A4,3*A2,4*A1")},
      {"L2(7)", ADEConfig::parse("A6,2*A3,3*A2,A1")},
      {"A6", ADEConfig::parse("2*A4,2*A3,2*A2,A1")},
      {"M20", ADEConfig::parse("D4,2*A4,3*A2,A1")},
  };
  return t;
}

// True when no torus-quotient configuration equals a symplectic one (the
// perfect-group table together with the configurations of `records`).
inline bool tables_disjoint(const std::vector<ActionRecord>& records = {}) {
  const auto t = torus_quotient_tables();
  std::vector<ADEConfig> symplectic;
  for (const auto& [name, cfg] : t.perfect) symplectic.push_back(cfg);
  for (const auto& r : records) symplectic.push_back(r.config);
  for (const auto& [name, cfg] : t.torus)
    for (const auto& s : symplectic)
      if (cfg == s) return false;
  return true;
}

// |M_Delta / Z[Delta]|: 1 means the configuration can sit primitively.
inline std::int64_t glue_quotient_order(const ActionRecord& rec) {
  validate_record(rec);
  if (!rec.glue_index)
    throw InconsistencyError("record '" + rec.name + "' has no glue_index; supply [M:K]");
  return *rec.glue_index;
}

namespace detail {

inline Integer exact_div(const Integer& a, const Integer& b, const std::string& what) {
  if (b == 0 || a % b != 0) throw InconsistencyError("chain inconsistency: " + what);
  return a / b;
}

inline int sign_of(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace detail

inline const FixedPointProfile& standard_fixed_point_profile();

inline InvariantReport discriminant_chain(const ActionRecord& rec,
                                          const FixedPointProfile* profile = nullptr) {
  validate_record(rec);
  const std::string who = "record '" + rec.name + "': ";
  if (!rec.glue_index)
    throw InconsistencyError(who + "glue_index [M:K] is not known; supply it to run the chain");
  if (!rec.h3_order)
    throw InconsistencyError(who + "h3_order |H^3(G,Z)| is not known; supply it to run the chain");

  InvariantReport rep;
  rep.name = rec.name;
  rep.group_order = rec.group_order;
  const int r = rec.config.rank();
  rep.rank_sg = r;
  rep.rank_h2g = kK3Rank - r;
  rep.d_k = config_lattice(rec.config).det();
  const Integer glue = *rec.glue_index;
  rep.d_m = detail::exact_div(rep.d_k, glue * glue, "d(K) not divisible by glue^2");
  const Integer g_pow = ipow(Integer(rec.group_order), static_cast<unsigned>(kK3Rank - r));
  rep.d_j = -detail::exact_div(g_pow, rep.d_m, "|G|^(22-rank) not divisible by d(M)");
  const Integer h3 = *rec.h3_order;
  rep.d_h2g = detail::exact_div(rep.d_j, h3 * h3, "d(J) not divisible by h3_order^2");
  rep.d_sg = det_sign(0, r) * abs(rep.d_h2g);

  const int invariant_sign = det_sign(3, kMaxPicardRank - r);
  rep.sign_ok = detail::sign_of(rep.d_j) == invariant_sign &&
                detail::sign_of(rep.d_h2g) == invariant_sign &&
                detail::sign_of(rep.d_k) == det_sign(0, r);
  rep.xiao_ok = xiao_consistency(rec.config, rec.group_order);
  if (rec.census) {
    const FixedPointProfile& f = profile ? *profile : standard_fixed_point_profile();
    try {
      rep.rank_cross_ok = rank_from_group(*rec.census, rec.group_order, f) == r;
    } catch (const InconsistencyError&) {
      rep.rank_cross_ok = false;
    }
  }

  auto computed = [&](const std::string& field) -> std::optional<Integer> {
    if (field == "d_k") return rep.d_k;
    if (field == "d_m") return rep.d_m;
    if (field == "d_j") return rep.d_j;
    if (field == "d_h2g") return rep.d_h2g;
    if (field == "d_sg") return rep.d_sg;
    if (field == "rank_sg") return Integer(rep.rank_sg);
    if (field == "rank_h2g") return Integer(rep.rank_h2g);
    return std::nullopt;
  };
  for (const auto& [field, text] : rec.published) {
    auto c = computed(field);
    if (!c) throw ParseError(who + "unknown published field '" + field + "'");
    const Integer p = eval_factored(text);
    if (p != *c) rep.discrepancies.push_back({field, text, p, *c});
  }
  return rep;
}

// Data shipped with the toolkit.
inline std::vector<ActionRecord> shipped_records() {
  std::vector<ActionRecord> out;
  auto cyclic = [&](int n, const char* cfg) {
    ActionRecord r;
    r.name = "C" + std::to_string(n);
    r.group_order = n;
    r.census = cyclic_census(n);
    r.config = ADEConfig::parse(cfg);
    r.glue_index = n;
    r.h3_order = 1;
    r.provenance =
        "Nikulin: abelian symplectic action; M/K = H^2(C" + std::to_string(n) +
        ",Z) = Z/" + std::to_string(n) + "; H^3 of a cyclic group vanishes";
    out.push_back(std::move(r));
  };
  cyclic(2, "8*A1");
  cyclic(3, "6*A2");
  cyclic(4, "4*A3,2*A1");
  cyclic(5, "4*A4");
  cyclic(6, "2*A5,2*A2,2*A1");
  cyclic(7, "3*A6");
  cyclic(8, "2*A7,A3,A1");

  {
    ActionRecord r;
    r.name = "S4";
    r.group_order = 24;
    r.census = OrderCensus{{2, 9}, {3, 8}, {4, 6}};
    r.config = ADEConfig::parse("2*A3,3*A2,5*A1");
    r.glue_index = 2;
    r.h3_order = 2;
    r.provenance = "Xiao Table 2 (K and M/K = Z/2); H^3(S4,Z) = Z/2";
    r.published = {{"rank_sg", "17"},
                   {"d_k", "-2^9*3^3"},
                   {"d_m", "-2^7*3^3"},
                   {"d_j", "2^8*3^2"},
                   {"d_h2g", "2^6*3^2"},
                   {"d_sg", "-2^6*3^2"}};
    out.push_back(std::move(r));
  }
  {
    ActionRecord r;
    r.name = "L2(7)";
    r.group_order = 168;
    r.census = OrderCensus{{2, 21}, {3, 56}, {4, 42}, {7, 48}};
    r.config = ADEConfig::parse("A6,2*A3,3*A2,A1");
    r.glue_index = 1;
    r.h3_order = 2;
    r.provenance = "Xiao Table 2 (K, M = K); H^3(L2(7),Z) = Z/2 by computer algebra";
    r.published = {{"rank_sg", "19"},
                   {"d_m", "-7*4^2*3^3*2"},
                   {"d_j", "2^4*7"},
                   {"d_h2g", "196"},
                   {"rank_h2g", "3"}};
    out.push_back(std::move(r));
  }
  {
    ActionRecord r;
    r.name = "A5";
    r.group_order = 60;
    r.census = OrderCensus{{2, 15}, {3, 20}, {5, 24}};
    r.config = ADEConfig::parse("2*A4,3*A2,4*A1");
    r.glue_index = 1;
    r.h3_order = 2;
    r.provenance =
        "Xiao Table 2 (K); perfect group so M/K = H^2(A5,Z) = 0; "
        "H^3(A5,Z) = Schur multiplier Z/2";
    r.published = {{"rank_sg", "18"}};
    out.push_back(std::move(r));
  }
  {
    ActionRecord r;
    r.name = "A6";
    r.group_order = 360;
    r.census = OrderCensus{{2, 45}, {3, 80}, {4, 90}, {5, 144}};
    r.config = ADEConfig::parse("2*A4,2*A3,2*A2,A1");
    r.provenance = "Xiao Table 2 (K); glue_index and h3_order to be supplied";
    out.push_back(std::move(r));
  }
  {
    ActionRecord r;
    r.name = "M20";
    r.group_order = 960;
    r.census = OrderCensus{{2, 75}, {3, 320}, {4, 180}, {5, 384}};
    r.config = ADEConfig::parse("D4,2*A4,3*A2,A1");
    r.provenance = "Xiao Table 2 (K); glue_index and h3_order to be supplied";
    out.push_back(std::move(r));
  }
  return out;
}

inline const FixedPointProfile& standard_fixed_point_profile() {
  static const FixedPointProfile f = derive_fixed_point_profile(shipped_records());
  return f;
}

}  // namespace k3lat
