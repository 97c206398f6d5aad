#pragma once

// JSON ingestion and emission: record files, group files, Gram files and
// reports. Integers travel as decimal strings next to their factored form.

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3lat/discform.hpp"
#include "k3lat/errors.hpp"
#include "k3lat/groups.hpp"
#include "k3lat/pipeline.hpp"

namespace k3lat {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

namespace detail {

inline void reject_unknown(const Json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ParseError(where + ": unknown field '" + key + "'");
}

inline std::int64_t get_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

inline std::string get_string(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

}  // namespace detail

// Census keys are element orders written as strings ("2": 9).
inline ActionRecord record_from_json(const Json& j) {
  using detail::get_int;
  using detail::get_string;
  detail::reject_unknown(j, {"name", "group_order", "census", "config", "glue_index",
                             "h3_order", "provenance", "published"},
                         "record");
  for (const char* req : {"name", "group_order", "config"})
    if (!j.contains(req)) throw ParseError(std::string("record: missing field '") + req + "'");
  ActionRecord r;
  r.name = get_string(j["name"], "record.name");
  const std::string where = "record '" + r.name + "'";
  r.group_order = get_int(j["group_order"], where + ".group_order");
  try {
    r.config = ADEConfig::parse(get_string(j["config"], where + ".config"));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(where + ".config: " + e.what());
  }
  if (j.contains("census") && !j["census"].is_null()) {
    if (!j["census"].is_object()) throw ParseError(where + ".census: expected an object");
    OrderCensus c;
    for (const auto& [key, val] : j["census"].items()) {
      int order = 0;
      try {
        std::size_t used = 0;
        order = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ParseError(where + ".census: key '" + key + "' is not an integer");
      }
      c[order] = get_int(val, where + ".census." + key);
    }
    r.census = std::move(c);
  }
  if (j.contains("glue_index") && !j["glue_index"].is_null())
    r.glue_index = get_int(j["glue_index"], where + ".glue_index");
  if (j.contains("h3_order") && !j["h3_order"].is_null())
    r.h3_order = get_int(j["h3_order"], where + ".h3_order");
  if (j.contains("provenance")) r.provenance = get_string(j["provenance"], where + ".provenance");
  if (j.contains("published")) {
    if (!j["published"].is_object()) throw ParseError(where + ".published: expected an object");
    for (const auto& [key, val] : j["published"].items())
      r.published[key] = get_string(val, where + ".published." + key);
  }
  return r;
}

inline Json record_to_json(const ActionRecord& r) {
  Json j;
  j["name"] = r.name;
  j["group_order"] = r.group_order;
  if (r.census) {
    Json c = Json::object();
    for (const auto& [order, count] : *r.census) c[std::to_string(order)] = count;
    j["census"] = c;
  }
  j["config"] = r.config.str();
  if (r.glue_index) j["glue_index"] = *r.glue_index;
  if (r.h3_order) j["h3_order"] = *r.h3_order;
  j["provenance"] = r.provenance;
  if (!r.published.empty()) {
    Json p = Json::object();
    for (const auto& [k, v] : r.published) p[k] = v;
    j["published"] = p;
  }
  return j;
}

// Every record is validated before it is returned.
inline std::vector<ActionRecord> records_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("record file: expected a JSON array");
  std::vector<ActionRecord> out;
  std::set<std::string> names;
  for (const auto& item : j) {
    auto r = record_from_json(item);
    if (!names.insert(r.name).second)
      throw ParseError("record file: duplicate name '" + r.name + "'");
    try {
      validate_record(r);
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<ActionRecord> read_record_file(const std::string& path) {
  return records_from_json(read_json_file(path));
}

inline Json records_to_json(const std::vector<ActionRecord>& rs) {
  Json j = Json::array();
  for (const auto& r : rs) j.push_back(record_to_json(r));
  return j;
}

// {"cayley": [[...], ...]} or {"perm_generators": [...]}, where each
// generator is a cycle string "(1,2,3)(4,5)" or an array of such strings
// whose product (left to right) is the generator.
inline FiniteGroup group_from_json(const Json& j) {
  detail::reject_unknown(j, {"name", "cayley", "perm_generators"}, "group file");
  const bool cay = j.contains("cayley"), perm = j.contains("perm_generators");
  if (cay == perm) throw ParseError("group file: need exactly one of 'cayley', 'perm_generators'");
  if (cay) {
    if (!j["cayley"].is_array()) throw ParseError("group file: 'cayley' must be an array");
    std::vector<std::vector<int>> table;
    for (const auto& row : j["cayley"]) {
      if (!row.is_array()) throw ParseError("group file: Cayley rows must be arrays");
      std::vector<int> r;
      for (const auto& x : row) r.push_back(static_cast<int>(detail::get_int(x, "cayley entry")));
      table.push_back(std::move(r));
    }
    return FiniteGroup::from_cayley(std::move(table));
  }
  if (!j["perm_generators"].is_array())
    throw ParseError("group file: 'perm_generators' must be an array");
  std::vector<Permutation> gens;
  for (const auto& g : j["perm_generators"]) {
    if (g.is_string()) {
      gens.push_back(parse_cycles(g.get<std::string>()));
    } else if (g.is_array()) {
      std::string joined;
      for (const auto& c : g) joined += detail::get_string(c, "perm_generators entry");
      gens.push_back(parse_cycles(joined));
    } else {
      throw ParseError("group file: generator must be a string or array of strings");
    }
  }
  return FiniteGroup::from_permutations(gens);
}

inline FiniteGroup read_group_file(const std::string& path) {
  return group_from_json(read_json_file(path));
}

// {"gram": [[...], ...]} or a bare array of rows.
inline IntMatrix gram_from_json(const Json& j) {
  const Json* rows = &j;
  if (j.is_object()) {
    detail::reject_unknown(j, {"name", "gram"}, "gram file");
    if (!j.contains("gram")) throw ParseError("gram file: missing field 'gram'");
    rows = &j["gram"];
  }
  if (!rows->is_array() || rows->empty()) throw ParseError("gram file: expected rows");
  std::vector<std::vector<Integer>> m;
  for (const auto& row : *rows) {
    if (!row.is_array()) throw ParseError("gram file: rows must be arrays");
    std::vector<Integer> r;
    for (const auto& x : row) {
      if (x.is_string())
        r.emplace_back(x.get<std::string>());
      else
        r.emplace_back(detail::get_int(x, "gram entry"));
    }
    if (r.size() != (*rows).size()) throw DimensionError("gram file: matrix is not square");
    m.push_back(std::move(r));
  }
  return IntMatrix::from(m);
}

inline IntMatrix read_gram_file(const std::string& path) {
  return gram_from_json(read_json_file(path));
}

inline Json integer_json(const Integer& x) {
  Json j;
  j["value"] = x.str();
  j["factored"] = factored(x);
  return j;
}

inline Json form_to_json(const FiniteQuadraticForm& f) {
  Json j;
  Json factors = Json::array(), q = Json::array();
  for (auto n : f.orders()) factors.push_back(n);
  for (const auto& v : f.q_values()) q.push_back(v.str());
  j["factors"] = factors;
  j["q"] = q;
  return j;
}

inline Json report_to_json(const InvariantReport& r) {
  Json j;
  j["name"] = r.name;
  j["group_order"] = r.group_order;
  j["rank_sg"] = r.rank_sg;
  j["rank_h2g"] = r.rank_h2g;
  j["d_k"] = integer_json(r.d_k);
  j["d_m"] = integer_json(r.d_m);
  j["d_j"] = integer_json(r.d_j);
  j["d_h2g"] = integer_json(r.d_h2g);
  j["d_sg"] = integer_json(r.d_sg);
  j["xiao_ok"] = r.xiao_ok;
  j["rank_cross_ok"] = r.rank_cross_ok ? Json(*r.rank_cross_ok) : Json(nullptr);
  j["sign_ok"] = r.sign_ok;
  Json d = Json::array();
  for (const auto& x : r.discrepancies) {
    Json e;
    e["field"] = x.field;
    e["published"] = x.published;
    e["published_value"] = x.published_value.str();
    e["computed"] = x.computed.str();
    e["computed_factored"] = factored(x.computed);
    d.push_back(e);
  }
  j["discrepancies"] = d;
  return j;
}

}  // namespace k3lat
