#pragma once

// File formats and report emitters.
//
//   scheme      {"points":[...], "classes":[...], "relations":[[x,y,class],...]}
//   cayley      {"elements":[...], "table":[[...]], "subgroup":[...]}
//   hypergroup  {"classes":[...], "identity":..., "involution":[...],
//                "conv":[[i,j,k,value],...], "haar":[...]}, values "p/q" or floats
//   generalized scheme fields plus {"stoch":{class:[[...]]}, "vertex_weight":[...],
//                "base_point":..., "boundary_distance":[...] (optional window)}
//
// Reports are nlohmann::ordered_json so keys come out in insertion order.

#include "hyperschemes/generalized.hpp"
#include "hyperschemes/group.hpp"
#include "hyperschemes/harmonic.hpp"

#include <json.hpp>

#include <fstream>
#include <map>

namespace hyperschemes {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// reading

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

namespace detail {

template <class F>
auto json_guard(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

inline std::string label_of(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorCode::ParseError, "labels must be strings or integers");
}

inline std::vector<std::string> labels_of(const Json& arr) {
  if (!arr.is_array()) throw Error(ErrorCode::ParseError, "expected an array of labels");
  std::vector<std::string> out;
  for (const auto& v : arr) out.push_back(label_of(v));
  return out;
}

inline double number_of(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return ScalarTraits<Rational>::to_double(parse_fraction(v.get<std::string>()));
  throw Error(ErrorCode::ParseError, "expected a number or a fraction string");
}

inline Rational rational_of(const Json& v) {
  if (v.is_string()) return parse_fraction(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw Error(ErrorCode::ParseError, "exact values must be integers or \"p/q\" strings");
}

}  // namespace detail

inline RelationPartition parse_partition_json(const Json& j) {
  return detail::json_guard("scheme", [&] {
    if (!j.is_object() || !j.contains("points") || !j.contains("classes") || !j.contains("relations"))
      throw Error(ErrorCode::ParseError, "scheme needs points, classes and relations");
    std::vector<std::tuple<std::string, std::string, std::string>> rel;
    for (const auto& t : j.at("relations")) {
      if (!t.is_array() || t.size() != 3) throw Error(ErrorCode::ParseError, "relation entries are [x,y,class]");
      rel.emplace_back(detail::label_of(t[0]), detail::label_of(t[1]), detail::label_of(t[2]));
    }
    return RelationPartition::from_triples(detail::labels_of(j.at("points")), detail::labels_of(j.at("classes")),
                                           rel);
  });
}

inline bool is_cayley_json(const Json& j) { return j.is_object() && j.contains("table"); }

inline std::pair<FiniteGroup, std::vector<int>> parse_cayley_json(const Json& j) {
  return detail::json_guard("cayley table", [&] {
    auto elements = detail::labels_of(j.at("elements"));
    std::vector<std::vector<int>> table;
    auto index = [&](const Json& v) -> int {
      if (v.is_number_integer()) return v.get<int>();
      const auto l = detail::label_of(v);
      for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == l) return static_cast<int>(i);
      throw Error(ErrorCode::InvalidCayleyTable, "unknown element '" + l + "'");
    };
    for (const auto& row : j.at("table")) {
      std::vector<int> r;
      for (const auto& v : row) r.push_back(index(v));
      table.push_back(std::move(r));
    }
    std::vector<int> sub;
    if (j.contains("subgroup"))
      for (const auto& v : j.at("subgroup")) sub.push_back(index(v));
    FiniteGroup g(std::move(elements), std::move(table));
    if (sub.empty()) sub.push_back(g.identity());
    return std::make_pair(std::move(g), std::move(sub));
  });
}

/// Either format; Cayley tables become the quotient scheme on G/H.
inline Scheme scheme_from_json(const Json& j) {
  if (is_cayley_json(j)) {
    auto [g, h] = parse_cayley_json(j);
    return scheme_from_group_quotient(g, h);
  }
  return build_scheme(parse_partition_json(j));
}

inline Scheme load_scheme(const std::string& path) { return scheme_from_json(load_json(path)); }

inline Json scheme_to_json(const RelationPartition& p) {
  Json j;
  j["points"] = p.points();
  j["classes"] = p.classes();
  Json rel = Json::array();
  for (std::size_t x = 0; x < p.num_points(); ++x)
    for (std::size_t y = 0; y < p.num_points(); ++y)
      rel.push_back(Json::array({p.points()[x], p.points()[y], p.classes()[p(x, y)]}));
  j["relations"] = std::move(rel);
  return j;
}

template <class T>
Json hypergroup_to_json(const FiniteHypergroup<T>& h) {
  auto val = [](const T& v) -> Json {
    if constexpr (std::is_same_v<T, Rational>)
      return to_fraction_string(v);
    else
      return v;
  };
  Json j;
  j["classes"] = h.classes;
  j["identity"] = h.classes[h.identity];
  Json inv = Json::array();
  for (int i : h.involution) inv.push_back(h.classes[i]);
  j["involution"] = std::move(inv);
  Json conv = Json::array();
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t jj = 0; jj < h.size(); ++jj)
      for (std::size_t k = 0; k < h.size(); ++k)
        if (h.conv(i, jj, k) != T(0)) conv.push_back(Json::array({h.classes[i], h.classes[jj], h.classes[k], val(h.conv(i, jj, k))}));
  j["conv"] = std::move(conv);
  Json haar = Json::array();
  for (const auto& w : h.haar_left) haar.push_back(val(w));
  j["haar"] = std::move(haar);
  return j;
}

namespace detail {
template <class T, class Conv>
FiniteHypergroup<T> parse_hypergroup(const Json& j, Conv conv_value) {
  return json_guard("hypergroup", [&] {
    FiniteHypergroup<T> h;
    h.classes = labels_of(j.at("classes"));
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < h.classes.size(); ++i) idx[h.classes[i]] = static_cast<int>(i);
    auto find = [&](const Json& v) {
      const auto l = label_of(v);
      const auto it = idx.find(l);
      if (it == idx.end()) throw Error(ErrorCode::ParseError, "unknown class '" + l + "'");
      return it->second;
    };
    const std::size_t n = h.classes.size();
    h.identity = find(j.at("identity"));
    for (const auto& v : j.at("involution")) h.involution.push_back(find(v));
    h.conv = Tensor3<T>(n, T(0));
    for (const auto& e : j.at("conv")) {
      if (!e.is_array() || e.size() != 4) throw Error(ErrorCode::ParseError, "conv entries are [i,j,k,value]");
      h.conv(find(e[0]), find(e[1]), find(e[2])) = conv_value(e[3]);
    }
    for (const auto& v : j.at("haar")) h.haar_left.push_back(conv_value(v));
    if (h.involution.size() != n || h.haar_left.size() != n)
      throw Error(ErrorCode::ParseError, "involution and haar need one entry per class");
    for (std::size_t i = 0; i < n; ++i) h.haar_right.push_back(h.haar_left[h.involution[i]]);
    return h;
  });
}
}  // namespace detail

inline ExactHypergroup parse_exact_hypergroup(const Json& j) {
  return detail::parse_hypergroup<Rational>(j, detail::rational_of);
}
inline FloatHypergroup parse_float_hypergroup(const Json& j) {
  return detail::parse_hypergroup<double>(j, detail::number_of);
}

/// Generalized scheme JSON. The optional "boundary_distance" array turns on
/// the window policy.
inline GeneralizedScheme generalized_from_json(const Json& j, GeneralizedOptions opt = {}) {
  auto part = parse_partition_json(j);
  return detail::json_guard("generalized scheme", [&] {
    const std::size_t n = part.num_points(), d = part.num_classes();
    std::vector<MatrixXd> st(d, MatrixXd::Zero(n, n));
    const auto& stoch = j.at("stoch");
    for (std::size_t i = 0; i < d; ++i) {
      const auto& label = part.classes()[i];
      if (!stoch.contains(label)) throw Error(ErrorCode::ParseError, "stoch has no matrix for class '" + label + "'");
      const auto& m = stoch.at(label);
      if (m.size() != n) throw Error(ErrorCode::NonSquare, "stoch matrix for '" + label + "' has wrong shape");
      for (std::size_t x = 0; x < n; ++x) {
        if (m[x].size() != n) throw Error(ErrorCode::NonSquare, "stoch matrix for '" + label + "' has wrong shape");
        for (std::size_t y = 0; y < n; ++y) st[i](x, y) = detail::number_of(m[x][y]);
      }
    }
    VectorXd w(static_cast<Eigen::Index>(n));
    const auto& wj = j.at("vertex_weight");
    if (wj.size() != n) throw Error(ErrorCode::InvalidInput, "vertex_weight needs one entry per point");
    for (std::size_t x = 0; x < n; ++x) w(x) = detail::number_of(wj[x]);
    if (j.contains("base_point")) opt.base_point = part.point_index(detail::label_of(j.at("base_point")));
    if (j.contains("boundary_distance")) {
      Window win;
      for (const auto& v : j.at("boundary_distance")) win.boundary_distance.push_back(v.get<int>());
      opt.window = std::move(win);
    }
    std::optional<Scheme> base;
    if (!opt.window) base = build_scheme(part);
    return build_generalized(std::move(part), std::move(st), std::move(w), opt, std::move(base));
  });
}

// ---------------------------------------------------------------------------
// reports

inline Json error_json(const Error& e) {
  Json j;
  j["code"] = to_string(e.code());
  j["message"] = e.what();
  return j;
}

inline Json verify_report(const Scheme& s) {
  Json j;
  j["points"] = s.num_points();
  j["classes"] = s.partition().classes();
  j["identity"] = s.partition().classes()[s.identity()];
  Json inv = Json::array();
  for (int i : s.involution()) inv.push_back(s.partition().classes()[i]);
  j["involution"] = std::move(inv);
  j["valencies"] = s.valencies();
  Json p = Json::array();
  const std::size_t d = s.num_classes();
  for (std::size_t i = 0; i < d; ++i) {
    Json row = Json::array();
    for (std::size_t jj = 0; jj < d; ++jj) {
      Json col = Json::array();
      for (std::size_t k = 0; k < d; ++k) col.push_back(s.p(i, jj, k));
      row.push_back(std::move(col));
    }
    p.push_back(std::move(row));
  }
  j["p"] = std::move(p);
  j["commutative"] = is_commutative(s);
  j["symmetric"] = is_symmetric(s);
  j["unimodular"] = is_unimodular(s);
  const auto m = audit_multass(s);
  Json ids = Json::array();
  for (const auto& c : m.checks) {
    Json e;
    e["identity"] = c.number;
    e["statement"] = c.statement;
    e["passed"] = c.passed;
    if (!c.passed) e["witness"] = c.witness;
    ids.push_back(std::move(e));
  }
  j["identities"] = std::move(ids);
  j["all_passed"] = m.all_passed();
  return j;
}

inline Json axioms_json(const HypergroupReport& rep) {
  Json out = Json::array();
  for (const auto& c : rep.checks) {
    Json e;
    e["axiom"] = c.axiom;
    e["passed"] = c.passed;
    if (!c.passed) e["witness"] = c.witness;
    out.push_back(std::move(e));
  }
  return out;
}

inline Json complex_json(Complex z) { return format_complex(z); }

/// Rows are characters, columns classes; complex entries as "a+bi".
inline std::string character_csv(const CharacterTable& tbl) {
  std::string out = "character,plancherel";
  for (const auto& c : tbl.classes) out += "," + c;
  out += "\n";
  for (std::size_t a = 0; a < tbl.size(); ++a) {
    out += character_label(a) + "," + format_double(tbl.plancherel[a]);
    for (const auto& v : tbl.chars[a]) out += "," + format_complex(v);
    out += "\n";
  }
  return out;
}

inline Json character_json(const CharacterTable& tbl) {
  Json j;
  j["classes"] = tbl.classes;
  j["haar"] = tbl.haar;
  Json chars = Json::array();
  for (std::size_t a = 0; a < tbl.size(); ++a) {
    Json c;
    c["label"] = character_label(a);
    c["plancherel"] = tbl.plancherel[a];
    c["conjugate"] = character_label(tbl.conjugate[a]);
    Json vals = Json::array();
    for (const auto& v : tbl.chars[a]) vals.push_back(format_complex(v));
    c["values"] = std::move(vals);
    chars.push_back(std::move(c));
  }
  j["characters"] = std::move(chars);
  j["positive_character"] = character_label(tbl.positive_index);
  j["multiplicativity_residual"] = tbl.multiplicativity_residual;
  return j;
}

inline Json dual_table_json(const CharacterTable& tbl, const HarmonicOptions& opt = {}) {
  Json entries = Json::array();
  bool all = true;
  double min_raw = 1e300;
  for (std::size_t a = 0; a < tbl.size(); ++a)
    for (std::size_t b = 0; b < tbl.size(); ++b) {
      const auto m = dual_convolution(tbl, static_cast<int>(a), static_cast<int>(b), opt);
      Json e;
      e["alpha"] = character_label(a);
      e["beta"] = character_label(b);
      Json raw = Json::array();
      for (const auto& c : m.raw) raw.push_back(complex_json(c));
      e["raw"] = std::move(raw);
      e["weights"] = m.weights;
      e["sum_raw"] = m.sum_raw;
      e["nonnegative"] = m.nonnegative;
      all = all && m.nonnegative;
      min_raw = std::min(min_raw, m.min_raw);
      entries.push_back(std::move(e));
    }
  Json j;
  Json labels = Json::array();
  for (std::size_t a = 0; a < tbl.size(); ++a) labels.push_back(character_label(a));
  j["characters"] = std::move(labels);
  j["entries"] = std::move(entries);
  j["min_raw_coefficient"] = min_raw;
  j["all_nonnegative"] = all;
  return j;
}

inline Json generalized_audit_json(const GeneralizedScheme& g) {
  Json j;
  j["points"] = g.num_points();
  j["classes"] = g.partition.classes();
  j["windowed"] = g.windowed();
  j["stochastic_residual"] = g.audit.stochastic_residual;
  j["balance_residual"] = g.audit.balance_residual;
  j["invariance_residual"] = g.audit.invariance_residual;
  j["closure_residual"] = g.audit.closure_residual;
  j["sum_residual"] = g.audit.sum_residual;
  j["interior_fraction"] = g.audit.interior_fraction;
  j["commutative"] = g.commutative;
  j["symmetric"] = g.symmetric;
  Json haar = Json::array();
  for (double w : g.haar) haar.push_back(std::isnan(w) ? Json(nullptr) : Json(w));
  j["haar"] = std::move(haar);
  return j;
}

/// Writes text to a file, creating nothing but the file itself.
inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  out << text;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hyperschemes
