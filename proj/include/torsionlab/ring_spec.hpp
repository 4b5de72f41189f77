#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "torsionlab/delta.hpp"
#include "torsionlab/error.hpp"
#include "torsionlab/ideal.hpp"
#include "torsionlab/module.hpp"
#include "torsionlab/ring.hpp"

namespace torsionlab {

/// Largest ring the spec language will build.
inline constexpr std::size_t kMaxSpecOrder = 1024;

namespace detail {

/// Splits on commas that are not nested inside parentheses.
inline std::vector<std::pair<std::string_view, std::size_t>> split_top_level(std::string_view s,
                                                                              std::size_t offset,
                                                                              char sep = ',') {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '(') ++depth;
    if (i < s.size() && s[i] == ')') --depth;
    if (i == s.size() || (s[i] == sep && depth == 0)) {
      out.emplace_back(s.substr(start, i - start), offset + start);
      start = i + 1;
    }
  }
  return out;
}

inline std::string_view trim_view(std::string_view s, std::size_t& pos) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1), ++pos;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json parse_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": malformed JSON: " + e.what(), e.byte);
  }
}

/// Reads a field, reporting its JSON pointer on failure.
template <class T>
T json_get(const nlohmann::json& doc, const nlohmann::json::json_pointer& where, const std::string& file) {
  if (!doc.contains(where)) throw ParseError(file + ": missing " + where.to_string());
  try {
    return doc.at(where).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(file + ": wrong type at " + where.to_string());
  }
}

inline std::vector<std::vector<Index>> json_table(const nlohmann::json& doc, const std::string& key,
                                                  std::size_t rows, std::size_t cols, std::size_t bound,
                                                  const std::string& file) {
  using ptr = nlohmann::json::json_pointer;
  const ptr base("/" + key);
  if (!doc.contains(base) || !doc.at(base).is_array()) throw ParseError(file + ": missing table " + base.to_string());
  const auto& t = doc.at(base);
  if (t.size() != rows)
    throw ParseError(file + ": " + base.to_string() + " has " + std::to_string(t.size()) + " rows, expected " +
                     std::to_string(rows));
  std::vector<std::vector<Index>> out(rows, std::vector<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const ptr row = base / i;
    if (!t[i].is_array() || t[i].size() != cols)
      throw ParseError(file + ": " + row.to_string() + " must be an array of " + std::to_string(cols) + " entries");
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& v = t[i][j];
      if (!v.is_number_unsigned() || v.get<std::size_t>() >= bound)
        throw ParseError(file + ": " + (row / j).to_string() + " is not an element index below " +
                         std::to_string(bound));
      out[i][j] = v.get<Index>();
    }
  }
  return out;
}

inline std::size_t parse_size(std::string_view s, std::size_t pos) {
  s = trim_view(s, pos);
  if (s.empty() || s.size() > 6) throw ParseError("expected a positive integer", pos);
  std::size_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("expected a positive integer", pos);
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

}  // namespace detail

/// Ring from a JSON table file {"order", "add", "mul", "zero", "one"} with
/// optional "name" and "elements" (display names).
inline RingPtr load_ring_table(const std::string& path) {
  using ptr = nlohmann::json::json_pointer;
  const auto doc = detail::parse_json_file(path);
  if (!doc.is_object()) throw ParseError(path + ": expected a JSON object");
  const auto n = detail::json_get<std::size_t>(doc, ptr("/order"), path);
  if (n == 0 || n > 4096) throw ParseError(path + ": /order must be between 1 and 4096");
  auto add = detail::json_table(doc, "add", n, n, n, path);
  auto mul = detail::json_table(doc, "mul", n, n, n, path);
  const auto zero = detail::json_get<Index>(doc, ptr("/zero"), path);
  const auto one = detail::json_get<Index>(doc, ptr("/one"), path);
  if (zero >= n || one >= n) throw ParseError(path + ": /zero and /one must be element indices");
  std::vector<std::string> names;
  if (doc.contains("elements")) names = detail::json_get<std::vector<std::string>>(doc, ptr("/elements"), path);
  if (!names.empty() && names.size() != n) throw ParseError(path + ": /elements must name every element");
  std::unordered_map<std::string, Index> atoms;
  for (Index i = 0; i < names.size(); ++i) atoms.emplace(names[i], i);
  const std::string name = doc.contains("name") ? detail::json_get<std::string>(doc, ptr("/name"), path)
                                                : "table:" + path;
  return std::make_shared<const FiniteRing>(name, add, mul, zero, one, std::move(names), std::move(atoms));
}

namespace detail {

inline RingPtr parse_ring_spec_at(std::string_view text, std::size_t pos) {
  text = trim_view(text, pos);
  if (text.starts_with("table:")) {
    auto path = text.substr(6);
    if (path.empty()) throw ParseError("table: needs a file path", pos + 6);
    return load_ring_table(std::string(path));
  }
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw ParseError("expected NAME(...) in ring spec '" + std::string(text) + "'", pos);
  const auto head = text.substr(0, open);
  const auto body = text.substr(open + 1, text.size() - open - 2);
  const auto args = split_top_level(body, pos + open + 1);
  auto one_size = [&](const char* what) {
    if (args.size() != 1) throw ParseError(std::string(what) + " takes one argument", pos);
    return parse_size(args[0].first, args[0].second);
  };
  auto capped = [&](std::size_t order) {
    if (order > kMaxSpecOrder)
      throw ParseError("ring order " + std::to_string(order) + " exceeds " + std::to_string(kMaxSpecOrder), pos);
  };
  try {
    if (head == "Z") {
      const auto n = one_size("Z");
      if (n == 0) throw ParseError("Z(n) needs n >= 1", args[0].second);
      capped(n);
      return cyclic_ring(n);
    }
    if (head == "GF") {
      const auto p = one_size("GF");
      capped(p);
      return prime_field(p);
    }
    if (head == "UT2") {
      const auto p = one_size("UT2");
      capped(p * p * p);
      return upper_triangular(p);
    }
    if (head == "M2") {
      const auto p = one_size("M2");
      capped(p * p * p * p);
      return matrix_ring(p);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), pos);
  }
  if (head == "prod") {
    if (args.size() < 2) throw ParseError("prod needs at least two factors", pos);
    RingPtr acc = parse_ring_spec_at(args.back().first, args.back().second);
    for (std::size_t i = args.size() - 1; i-- > 0;) {
      auto factor = parse_ring_spec_at(args[i].first, args[i].second);
      capped(factor->order() * acc->order());
      acc = product_ring(factor, acc);
    }
    return acc;
  }
  if (head == "quot") {
    if (args.empty()) throw ParseError("quot needs a ring", pos);
    auto base = parse_ring_spec_at(args[0].first, args[0].second);
    std::vector<Index> gens;
    for (std::size_t i = 1; i < args.size(); ++i) {
      std::size_t p = args[i].second;
      auto g = trim_view(args[i].first, p);
      try {
        gens.push_back(parse_element(*base, g));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), p);
      }
    }
    return quotient_ring(base, two_sided_closure(base, std::move(gens))).ring;
  }
  throw ParseError("unknown ring constructor '" + std::string(head) + "'", pos);
}

}  // namespace detail

/// Z(n), GF(p), UT2(p), M2(p), prod(S1,S2,...), quot(S,g1,...), table:PATH.
/// prod with more than two factors nests to the right.
inline RingPtr parse_ring_spec(std::string_view text) { return detail::parse_ring_spec_at(text, 0); }

/// "g1,g2,..." as ring elements.
inline std::vector<Index> parse_generators(const FiniteRing& ring, std::string_view text) {
  std::vector<Index> out;
  for (auto [part, pos] : detail::split_top_level(text, 0)) {
    part = detail::trim_view(part, pos);
    if (part.empty()) throw ParseError("empty generator", pos);
    out.push_back(parse_element(ring, part));
  }
  return out;
}

/// "g,g;g" as a family of left ideals, each with its listed generators.
inline std::vector<LeftIdeal> parse_filter(const RingPtr& ring, std::string_view text) {
  std::vector<LeftIdeal> out;
  for (auto [part, pos] : detail::split_top_level(text, 0, ';')) {
    part = detail::trim_view(part, pos);
    if (part.empty()) continue;
    out.push_back(left_ideal_closure(ring, parse_generators(*ring, part)));
  }
  return out;
}

/// A module element: its display name, "#k", a bare index, or (for modules
/// whose elements carry ring-element names) a ring element literal.
inline Index parse_module_element(const FiniteModule& m, std::string_view text) {
  std::size_t pos = 0;
  text = detail::trim_view(text, pos);
  for (Index x = 0; x < m.order(); ++x)
    if (m.display(x) == text) return x;
  auto digits = text;
  if (digits.starts_with('#')) digits.remove_prefix(1);
  if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const auto v = detail::parse_size(digits, 0);
    if (v < m.order()) return static_cast<Index>(v);
  }
  throw ParseError("no element '" + std::string(text) + "' in module " + m.name());
}

/// Module from a JSON file {"ring", "order", "add", "act", "zero"}.
inline ModulePtr load_module_file(const std::string& path) {
  using ptr = nlohmann::json::json_pointer;
  const auto doc = detail::parse_json_file(path);
  if (!doc.is_object()) throw ParseError(path + ": expected a JSON object");
  auto ring = parse_ring_spec(detail::json_get<std::string>(doc, ptr("/ring"), path));
  const auto m = detail::json_get<std::size_t>(doc, ptr("/order"), path);
  if (m == 0 || m > 4096) throw ParseError(path + ": /order must be between 1 and 4096");
  auto add = detail::json_table(doc, "add", m, m, m, path);
  auto act = detail::json_table(doc, "act", ring->order(), m, m, path);
  const auto zero = detail::json_get<Index>(doc, ptr("/zero"), path);
  if (zero >= m) throw ParseError(path + ": /zero must be an element index");
  const std::string name = doc.contains("name") ? detail::json_get<std::string>(doc, ptr("/name"), path)
                                                : "table:" + path;
  return std::make_shared<const FiniteModule>(ring, name, add, act, zero);
}

/// "regular", "R^k", "R/(g1,...)" or "table:PATH".
inline ModulePtr parse_module_spec(const RingPtr& ring, std::string_view text) {
  std::size_t pos = 0;
  text = detail::trim_view(text, pos);
  if (text == "regular" || text == "R") return regular_module(ring);
  if (text.starts_with("table:")) {
    auto m = load_module_file(std::string(text.substr(6)));
    if (!m->ring()->same_structure(*ring))
      throw ParseError("module file ring differs from " + ring->name());
    return std::make_shared<const FiniteModule>(ring, m->name(), m->add_table(), m->act_table(), m->zero());
  }
  if (text.starts_with("R^")) {
    const auto k = detail::parse_size(text.substr(2), 2);
    if (k == 0 || k > 4) throw ParseError("R^k needs 1 <= k <= 4", 2);
    return power_module(ring, k);
  }
  if (text.starts_with("R/")) {
    auto rest = text.substr(2);
    if (rest.starts_with('(') && rest.ends_with(')')) rest = rest.substr(1, rest.size() - 2);
    auto reg = regular_module(ring);
    return quotient_module(reg, submodule_closure(reg, parse_generators(*ring, rest))).module;
  }
  throw ParseError("unknown module spec '" + std::string(text) + "'", pos);
}

/// Delta-axiom from {"ring", "u_arity", "z_arity", "rows": [{a, b, c, d, e}]};
/// coefficients are indices or element literals.
inline DeltaAxiom load_delta_file(const std::string& path, RingPtr ring = nullptr) {
  using ptr = nlohmann::json::json_pointer;
  const auto doc = detail::parse_json_file(path);
  if (!doc.is_object()) throw ParseError(path + ": expected a JSON object");
  if (!ring) ring = parse_ring_spec(detail::json_get<std::string>(doc, ptr("/ring"), path));
  const auto k = doc.contains("u_arity") ? detail::json_get<std::size_t>(doc, ptr("/u_arity"), path) : 0;
  const auto l = doc.contains("z_arity") ? detail::json_get<std::size_t>(doc, ptr("/z_arity"), path) : 0;
  if (!doc.contains("rows") || !doc["rows"].is_array()) throw ParseError(path + ": missing /rows");
  auto coef = [&](const nlohmann::json& v, const ptr& where) -> Index {
    if (v.is_number_unsigned()) {
      if (v.get<std::size_t>() >= ring->order()) throw ParseError(path + ": index out of range at " + where.to_string());
      return v.get<Index>();
    }
    if (v.is_string()) {
      try {
        return parse_element(*ring, v.get<std::string>());
      } catch (const ParseError& e) {
        throw ParseError(path + ": " + where.to_string() + ": " + e.what());
      }
    }
    throw ParseError(path + ": expected an element at " + where.to_string());
  };
  auto list = [&](const nlohmann::json& row, const ptr& where, const char* key, std::size_t arity) {
    std::vector<Index> out;
    if (!row.contains(key)) {
      if (arity != 0) throw ParseError(path + ": missing " + (where / key).to_string());
      return out;
    }
    const auto& arr = row[key];
    if (!arr.is_array() || arr.size() != arity)
      throw ParseError(path + ": " + (where / key).to_string() + " must list " + std::to_string(arity) + " coefficients");
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(coef(arr[i], where / key / i));
    return out;
  };
  std::vector<DeltaRow> rows;
  for (std::size_t j = 0; j < doc["rows"].size(); ++j) {
    const auto& row = doc["rows"][j];
    const ptr where = ptr("/rows") / j;
    if (!row.is_object()) throw ParseError(path + ": " + where.to_string() + " must be an object");
    if (!row.contains("a") || !row.contains("b")) throw ParseError(path + ": " + where.to_string() + " needs a and b");
    DeltaRow r;
    r.a = coef(row["a"], where / "a");
    r.b = coef(row["b"], where / "b");
    r.c = list(row, where, "c", k);
    r.d = list(row, where, "d", k);
    r.e = list(row, where, "e", l);
    rows.push_back(std::move(r));
  }
  return DeltaAxiom(ring, k, l, std::move(rows));
}

}  // namespace torsionlab
