#pragma once

// JSON point files and report serialization.
//
// Point file:
//   { "dims": [d_1, ...], "rows": [ [ [ [re, im], ... ] per party ] per row ] }
// Exact readers also accept rational strings "p/q" (or decimals) for re/im.
//
// Reports are emitted by canonical_dump: keys sorted, rationals as strings
// "p/q", doubles with 17 significant digits, so a fixed run produces the
// same bytes every time.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "seplen/critical.hpp"
#include "seplen/gallery.hpp"
#include "seplen/twon.hpp"

namespace seplen {

using json = nlohmann::json;

namespace detail {

inline void dump_into(std::string& out, const json& j, int indent, int level) {
  const std::string pad = indent >= 0 ? std::string(static_cast<std::size_t>(indent * (level + 1)), ' ') : "";
  const std::string close_pad = indent >= 0 ? std::string(static_cast<std::size_t>(indent * level), ' ') : "";
  const char* nl = indent >= 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: sorted keys
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + json(it.key()).dump() + (indent >= 0 ? ": " : ":");
        dump_into(out, it.value(), indent, level + 1);
      }
      out += nl + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",";
        if (!flat) out += nl + pad;
        else if (!first && indent >= 0) out += " ";
        first = false;
        dump_into(out, e, indent, level + 1);
      }
      if (!flat) out += nl + close_pad;
      out += "]";
      return;
    }
    case json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Byte-stable JSON text.
inline std::string canonical_dump(const json& j, int indent = 2) {
  std::string out;
  detail::dump_into(out, j, indent, 0);
  return out;
}

// ---- scalars and points ---------------------------------------------------

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const GaussianRational& z) { return json::array({to_string(z.re), to_string(z.im)}); }
inline json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline Rational rational_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  if (v.is_number_float()) return Rational(v.get<double>());
  throw std::invalid_argument("expected a number or a rational string");
}

inline double double_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>()).get_d();
  if (v.is_number()) return v.get<double>();
  throw std::invalid_argument("expected a number or a rational string");
}

template <class T>
T scalar_from_json(const json& v) {
  if (!v.is_array() || v.size() != 2) throw std::invalid_argument("scalar must be [re, im]");
  if constexpr (scalar_traits<T>::exact) {
    return GaussianRational(rational_from_json(v[0]), rational_from_json(v[1]));
  } else {
    return Complex(double_from_json(v[0]), double_from_json(v[1]));
  }
}

inline Dims dims_from_json(const json& v) {
  if (!v.is_array()) throw dimension_error("dims must be an array of integers");
  std::vector<int> out;
  for (const auto& d : v) {
    if (!d.is_number_integer()) throw dimension_error("dims must be an array of integers");
    out.push_back(d.get<int>());
  }
  return Dims(std::move(out));
}

inline json to_json(const Dims& dims) { return dims.values(); }

template <class T>
PointMatrix<T> point_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("rows")) throw std::invalid_argument("point needs dims and rows");
  const Dims dims = dims_from_json(j.at("dims"));
  std::vector<ProductVector<T>> rows;
  for (const auto& row : j.at("rows")) {
    std::vector<std::vector<T>> comps;
    for (const auto& party : row) {
      std::vector<T> v;
      for (const auto& x : party) v.push_back(scalar_from_json<T>(x));
      comps.push_back(std::move(v));
    }
    rows.emplace_back(std::move(comps));
  }
  return PointMatrix<T>(dims, std::move(rows));
}

template <class T>
json to_json(const PointMatrix<T>& z) {
  json rows = json::array();
  for (const auto& row : z.row_list()) {
    json parties = json::array();
    for (const auto& v : row.components()) {
      json comp = json::array();
      for (const auto& x : v) comp.push_back(to_json(x));
      parties.push_back(comp);
    }
    rows.push_back(parties);
  }
  return {{"dims", to_json(z.dims())}, {"rows", rows}};
}

/// Operator file: { "dims": [...], "matrix": [ [ [re, im], ... ] per row ] }.
template <class T>
HermitianOperator<T> operator_from_json(const json& j, Dims& dims_out) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("matrix"))
    throw std::invalid_argument("operator needs dims and matrix");
  dims_out = dims_from_json(j.at("dims"));
  const std::size_t d = dims_out.total();
  const auto& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() != d) throw dimension_error("operator has wrong number of rows");
  Matrix<T> m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (!rows[r].is_array() || rows[r].size() != d) throw dimension_error("operator row has wrong length");
    for (std::size_t c = 0; c < d; ++c) m(r, c) = scalar_from_json<T>(rows[r][c]);
  }
  return HermitianOperator<T>(std::move(m));
}

template <class T>
json to_json(const HermitianOperator<T>& rho) {
  json rows = json::array();
  for (std::size_t r = 0; r < rho.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < rho.size(); ++c) row.push_back(to_json(rho(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

// ---- reports ----------------------------------------------------------------

inline json to_json(const RankReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) samples.push_back({{"sample_seed", s.sample_seed}, {"rank", s.rank}});
  json out = {{"dims", to_json(r.dims)},
              {"r", r.r},
              {"backend", std::string(to_string(r.backend))},
              {"seed", r.seed},
              {"samples", samples},
              {"generic_rank", r.generic_rank},
              {"upper_bound", r.upper_bound}};
  if (r.backend == Backend::floating)
    out["tolerance"] = r.tolerance.value_or(default_rank_tolerance(std::max(r.upper_bound, 2 * r.r * r.dims.local_sum())));
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

inline json to_json(const ConjectureReport& c) {
  return {{"dims", to_json(c.dims)},
          {"d", c.d},
          {"l_c", c.l_c},
          {"generic_rank", c.ranks.generic_rank},
          {"target_rank", c.dims.hermitian_dim()},
          {"verdict", std::string(to_string(c.verdict))},
          {"ranks", to_json(c.ranks)}};
}

inline json to_json(const std::vector<FiltrationEntry>& entries, const Dims& dims) {
  json rows = json::array();
  for (const auto& e : entries)
    rows.push_back({{"r", e.r}, {"generic_rank", e.generic_rank}, {"dim", e.dim}, {"ranks", to_json(e.ranks)}});
  return {{"dims", to_json(dims)}, {"hermitian_dim", dims.hermitian_dim()}, {"entries", rows}};
}

inline json to_json(const LengthClassification& c) {
  json out = {{"verdict", std::string(to_string(c.verdict))},
              {"lower_bound", c.lower_bound},
              {"ranks", c.ranks},
              {"separability_assumed", c.separability_assumed}};
  out["length"] = c.length ? json(*c.length) : json(nullptr);
  return out;
}

inline json to_json(const TheoremReport& t) {
  json a = json::array();
  json b = json::array();
  for (const auto& x : t.params.a) a.push_back(to_string(x));
  for (const auto& x : t.params.b) b.push_back(to_string(x));
  json checks = json::array();
  for (const auto& c : t.checks) {
    json e = {{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(e);
  }
  json blocks = json::array();
  for (const auto& bl : t.blocks)
    blocks.push_back({{"u", bl.uv.u},
                      {"v", bl.uv.v},
                      {"det", to_string(bl.det)},
                      {"formula", to_string(bl.formula)},
                      {"column_signs", bl.column_signs}});
  json out = {{"n", t.params.n},
              {"a", a},
              {"b", b},
              {"generic", t.generic()},
              {"genericity_violations", t.violations},
              {"det_msharp", to_string(t.det_msharp)},
              {"det_msharp_sign", t.det_sign()},
              {"closed_form", to_string(t.closed_form)},
              {"det_mdoublesharp", to_string(t.det_mdoublesharp)},
              {"blocks", blocks},
              {"jacobian_rank", t.jacobian_rank},
              {"expected_rank", t.params.order()},
              {"checks", checks},
              {"passed", t.passed()}};
  if (t.seeded) out["seed"] = t.seed;
  return out;
}

inline json to_json(const Fixture& f) {
  json asserts = json::array();
  for (const auto& a : f.assertions)
    asserts.push_back({{"name", a.name}, {"expected", a.expected}, {"observed", a.observed}, {"passed", a.passed}});
  json out = {{"name", f.name},
              {"dims", to_json(f.dims)},
              {"operator", to_json(f.rho)},
              {"assertions", asserts},
              {"passed", f.passed()}};
  if (f.exact_point) out["point"] = to_json(*f.exact_point);
  return out;
}

}  // namespace seplen
