#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "clifft/algebra.hpp"
#include "clifft/expr.hpp"
#include "clifft/field.hpp"
#include "clifft/grid.hpp"
#include "clifft/report.hpp"
#include "clifft/roots.hpp"
#include "clifft/transform.hpp"
#include "clifft/uncertainty.hpp"

namespace clifft {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io {

using json = nlohmann::json;

// Shortest representation that parses back to the same bits.
inline std::string format_double(double v) { return detail::format_number(v); }

inline json multivector_to_json(const Multivector& m) {
  json coeffs = json::object();
  const auto cs = m.coeffs();
  for (std::size_t mask = 0; mask < cs.size(); ++mask) {
    if (cs[mask] != 0.0) {
      coeffs[format_blade(static_cast<blade_t>(mask))] = cs[mask];
    }
  }
  json out;
  out["p"] = m.signature().p();
  out["q"] = m.signature().q();
  out["coeffs"] = std::move(coeffs);
  return out;
}

inline Signature signature_from_json(const json& j) {
  if (!j.contains("p") || !j.contains("q") || !j["p"].is_number_integer() ||
      !j["q"].is_number_integer()) {
    throw IoError("expected integer fields \"p\" and \"q\"");
  }
  const int p = j["p"].get<int>();
  const int q = j["q"].get<int>();
  if (p < 0 || q < 0) throw IoError("signature counts must be nonnegative");
  return Signature(p, q);
}

inline Multivector multivector_from_json(const json& j) {
  if (!j.is_object()) throw IoError("multivector: expected a JSON object");
  const Signature sig = signature_from_json(j);
  Multivector m(sig);
  if (j.contains("coeffs")) {
    const json& coeffs = j["coeffs"];
    if (!coeffs.is_object()) throw IoError("multivector: \"coeffs\" must be an object");
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
      blade_t mask = 0;
      try {
        mask = parse_blade(it.key(), sig);
      } catch (const BladeParseError& e) {
        throw IoError("multivector: bad blade key \"" + it.key() + "\": " + e.what());
      }
      if (!it.value().is_number()) {
        throw IoError("multivector: coefficient of \"" + it.key() + "\" must be a number");
      }
      m[mask] = it.value().get<double>();
    }
  }
  return m;
}

inline json grid_to_json(const Grid& g) {
  json out;
  out["min"] = json::array();
  out["max"] = json::array();
  out["shape"] = json::array();
  for (int d = 0; d < g.dim(); ++d) {
    out["min"].push_back(g.lo(d));
    out["max"].push_back(g.hi(d));
    out["shape"].push_back(g.extent(d));
  }
  return out;
}

inline Grid grid_from_json(const json& j) {
  if (!j.is_object() || !j.contains("min") || !j.contains("max") || !j.contains("shape")) {
    throw IoError("grid: expected object with \"min\", \"max\", \"shape\"");
  }
  std::vector<double> lo, hi;
  std::vector<int> shape;
  for (const auto& v : j["min"]) lo.push_back(v.get<double>());
  for (const auto& v : j["max"]) hi.push_back(v.get<double>());
  for (const auto& v : j["shape"]) shape.push_back(v.get<int>());
  try {
    return Grid(lo, hi, shape);
  } catch (const GridError& e) {
    throw IoError(std::string("grid: ") + e.what());
  }
}

// Blades present anywhere in the data, ascending by mask.
inline std::vector<blade_t> active_blades(const SampledField& f) {
  std::vector<blade_t> blades;
  const std::size_t stride = f.stride();
  for (std::size_t b = 0; b < stride; ++b) {
    for (std::size_t node = 0; node < f.node_count(); ++node) {
      if (f.at(node, b) != 0.0) {
        blades.push_back(static_cast<blade_t>(b));
        break;
      }
    }
  }
  return blades;
}

inline json field_to_json(const SampledField& f) {
  const std::vector<blade_t> blades = active_blades(f);
  json out;
  out["p"] = f.signature().p();
  out["q"] = f.signature().q();
  out["grid"] = grid_to_json(f.grid());
  out["blades"] = json::array();
  for (blade_t b : blades) out["blades"].push_back(format_blade(b));
  json data = json::array();
  for (std::size_t node = 0; node < f.node_count(); ++node) {
    json tuple = json::array();
    for (blade_t b : blades) tuple.push_back(f.at(node, b));
    data.push_back(std::move(tuple));
  }
  out["data"] = std::move(data);
  return out;
}

inline SampledField field_from_json(const json& j) {
  if (!j.is_object()) throw IoError("field: expected a JSON object");
  const Signature sig = signature_from_json(j);
  const Grid grid = grid_from_json(j.contains("grid") ? j["grid"] : json());
  if (!j.contains("blades") || !j["blades"].is_array()) {
    throw IoError("field: expected array field \"blades\"");
  }
  std::vector<blade_t> blades;
  for (const auto& name : j["blades"]) {
    try {
      blades.push_back(parse_blade(name.get<std::string>(), sig));
    } catch (const BladeParseError& e) {
      throw IoError("field: bad blade \"" + name.get<std::string>() + "\": " + e.what());
    }
  }
  if (!j.contains("data") || !j["data"].is_array()) {
    throw IoError("field: expected array field \"data\"");
  }
  const json& data = j["data"];
  SampledField f(sig, grid);
  if (data.size() != f.node_count()) {
    throw IoError("field: data holds " + std::to_string(data.size()) + " nodes, grid has " +
                  std::to_string(f.node_count()));
  }
  for (std::size_t node = 0; node < f.node_count(); ++node) {
    const json& tuple = data[node];
    if (!tuple.is_array() || tuple.size() != blades.size()) {
      throw IoError("field: node " + std::to_string(node) + " tuple does not match blade list");
    }
    for (std::size_t k = 0; k < blades.size(); ++k) {
      f.at(node, blades[k]) = tuple[k].get<double>();
    }
  }
  return f;
}

// Single positive blades keep their spelling; anything else is a full multivector object.
inline json root_to_json(const ValidatedRoot& r) {
  const auto cs = r.i().coeffs();
  blade_t only = 0;
  int nonzero = 0;
  for (std::size_t mask = 0; mask < cs.size(); ++mask) {
    if (cs[mask] != 0.0) {
      ++nonzero;
      only = static_cast<blade_t>(mask);
    }
  }
  if (nonzero == 1 && cs[only] == 1.0) return json(format_blade(only));
  return multivector_to_json(r.i());
}

inline ValidatedRoot root_from_json(const json& j, const Signature& sig) {
  Multivector candidate(sig);
  if (j.is_string()) {
    try {
      candidate[parse_blade(j.get<std::string>(), sig)] = 1.0;
    } catch (const BladeParseError& e) {
      throw IoError("root: bad blade \"" + j.get<std::string>() + "\": " + e.what());
    }
  } else if (j.is_object()) {
    candidate = multivector_from_json(j);
    if (!(candidate.signature() == sig)) {
      throw IoError("root: signature does not match the field");
    }
  } else {
    throw IoError("root: expected a blade name or a multivector object");
  }
  return validate_root(candidate);
}

inline json spectrum_to_json(const Spectrum& s) {
  json out = field_to_json(s.data);
  out["root"] = root_to_json(s.root);
  out["domain"] = "frequency";
  return out;
}

inline Spectrum spectrum_from_json(const json& j) {
  if (!j.is_object() || !j.contains("domain") || j["domain"] != "frequency") {
    throw IoError("spectrum: expected \"domain\": \"frequency\"");
  }
  if (!j.contains("root")) throw IoError("spectrum: missing \"root\"");
  SampledField data = field_from_json(j);
  ValidatedRoot root = root_from_json(j["root"], data.signature());
  return Spectrum{std::move(data), std::move(root)};
}

// One row per node: coordinates x1..xn, then the listed blade components.
inline std::string field_to_csv(const SampledField& f) {
  const std::vector<blade_t> blades = active_blades(f);
  const Grid& g = f.grid();
  std::string out;
  for (int d = 0; d < g.dim(); ++d) {
    if (d) out += ',';
    out += 'x';
    out += std::to_string(d + 1);
  }
  for (blade_t b : blades) {
    out += ',';
    out += format_blade(b);
  }
  out += '\n';
  std::vector<int> idx(g.dim());
  for (std::size_t node = 0; node < f.node_count(); ++node) {
    g.unflatten(node, idx);
    for (int d = 0; d < g.dim(); ++d) {
      if (d) out += ',';
      out += format_double(g.coord(d, idx[d]));
    }
    for (blade_t b : blades) {
      out += ',';
      out += format_double(f.at(node, b));
    }
    out += '\n';
  }
  return out;
}

inline json report_to_json(const VerificationReport& r) {
  json out;
  out["name"] = r.name;
  out["lhs"] = r.lhs;
  out["rhs"] = r.rhs;
  out["ratio"] = r.ratio;
  out["tolerance"] = r.tolerance;
  out["pass"] = r.pass;
  out["diagnostics"] = json::object();
  for (const auto& [key, value] : r.diagnostics) out["diagnostics"][key] = value;
  return out;
}

inline json hardy_report_to_json(const HardyReport& r) {
  json out;
  out["class"] = to_string(r.cls);
  out["p"] = r.p;
  out["q"] = r.q;
  out["C"] = r.C;
  out["fitted_decay"] = r.fitted_decay;
  out["fitted_amplitude"] = multivector_to_json(r.fitted_amplitude);
  out["residual"] = r.residual;
  out["min_valid_C_spatial"] = r.min_valid_C_spatial;
  out["min_valid_C_spectral"] = r.min_valid_C_spectral;
  out["pass"] = r.pass;
  out["diagnostics"] = json::object();
  for (const auto& [key, value] : r.diagnostics) out["diagnostics"][key] = value;
  return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline json parse_json_text(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw IoError(origin + ": not valid JSON");
  return j;
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace io
}  // namespace clifft
