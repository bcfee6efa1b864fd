#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "clifft/corpus.hpp"
#include "clifft/io.hpp"
#include "clifft/svg.hpp"
#include "clifft/transform.hpp"

using namespace clifft;
using nlohmann::json;

namespace {

bool same_bits(double a, double b) {
  std::uint64_t ua, ub;
  std::memcpy(&ua, &a, sizeof a);
  std::memcpy(&ub, &b, sizeof b);
  return ua == ub;
}

// Field payloads promise bit equality except that the sign of zero may be
// dropped along with the omitted-blade shorthand.
bool same_value(double a, double b) {
  if (a == 0.0 && b == 0.0) return true;
  return same_bits(a, b);
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("multivector json round trip", "[io]") {
  SECTION("documented form") {
    const Signature sig(2, 0);
    Multivector m(sig);
    m[0b00] = 3.0;
    m[0b01] = 4.0;
    const json j = io::multivector_to_json(m);
    REQUIRE(j["p"] == 2);
    REQUIRE(j["q"] == 0);
    REQUIRE(j["coeffs"]["1"] == 3.0);
    REQUIRE(j["coeffs"]["e1"] == 4.0);
    REQUIRE(j["coeffs"].size() == 2);  // zero coefficients omitted

    const Multivector back = io::multivector_from_json(j);
    REQUIRE(back == m);
  }

  SECTION("awkward doubles survive a text round trip bit for bit") {
    const Signature sig(1, 2);
    Multivector m(sig);
    const double values[] = {0.1,
                             1.0 / 3.0,
                             3.141592653589793,
                             1e-300,
                             -2.2250738585072014e-308,
                             1.7976931348623157e308,
                             6.02214076e23,
                             std::nextafter(1.0, 2.0)};
    for (std::size_t k = 0; k < std::size(values); ++k) {
      m[static_cast<blade_t>(k)] = values[k];
    }
    const std::string text = io::dump_json(io::multivector_to_json(m));
    const Multivector back = io::multivector_from_json(io::parse_json_text(text, "test"));
    for (std::size_t k = 0; k < sig.blade_count(); ++k) {
      REQUIRE(same_bits(back[static_cast<blade_t>(k)], m[static_cast<blade_t>(k)]));
    }
  }

  SECTION("malformed input is rejected") {
    REQUIRE_THROWS_AS(io::multivector_from_json(json::parse(R"({"p":1})")), IoError);
    REQUIRE_THROWS_AS(io::multivector_from_json(json::parse(R"({"p":-1,"q":0})")), IoError);
    REQUIRE_THROWS_AS(
        io::multivector_from_json(json::parse(R"({"p":1,"q":0,"coeffs":{"e2":1.0}})")), IoError);
    REQUIRE_THROWS_AS(
        io::multivector_from_json(json::parse(R"({"p":1,"q":0,"coeffs":{"e1":"x"}})")), IoError);
    REQUIRE_THROWS_AS(io::multivector_from_json(json::parse(R"([1,2])")), IoError);
  }
}

TEST_CASE("field json round trip", "[io]") {
  const Signature sig(0, 2);
  const Grid grid({-2.0, -1.0}, {2.0, 1.0}, {8, 4});

  SECTION("samples survive bit for bit and blades list only what is present") {
    std::mt19937 rng(11);
    SampledField f = random_hermite_gaussian(sig, grid, rng);
    const json j = io::field_to_json(f);
    REQUIRE(j["grid"]["shape"] == json::array({8, 4}));
    REQUIRE(j["data"].size() == f.node_count());
    const auto blades = io::active_blades(f);
    REQUIRE(j["blades"].size() == blades.size());
    REQUIRE(!blades.empty());

    const std::string text = io::dump_json(j);
    const SampledField back = io::field_from_json(io::parse_json_text(text, "test"));
    REQUIRE(back.signature() == sig);
    REQUIRE(back.grid() == grid);
    for (std::size_t node = 0; node < f.node_count(); ++node) {
      for (std::size_t b = 0; b < f.stride(); ++b) {
        REQUIRE(same_value(back.at(node, static_cast<blade_t>(b)),
                           f.at(node, static_cast<blade_t>(b))));
      }
    }
  }

  SECTION("zero field yields empty blade list and empty tuples") {
    SampledField zero(sig, grid);
    const json j = io::field_to_json(zero);
    REQUIRE(j["blades"].empty());
    REQUIRE(j["data"].size() == zero.node_count());
    REQUIRE(j["data"][0].empty());
    const SampledField back = io::field_from_json(j);
    REQUIRE(back.node_count() == zero.node_count());
    for (std::size_t node = 0; node < back.node_count(); ++node) {
      REQUIRE(back.node_modulus_sq(node) == 0.0);
    }
  }

  SECTION("shape and tuple mismatches are rejected") {
    json j = io::field_to_json(SampledField(sig, grid));
    j["data"].erase(0);
    REQUIRE_THROWS_AS(io::field_from_json(j), IoError);

    json k = io::field_to_json(SampledField(sig, grid));
    k["blades"].push_back("e1");  // tuples stay empty, so every node now mismatches
    REQUIRE_THROWS_AS(io::field_from_json(k), IoError);

    REQUIRE_THROWS_AS(io::field_from_json(json::parse(R"({"p":0,"q":2})")), IoError);
  }
}

TEST_CASE("spectrum json round trip", "[io]") {
  const Signature sig(0, 2);
  const Grid grid({-6.0}, {6.0}, {64});
  std::map<blade_t, ScalarExpr> comp;
  comp.emplace(0, ScalarExpr::parse("exp(-x1^2/2)"));
  const SampledField f = sample_field(comp, grid, sig);

  SECTION("blade root keeps its spelling") {
    Multivector i(sig);
    i[0b01] = 1.0;
    const Spectrum s = cft(f, validate_root(i));
    const json j = io::spectrum_to_json(s);
    REQUIRE(j["domain"] == "frequency");
    REQUIRE(j["root"] == "e1");

    const Spectrum back = io::spectrum_from_json(io::parse_json_text(io::dump_json(j), "test"));
    REQUIRE(back.root.i() == s.root.i());
    for (std::size_t node = 0; node < s.data.node_count(); ++node) {
      for (std::size_t b = 0; b < s.data.stride(); ++b) {
        REQUIRE(same_value(back.data.at(node, static_cast<blade_t>(b)),
                           s.data.at(node, static_cast<blade_t>(b))));
      }
    }
  }

  SECTION("non-blade root serializes as a multivector") {
    Multivector i(sig);
    i[0b01] = 0.6;
    i[0b10] = 0.8;
    const Spectrum s = cft(f, validate_root(i));
    const json j = io::spectrum_to_json(s);
    REQUIRE(j["root"].is_object());
    const Spectrum back = io::spectrum_from_json(j);
    REQUIRE(back.root.i() == i);
  }

  SECTION("a plain field is not a spectrum") {
    REQUIRE_THROWS_AS(io::spectrum_from_json(io::field_to_json(f)), IoError);
  }

  SECTION("roots that fail validation propagate") {
    Multivector i(sig);
    i[0b01] = 1.0;
    json j = io::spectrum_to_json(cft(f, validate_root(i)));
    j["root"] = "1";  // the scalar squares to +1
    REQUIRE_THROWS_AS(io::spectrum_from_json(j), NotARoot);
  }
}

TEST_CASE("csv export", "[io]") {
  const Signature sig(1, 1);
  const Grid grid({0.0, 0.0}, {1.0, 1.0}, {2, 2});
  SampledField f(sig, grid);
  for (std::size_t node = 0; node < f.node_count(); ++node) {
    f.at(node, 0b01) = static_cast<double>(node) + 0.5;
  }
  const std::string csv = io::field_to_csv(f);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < csv.size()) {
    const std::size_t nl = csv.find('\n', start);
    lines.push_back(csv.substr(start, nl - start));
    start = nl + 1;
  }
  REQUIRE(lines.size() == 5);
  REQUIRE(lines[0] == "x1,x2,e1");
  REQUIRE(lines[1] == "0.25,0.25,0.5");
  REQUIRE(lines[2] == "0.25,0.75,1.5");  // row-major, last axis fastest
  REQUIRE(lines[4] == "0.75,0.75,3.5");
}

TEST_CASE("report serialization", "[io]") {
  VerificationReport r;
  r.name = "parseval";
  r.lhs = 1.25;
  r.rhs = 1.25;
  r.ratio = 1.0;
  r.tolerance = 1e-6;
  r.pass = true;
  r.diagnostics["nodes"] = 512.0;
  const json j = io::report_to_json(r);
  REQUIRE(j["name"] == "parseval");
  REQUIRE(j["pass"] == true);
  REQUIRE(j["diagnostics"]["nodes"] == 512.0);

  const Signature sig(0, 1);
  std::map<blade_t, ScalarExpr> comp;
  comp.emplace(0, ScalarExpr::parse("exp(-x1^2/2)"));
  const SampledField g = sample_field(comp, Grid({-12.0}, {12.0}, {256}), sig);
  const HardyReport h =
      hardy_check(g, validate_root(Multivector::basis(sig, 0b1)), 0.5, 0.5, 1.01);
  const json hj = io::hardy_report_to_json(h);
  REQUIRE(hj["class"] == "critical");
  REQUIRE(hj["pass"] == true);
  REQUIRE(hj["p"] == 0.5);
  REQUIRE(hj["fitted_amplitude"].contains("coeffs"));
  REQUIRE(hj["residual"].get<double>() <= 1e-6);
}

TEST_CASE("text files and deterministic dumps", "[io]") {
  const auto path = temp_file("clifft_io_test.json");
  const std::string text = "{\"p\":0,\"q\":1}\n";
  io::write_text_file(path.string(), text);
  REQUIRE(io::read_text_file(path.string()) == text);
  std::filesystem::remove(path);

  REQUIRE_THROWS_AS(io::read_text_file("/nonexistent/clifft.json"), IoError);
  REQUIRE_THROWS_AS(io::parse_json_text("{oops", "test"), IoError);

  const Signature sig(2, 0);
  const Grid grid({-3.0}, {3.0}, {32});
  std::mt19937 rng(5);
  const SampledField f = random_hermite_gaussian(sig, grid, rng);
  const std::string once = io::dump_json(io::field_to_json(f));
  const std::string twice =
      io::dump_json(io::field_to_json(io::field_from_json(io::parse_json_text(once, "t"))));
  REQUIRE(once == twice);
}

TEST_CASE("svg rendering", "[io]") {
  const Signature sig(0, 1);
  const Grid grid({-4.0}, {4.0}, {64});
  std::map<blade_t, ScalarExpr> comp;
  comp.emplace(0, ScalarExpr::parse("exp(-x1^2)"));
  comp.emplace(1, ScalarExpr::parse("x1*exp(-x1^2)"));
  const SampledField f = sample_field(comp, grid, sig);

  const std::string doc = svg::plot_field(f, 0, "sample", "x1");
  REQUIRE(doc.find("<svg") != std::string::npos);
  REQUIRE(doc.find("version=\"1.1\"") != std::string::npos);
  REQUIRE(doc.find("</svg>") != std::string::npos);
  // one polyline per blade component
  std::size_t polylines = 0;
  for (std::size_t pos = 0; (pos = doc.find("<polyline", pos)) != std::string::npos; ++pos) {
    ++polylines;
  }
  REQUIRE(polylines == 2);
  REQUIRE(doc.find(">e1</text>") != std::string::npos);

  // identical input renders identical bytes
  REQUIRE(svg::plot_field(f, 0, "sample", "x1") == doc);

  // 2-D slice: axis 1 through the middle of axis 0
  const Grid g2({-2.0, -2.0}, {2.0, 2.0}, {8, 8});
  std::map<blade_t, ScalarExpr> comp2;
  comp2.emplace(0, ScalarExpr::parse("x2"));
  const SampledField f2 = sample_field(comp2, g2, Signature(2, 0));
  auto [xs, series] = svg::field_series(f2, 1);
  REQUIRE(xs.size() == 8);
  REQUIRE(series.size() == 1);
  REQUIRE(series[0].ys[0] == f2.at(4 * 8, 0));

  REQUIRE_THROWS_AS(svg::field_series(f2, 2), std::invalid_argument);
}
