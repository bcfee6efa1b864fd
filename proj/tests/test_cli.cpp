#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end runs of the installed binary: exit-code contract, file output,
// and determinism.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "clifft_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(CLIFFT_CLI_PATH) + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

fs::path out_path(const char* name) { return work_dir() / name; }

}  // namespace

TEST_CASE("transform writes a spectrum with the expected peak", "[cli]") {
  const fs::path g = out_path("g.json");
  const auto r = run_cli("transform --signature 0,1 --root e1 --expr \"1=exp(-0.5*x1^2)\" "
                         "--grid -10:10:512 --method fast --out " +
                         g.string());
  INFO(r.err);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.empty());  // silent when --out is given

  const json spec = json::parse(slurp(g));
  REQUIRE(spec["domain"] == "frequency");
  REQUIRE(spec["root"] == "e1");
  double peak = 0.0;
  std::size_t peak_node = 0;
  for (std::size_t node = 0; node < spec["data"].size(); ++node) {
    const auto& tuple = spec["data"][node];
    if (!tuple.empty() && std::abs(tuple[0].get<double>()) > peak) {
      peak = std::abs(tuple[0].get<double>());
      peak_node = node;
    }
  }
  REQUIRE(peak == Catch::Approx(2.5066282746).epsilon(1e-6));
  REQUIRE(peak_node == 256);  // w = 0 sits at index N/2 on the frequency grid
}

TEST_CASE("direct and fast methods agree through the file format", "[cli]") {
  const fs::path a = out_path("ma.json");
  const fs::path b = out_path("mb.json");
  const std::string base = "transform --signature 0,1 --root e1 --expr \"1=exp(-0.5*x1^2)\" "
                           "--grid -10:10:64 ";
  REQUIRE(run_cli(base + "--method fast --out " + a.string()).exit_code == 0);
  REQUIRE(run_cli(base + "--method direct --out " + b.string()).exit_code == 0);

  const json ja = json::parse(slurp(a));
  const json jb = json::parse(slurp(b));
  REQUIRE(ja["blades"] == jb["blades"]);
  double sup = 0.0, scale = 0.0;
  for (std::size_t node = 0; node < ja["data"].size(); ++node) {
    for (std::size_t k = 0; k < ja["data"][node].size(); ++k) {
      const double x = ja["data"][node][k].get<double>();
      const double y = jb["data"][node][k].get<double>();
      sup = std::max(sup, std::abs(x - y));
      scale = std::max(scale, std::abs(y));
    }
  }
  REQUIRE(sup <= 1e-9 * scale);
}

TEST_CASE("same flags produce byte-identical files", "[cli]") {
  const fs::path a = out_path("da.json");
  const fs::path b = out_path("db.json");
  const std::string base = "transform --signature 0,2 --root e1e2 "
                           "--expr \"1=exp(-x1^2-x2^2),e2=x1*exp(-x1^2-x2^2)\" "
                           "--grid -6:6:16,-6:6:16 --method fast --out ";
  REQUIRE(run_cli(base + a.string()).exit_code == 0);
  REQUIRE(run_cli(base + b.string()).exit_code == 0);
  REQUIRE(slurp(a) == slurp(b));

  const fs::path c1 = out_path("bench1.csv");
  const fs::path c2 = out_path("bench2.csv");
  // timings differ run to run; the benchmarked inputs do not, so only the
  // layout is compared
  REQUIRE(run_cli("bench --op product --sizes 16 --seed 5 --out " + c1.string()).exit_code == 0);
  REQUIRE(run_cli("bench --op product --sizes 16 --seed 5 --out " + c2.string()).exit_code == 0);
  const std::string csv = slurp(c1);
  REQUIRE(csv.rfind("op,size,median_seconds,throughput\n", 0) == 0);
  REQUIRE(csv.find("product,16,") != std::string::npos);
  REQUIRE(slurp(c2).find("product,16,") != std::string::npos);
}

TEST_CASE("exit codes follow the contract", "[cli]") {
  SECTION("flag and parse errors exit 2") {
    REQUIRE(run_cli("transform --signature 0,1 --root e2 --expr \"1=x1\" "
                    "--grid -1:1:8 --out /dev/null")
                .exit_code == 2);
    const auto bad_expr = run_cli("transform --signature 0,1 --root e1 --expr \"1=exp(\" "
                                  "--grid -1:1:8 --out /dev/null");
    REQUIRE(bad_expr.exit_code == 2);
    REQUIRE(bad_expr.err.find("offset") != std::string::npos);
    REQUIRE(run_cli("transform --signature 0,1 --root e1 --expr \"1=x1\" "
                    "--grid -1:1:zz --out /dev/null")
                .exit_code == 2);
    REQUIRE(run_cli("nonsense").exit_code == 2);
    REQUIRE(run_cli("verify --suite unknown").exit_code == 2);
    REQUIRE(run_cli("verify --check unknown").exit_code == 2);
  }

  SECTION("numeric preconditions exit 3") {
    // structurally valid grid flag, invalid extents
    REQUIRE(run_cli("transform --signature 0,1 --root e1 --expr \"1=x1\" "
                    "--grid 1:-1:8 --out /dev/null")
                .exit_code == 3);
    // scalar squares to +1, fails validation
    REQUIRE(run_cli("transform --signature 0,1 --root 1 --expr \"1=x1\" "
                    "--grid -1:1:8 --out /dev/null")
                .exit_code == 3);
    // fast method needs power-of-two extents
    REQUIRE(run_cli("transform --signature 0,1 --root e1 --expr \"1=x1\" "
                    "--grid -1:1:48 --method fast --out /dev/null")
                .exit_code == 3);
  }

  SECTION("verification results map pass to 0 and fail to 1") {
    const std::string gauss = "--signature 0,1 --root e1 --expr \"1=exp(-0.5*x1^2)\" "
                              "--grid -12:12:256 ";
    REQUIRE(run_cli("verify --check hardy " + gauss + "--p 0.5 --q 0.5 --C 1.01 --out /dev/null")
                .exit_code == 0);
    REQUIRE(run_cli("verify --check hardy " + gauss + "--p 0.7 --q 0.7 --C 1.0 --out /dev/null")
                .exit_code == 1);
  }
}

TEST_CASE("verify emits report files", "[cli]") {
  const fs::path rep = out_path("rep.json");
  const auto r = run_cli("verify --check heisenberg --signature 0,1 --root e1 "
                         "--expr \"1=exp(-0.5*x1^2)\" --grid -10:10:512 --a 1 --b 1 --out " +
                         rep.string());
  INFO(r.err);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.empty());
  const json j = json::parse(slurp(rep));
  REQUIRE(j["name"] == "heisenberg-directional");
  REQUIRE(j["pass"] == true);
  REQUIRE(std::abs(j["ratio"].get<double>() - 1.0) <= 1e-4);
}

TEST_CASE("plot and csv sidecar outputs", "[cli]") {
  const fs::path spec = out_path("ps.json");
  const fs::path svg = out_path("ps.svg");
  const fs::path csv = out_path("ps.csv");
  const auto r = run_cli("transform --signature 0,1 --root e1 --expr \"1=exp(-x1^2)\" "
                         "--grid -6:6:64 --out " +
                         spec.string() + " --plot " + svg.string() + " --csv " + csv.string());
  REQUIRE(r.exit_code == 0);
  const std::string doc = slurp(svg);
  REQUIRE(doc.find("<svg") != std::string::npos);
  REQUIRE(doc.find("version=\"1.1\"") != std::string::npos);
  REQUIRE(doc.find("polyline") != std::string::npos);
  const std::string table = slurp(csv);
  REQUIRE(table.rfind("x1,", 0) == 0);
  REQUIRE(std::count(table.begin(), table.end(), '\n') == 65);  // header + 64 nodes
}

TEST_CASE("algebra and roots subcommands", "[cli]") {
  const auto prod = run_cli("algebra --signature 3,0 --product e1e2 e1");
  REQUIRE(prod.exit_code == 0);
  const json j = json::parse(prod.out);
  REQUIRE(j["coeffs"] == json::parse(R"({"e2": -1.0})"));

  const auto dot = run_cli("algebra --signature 2,0 "
                           R"(--dot '{"p":2,"q":0,"coeffs":{"1":3.0,"e1":4.0}}' e1)");
  REQUIRE(dot.exit_code == 0);
  REQUIRE(dot.out == "4\n");

  const auto both = run_cli("algebra --signature 2,0 --product e1 e2 --reverse e1");
  REQUIRE(both.exit_code == 2);

  const auto roots = run_cli("roots --signature 2,0");
  REQUIRE(roots.exit_code == 0);
  REQUIRE(roots.out == "e1e2\n");

  REQUIRE(run_cli("roots --signature 0,1 --validate e1").exit_code == 0);
  const auto invalid = run_cli("roots --signature 1,0 --validate e1");
  REQUIRE(invalid.exit_code == 1);
  REQUIRE(invalid.err.find("square differs") != std::string::npos);
}
