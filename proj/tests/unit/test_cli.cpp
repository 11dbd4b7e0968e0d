#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nbound/config.hpp"
#include "nbound/error.hpp"
#include "nbound/format.hpp"
#include "nbound/report.hpp"

using namespace nbound;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {
constexpr double pi = std::numbers::pi;

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(NBOUND_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += ch;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// quantity -> bound column of a report CSV.
std::map<std::string, std::string> bounds_of(const std::string& csv) {
  std::map<std::string, std::string> m;
  const auto rows = parse_csv(csv);
  for (std::size_t i = 1; i < rows.size(); ++i) m[rows[i][0]] = rows[i][3];
  return m;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

long j0_zeros_below(double x) {
  long n = 0;
  double prev = 1.0;
  const int steps = static_cast<int>(1000 * x) + 100;
  for (int i = 1; i <= steps; ++i) {
    const double j = std::cyl_bessel_j(0.0, x * i / steps);
    if ((j < 0) != (prev < 0)) ++n;
    prev = j;
  }
  return n;
}
}  // namespace

TEST_CASE("config parsing") {
  SECTION("built-in with comments") {
    std::istringstream in("# a comment\nkind = stis\ng = 10   # coupling\nalpha = 1\nR = 2\n");
    const auto spec = parse_config(in);
    REQUIRE(spec.kind);
    CHECK(*spec.kind == Kind::Stis);
    CHECK(*spec.g == 10.0);
    CHECK(*spec.alpha == 1.0);
    CHECK(spec.R == 2.0);
    const auto pot = build_potential(spec);
    CHECK(pot.support_end() == 2.0);
  }
  SECTION("tabulated rows with a jump") {
    std::istringstream in("kind = tabulated\n0, -100\n1, -100\n1, 0\n");
    const auto pot = build_potential(parse_config(in));
    CHECK(pot.eval(0.5) == -100.0);
    CHECK(pot.eval(1.5) == 0.0);
  }
  SECTION("incomplete or malformed input") {
    std::istringstream no_g("kind = hulthen\n");
    CHECK_THROWS_AS(build_potential(parse_config(no_g)), InvalidInput);
    std::istringstream junk("kind = hulthen\ng = abc\n");
    CHECK_THROWS_AS(build_potential(parse_config(junk)), InvalidInput);
    std::istringstream unknown("kind = harmonic\ng = 1\n");
    CHECK_THROWS_AS(build_potential(parse_config(unknown)), InvalidInput);
  }
}

TEST_CASE("report writers") {
  const auto rep = compute_report(Potential::builtin(Kind::Hulthen, 2.5));
  std::ostringstream csv;
  write_report(csv, rep, OutputFormat::Csv);
  const auto rows = parse_csv(csv.str());
  REQUIRE(rows.size() == 16);
  CHECK(rows[0] == std::vector<std::string>{"quantity", "direction", "raw", "bound", "applicable",
                                            "note"});
  CHECK(rows[1][0] == "exact");
  CHECK(rows[1][3] == "2");

  std::ostringstream js;
  write_report(js, rep, OutputFormat::Json);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["exact"]["n"] == 2);
  CHECK(j["limits"].size() == 14);
  for (const auto& l : j["limits"]) {
    if (!l["applicable"].get<bool>()) CHECK(l["raw"].is_null());
  }

  std::ostringstream table;
  write_report(table, rep, OutputFormat::Table);
  CHECK_THAT(table.str(), ContainsSubstring("first_lower_singular"));
  CHECK(table.str().back() == '\n');
}

TEST_CASE("bounds command") {
  SECTION("hulthen") {
    const auto r = run("bounds --kind hulthen --g 2.5 --format csv");
    REQUIRE(r.status == 0);
    auto b = bounds_of(r.out);
    CHECK(b["exact"] == "2");
    CHECK(b["CC"] == "5");
    CHECK(b["BS"] == "10");
    CHECK(b["first_upper"] == "3");
    CHECK(b["first_lower_singular"] == "1");
  }
  SECTION("truncated inverse square") {
    const auto r = run("bounds --kind stis --g 10 --alpha 1 --format csv");
    REQUIRE(r.status == 0);
    auto b = bounds_of(r.out);
    CHECK(b["exact"] == "2");
    CHECK(b["BS"] == "19");
    CHECK(b["CC"] == "4");
    CHECK(b["M"] == "4");
    CHECK(b["C"] == "2");
    CHECK(b["C0"] == "2");
    CHECK(b["first_lower_regular_q"] == "2");
    CHECK(b["first_upper_regular"] == "2");
  }
  SECTION("weak square well") {
    const auto r = run("bounds --kind squarewell --g 0.5 --format json");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["exact"]["n"] == 0);
    for (const auto& l : j["limits"]) {
      if (l["name"] == "first_upper") CHECK(l["bound"] == 0);
    }
  }
  SECTION("config file and output file") {
    const auto cfg = temp_file("nbound_cli_pt.cfg", "kind = poschlteller\ng = 10\n");
    const auto out = (std::filesystem::temp_directory_path() / "nbound_cli_pt.csv").string();
    REQUIRE(run("bounds --config " + cfg + " --format csv -o " + out).status == 0);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(bounds_of(ss.str())["exact"] == "5");
  }
  SECTION("deterministic output") {
    const std::string args = "bounds --kind yukawa --g 7 --format json";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("invalid input exits with status 2") {
  CHECK(run("bounds --kind squarewell --g -1").status == 2);
  CHECK(run("bounds --kind harmonic --g 1").status == 2);
  CHECK(run("bounds --kind hulthen").status == 2);
  CHECK(run("bounds --kind stis --g 3").status == 2);
  CHECK(run("bounds --config /nonexistent/file.cfg").status == 2);
  CHECK(run("bounds --kind hulthen --g 1 --format xml").status == 2);
  CHECK(run("frobnicate").status == 2);
  const auto bad = temp_file("nbound_cli_bad.cfg", "kind = tabulated\n0, -1\n1, -2\n2, 0\n");
  CHECK(run("validate --config " + bad).status == 2);
  CHECK(run("validate --kind hulthen --g 2").status == 0);
}

TEST_CASE("sweep command") {
  SECTION("Poschl-Teller counts step at the closed-form crossings") {
    const auto r = run("sweep --kind poschlteller --g-min 0.5 --g-max 20 --steps 40 --format csv");
    REQUIRE(r.status == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 42);
    CHECK(rows[0][0] == "g");
    CHECK(rows[0][1] == "n");
    CHECK(rows[0].size() == 3 + 2 * 14);
    long prev = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double g = std::stod(rows[i][0]);
      const long n = std::stol(rows[i][1]);
      CHECK(n >= prev);
      prev = n;
      CHECK(n == static_cast<long>(std::floor((std::sqrt(1 + 4 * g * g) + 1) / 4)));
    }
  }
  SECTION("exponential counts follow the J0 zeros") {
    const auto r = run("sweep --kind exponential --g-min 1 --g-max 15 --steps 56 --format csv");
    REQUIRE(r.status == 0);
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double g = std::stod(rows[i][0]);
      CHECK(std::stol(rows[i][1]) == j0_zeros_below(2 * g));
    }
  }
  SECTION("below the necessary condition every count is zero") {
    const auto r = run("sweep --kind squarewell --g-min 0.1 --g-max 1.5 --steps 10 --format csv");
    REQUIRE(r.status == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 12);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][1] == "0");
  }
  SECTION("serial and parallel sweeps are identical") {
    const std::string args = "sweep --kind stis --alpha 10 --g-min 1 --g-max 60 --steps 24 --log --format csv";
    const auto par = run(args);
    const auto ser = run(args + " --serial");
    REQUIRE(par.status == 0);
    CHECK(par.out == ser.out);
  }
}

TEST_CASE("table1 command") {
  const auto r = run("table1");
  CHECK(r.status == 0);
  CHECK_THAT(r.out, ContainsSubstring("221"));
  const auto csv = run("table1 --format csv");
  REQUIRE(csv.status == 0);
  const auto rows = parse_csv(csv.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0][2] == "N");
  CHECK(rows[1][2] == "2");
}

TEST_CASE("kg command") {
  SECTION("vanishing W") {
    const auto cfg = temp_file("nbound_cli_w0.cfg", "kind = tabulated\nmass = 1\n0, 0\n1, 0\n");
    const auto r = run("kg --config " + cfg + " --format csv");
    REQUIRE(r.status == 0);
    CHECK(bounds_of(r.out)["exact"] == "0");
  }
  SECTION("constant W equals a square well") {
    const double c = 3.0;
    const auto cfg =
        temp_file("nbound_cli_wc.cfg", "kind = tabulated\nmass = 1\n0, -3\n1, -3\n1, 0\n");
    const auto kg = run("kg --config " + cfg + " --format json");
    REQUIRE(kg.status == 0);
    const double g = std::sqrt(2 * c + c * c);
    std::ostringstream gs;
    gs.precision(17);
    gs << g;
    const auto sw = run("bounds --kind squarewell --g " + gs.str() + " --format json");
    REQUIRE(sw.status == 0);
    const auto a = nlohmann::json::parse(kg.out);
    const auto b = nlohmann::json::parse(sw.out);
    CHECK(a["exact"]["n"] == b["exact"]["n"]);
    CHECK(a["exact"]["n"] == static_cast<long>(std::floor(g / pi + 0.5)));
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK_THAT(a["limits"][i]["raw"].get<double>(),
                 WithinRel(b["limits"][i]["raw"].get<double>(), 1e-6));
    }
  }
  SECTION("built-in shape as W") {
    const auto r = run("kg --kind exponential --g 8 --mass 1 --format json");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["exact"]["n"].get<long>() > 20);
    CHECK(j["violations"].empty());
  }
}
