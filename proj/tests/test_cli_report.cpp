#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dualitylab/cli_report.hpp"
#include "dualitylab/report.hpp"

using namespace dualitylab;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "dualitylab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return run_cli(int(argv.size()), argv.data());
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("dualitylab_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

ordered_json load_json(const fs::path& p) {
    return ordered_json::parse(slurp(p));
}

}  // namespace

TEST_CASE("closure command writes a correct report") {
    const fs::path dir = fresh_dir("closure");
    CHECK(run({"closure", "--n", "2", "--a", "3", "--b", "4", "--c", "5",
               "--out", dir.string()}) == 0);
    const ordered_json j = load_json(dir / "closure_n2_3_4_5.json");
    CHECK(j["results"]["defect"] == 0.0);
    CHECK(j["results"]["closed"] == true);
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(j["config_echo"]["command"] == "closure");
}

TEST_CASE("poisson command follows the naming contract") {
    const fs::path dir = fresh_dir("poisson");
    CHECK(run({"poisson", "--n", "3", "--tau", "1.0", "--out", dir.string()}) ==
          0);
    const ordered_json j = load_json(dir / "poisson_n3_tau1.json");
    CHECK(j["results"]["residual"].get<double>() <= 1e-6);
    CHECK(j["config_echo"]["params"]["tail_tol"] == 1e-8);
}

TEST_CASE("identical configs produce byte-identical payloads") {
    const fs::path d1 = fresh_dir("det1");
    const fs::path d2 = fresh_dir("det2");
    for (const auto& d : {d1, d2})
        CHECK(run({"metric", "--n", "3", "--theta0", "-2", "--seed", "99",
                   "--out", d.string()}) == 0);
    ordered_json a = load_json(d1 / "metric_n3_theta-2.json");
    ordered_json b = load_json(d2 / "metric_n3_theta-2.json");
    a.erase("timestamp");
    b.erase("timestamp");
    a["config_echo"].erase("output_dir");
    b["config_echo"].erase("output_dir");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("json reports round-trip through the envelope parser") {
    const fs::path dir = fresh_dir("roundtrip");
    CHECK(run({"hy", "--n", "2", "--p", "1.5", "--out", dir.string()}) == 0);
    const ordered_json j = load_json(dir / "hy_n2_p1.5.json");
    const ReportEnvelope env = envelope_from_json(j);
    CHECK(to_json(env).dump() == j.dump());
}

TEST_CASE("lattice emits gaps.csv and gaps.svg per the schema") {
    const fs::path dir = fresh_dir("lattice");
    CHECK(run({"lattice", "--n", "2", "--k", "4", "--format", "json,csv,svg",
               "--out", dir.string()}) == 0);
    const std::string csv = slurp(dir / "gaps.csv");
    CHECK(csv.rfind("k,theta_k,gap\n", 0) == 0);
    int rows = -1;  // don't count the header
    for (char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == 4);
    const std::string svg = slurp(dir / "gaps.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("profile svg carries the fitted slope from the json") {
    const fs::path dir = fresh_dir("profile");
    CHECK(run({"profile", "--n", "2", "--format", "json,svg", "--out",
               dir.string()}) == 0);
    const ordered_json j = load_json(dir / "profile_n2.json");
    const std::string svg = slurp(dir / "profile_n2.svg");
    CHECK(svg.find("q_hat = " + format_g(j["results"]["q_hat"].get<double>())) !=
          std::string::npos);
}

TEST_CASE("validation failures exit 2 before any computation") {
    const fs::path dir = fresh_dir("validation");
    CHECK(run({"poisson", "--tau", "-1", "--out", dir.string()}) == 2);
    CHECK(run({"mellin", "--n", "2", "--s", "0.25", "--out", dir.string()}) == 2);
    CHECK(run({"metric", "--theta0", "1.0", "--out", dir.string()}) == 2);
    CHECK(run({"hy", "--p", "3.0", "--out", dir.string()}) == 2);
    CHECK(run({"embed", "--branch", "sideways", "--out", dir.string()}) == 2);
    CHECK(run({"theta", "--format", "json,pdf", "--out", dir.string()}) == 2);
    CHECK(run({"theta", "--no-such-flag", "1"}) == 2);
    CHECK(run({"frobnicate"}) == 2);
    CHECK(run({}) == 2);
}

TEST_CASE("non-convergence exits 3 and still writes diagnostics") {
    const fs::path dir = fresh_dir("nonconv");
    CHECK(run({"profile", "--n", "3", "--out", dir.string()}) == 3);
    const ordered_json j = load_json(dir / "profile_diagnostics.json");
    CHECK(j["diagnostics"].size() == 1);
}

TEST_CASE("unwritable output directory exits 4") {
    CHECK(run({"theta", "--n", "2", "--tau", "1",
               "--out", "/proc/dualitylab_cannot_write"}) == 4);
}

TEST_CASE("DUALITYLAB_OUT sets the default output directory") {
    const fs::path dir = fresh_dir("envvar");
    setenv("DUALITYLAB_OUT", dir.c_str(), 1);
    CHECK(run({"theta", "--n", "2", "--tau", "2"}) == 0);
    unsetenv("DUALITYLAB_OUT");
    CHECK(fs::exists(dir / "theta_n2_tau2.json"));
}

TEST_CASE("config file values apply below CLI flags") {
    const fs::path dir = fresh_dir("config");
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "n=3\ntau=2\n";
    }
    CHECK(run({"theta", "--config", (dir / "run.cfg").string(), "--out",
               dir.string()}) == 0);
    const ordered_json a = load_json(dir / "theta_n3_tau2.json");
    CHECK(a["config_echo"]["params"]["n"] == 3.0);
    CHECK(a["config_echo"]["params"]["tau"] == 2.0);
    // A CLI flag overrides the same key from the file.
    CHECK(run({"theta", "--config", (dir / "run.cfg").string(), "--n", "4",
               "--out", dir.string()}) == 0);
    const ordered_json b = load_json(dir / "theta_n4_tau2.json");
    CHECK(b["config_echo"]["params"]["n"] == 4.0);
}

TEST_CASE("repro subcommand runs the named suites") {
    CHECK(run({"repro", "--suite", "mellin"}) == 0);
    CHECK(run({"repro", "--suite", "nonsense"}) == 2);
}
