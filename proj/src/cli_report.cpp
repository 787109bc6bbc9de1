#include "dualitylab/cli_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dualitylab/embedding.hpp"
#include "dualitylab/expfam.hpp"
#include "dualitylab/mellin_zeta.hpp"
#include "dualitylab/report.hpp"
#include "dualitylab/repro.hpp"
#include "dualitylab/spectral.hpp"

namespace dualitylab {

namespace {

std::string default_out_dir() {
    const char* e = std::getenv("DUALITYLAB_OUT");
    return (e && *e) ? e : ".";
}

struct Args {
    double n = 2.0;
    double theta0 = -1.0;
    double tau = 1.0;
    double s = 1.0;
    double xi_max = std::nan("");  // resolved per n when unset
    double p = 1.5;
    double tol = std::nan("");  // resolved per command when unset
    int a = 3, b = 4, c = 5;
    int k = 10;
    int samples = 512;
    long seed = 12345;
    std::string branch = "below";
    std::string out = default_out_dir();
    std::vector<std::string> formats = {"json"};
    std::string suite = "all";
};

// Emits the envelope and side payloads for one run.
struct Emitter {
    ReportEnvelope env;
    std::string dir;
    std::vector<std::string> formats;
    std::vector<std::string> written;

    bool want(const std::string& f) const {
        return std::find(formats.begin(), formats.end(), f) != formats.end();
    }
    void json_file(const std::string& base) {
        if (want("json"))
            written.push_back(
                write_artifact(dir, base + ".json", to_json(env).dump(2) + "\n"));
    }
    void file(const std::string& name, const std::string& content) {
        written.push_back(write_artifact(dir, name, content));
    }
    void finish(const std::string& summary) const {
        std::cout << summary;
        for (const auto& p : written) std::cout << ' ' << p;
        std::cout << '\n';
    }
};

Branch parse_branch(const std::string& b) {
    if (b == "below") return Branch::below_reference;
    if (b == "above") return Branch::above_reference;
    throw std::domain_error("--branch must be 'below' or 'above'");
}

double resolve(double value, double fallback) {
    return std::isnan(value) ? fallback : value;
}

void check_formats(const std::vector<std::string>& formats) {
    for (const auto& f : formats)
        if (f != "json" && f != "csv" && f != "svg")
            throw std::domain_error("--format entries must be from json,csv,svg");
}

const std::vector<double> kTauSweep = {0.25, 0.5, 1.0, 2.0, 4.0};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// key=value lines; blank lines, comments, and section headers are ignored.
std::vector<std::pair<std::string, std::string>> read_config(
    const std::string& path) {
    std::ifstream in(path);
    if (!in.good())
        throw std::invalid_argument("--config: cannot read " + path);
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--config: malformed line: " + line);
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return entries;
}

// Config sits between defaults and explicit flags: a key only lands on an
// option the command line left untouched.
void apply_config(CLI::App* sub, const std::string& path) {
    for (const auto& [key, value] : read_config(path)) {
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw std::invalid_argument("--config: unknown key: " + key);
        if (opt->count() > 0) continue;
        opt->add_result(value);
        opt->run_callback();
    }
}

int dispatch(const std::string& cmd, const Args& a) {
    check_formats(a.formats);
    Emitter em;
    em.dir = a.out;
    em.formats = a.formats;
    em.env.timestamp = iso_timestamp_utc();
    em.env.config_echo.command = cmd;
    em.env.config_echo.output_dir = a.out;
    em.env.config_echo.formats = a.formats;
    em.env.config_echo.seed = a.seed;
    ordered_json& params = em.env.config_echo.params;

    if (cmd == "metric") {
        params = {{"n", a.n}, {"theta0", a.theta0}};
        const FamilyPoint p = family_point(a.n, a.theta0);
        ordered_json r = to_json(p);
        r["cubic_form"] = cubic_form(a.n, a.theta0);
        r["fenchel_at_eta"] = fenchel_conjugate(a.n, p.eta);
        r["legendre_roundtrip"] = legendre_inverse(a.n, p.eta);
        r["moment_quadrature"] = moment_oracle(p);
        em.env.results = r;
        em.json_file("metric_n" + format_g(a.n) + "_theta" + format_g(a.theta0));
        em.finish("metric: eta=" + format_g(p.eta) + " g=" + format_g(p.g) +
                  " psi=" + format_g(p.psi));
        return 0;
    }

    if (cmd == "embed") {
        const double tol = resolve(a.tol, 1e-10);
        params = {{"n", a.n}, {"theta0", a.theta0}, {"a", a.a},
                  {"branch", a.branch}, {"tol", tol}};
        const double theta = embed_integer(a.n, a.theta0, a.a,
                                           parse_branch(a.branch), tol);
        em.env.results = {{"theta_a", theta},
                          {"energy", std::pow(double(a.a), a.n)},
                          {"divergence", divergence(a.n, theta, a.theta0)}};
        em.json_file("embed_n" + format_g(a.n) + "_a" + std::to_string(a.a));
        em.finish("embed: theta_A=" + format_g(theta));
        return 0;
    }

    if (cmd == "lattice") {
        const double tol = resolve(a.tol, 1e-10);
        params = {{"n", a.n}, {"theta0", a.theta0}, {"k", a.k},
                  {"branch", a.branch}, {"tol", tol}};
        const LatticeEmbedding emb =
            build_lattice(a.n, a.theta0, a.k, parse_branch(a.branch), tol);
        ordered_json r = {{"embedding", to_json(emb)}};
        GapTable table{a.n, a.theta0, {}};
        if (a.k >= 2) {
            table = gap_table(emb);
            r["gap_table"] = to_json(table);
        } else {
            em.env.diagnostics.push_back("k < 2: gap table omitted");
        }
        em.env.results = r;
        em.json_file("lattice_n" + format_g(a.n) + "_k" + std::to_string(a.k));
        if (em.want("csv")) em.file("gaps.csv", csv_gaps(emb, table));
        if (em.want("svg")) em.file("gaps.svg", svg_lattice(emb, table));
        em.finish("lattice: K=" + std::to_string(a.k) +
                  " theta1=" + format_g(emb.theta1));
        return 0;
    }

    if (cmd == "closure") {
        const double tol = resolve(a.tol, 1e-6);
        params = {{"n", a.n}, {"theta0", a.theta0}, {"a", a.a}, {"b", a.b},
                  {"c", a.c}, {"tol", tol}};
        const ClosureReport rep =
            pythagoras_closure(a.n, a.theta0, a.a, a.b, a.c, tol);
        em.env.results = to_json(rep);
        em.json_file("closure_n" + format_g(a.n) + "_" + std::to_string(a.a) +
                     "_" + std::to_string(a.b) + "_" + std::to_string(a.c));
        em.finish(std::string("closure: defect=") + format_g(rep.defect) +
                  " closed=" + (rep.closed ? "true" : "false"));
        return 0;
    }

    if (cmd == "theta") {
        const double tail_tol = resolve(a.tol, 1e-12);
        params = {{"n", a.n}, {"tau", a.tau}, {"tail_tol", tail_tol}};
        const ThetaSum sum = theta_series(ThetaConfig{a.n, a.tau, tail_tol});
        em.env.results = to_json(sum);
        em.json_file("theta_n" + format_g(a.n) + "_tau" + format_g(a.tau));
        em.finish("theta: value=" + format_g(sum.value) +
                  " terms=" + std::to_string(sum.terms_used));
        return 0;
    }

    if (cmd == "poisson") {
        const double tail_tol = resolve(a.tol, a.n == 2.0 ? 1e-12 : 1e-8);
        params = {{"n", a.n}, {"tau", a.tau}, {"tail_tol", tail_tol}};
        const PoissonReport rep =
            poisson_residual(ThetaConfig{a.n, a.tau, tail_tol});
        em.env.results = to_json(rep);
        em.json_file("poisson_n" + format_g(a.n) + "_tau" + format_g(a.tau));
        if (em.want("csv") || em.want("svg")) {
            std::vector<std::pair<double, double>> sweep;
            for (double tau : kTauSweep)
                sweep.emplace_back(
                    tau, poisson_residual(ThetaConfig{a.n, tau, tail_tol}).residual);
            if (em.want("csv"))
                em.file("poisson_sweep_n" + format_g(a.n) + ".csv",
                        csv_sweep("tau", sweep));
            if (em.want("svg"))
                em.file("poisson_sweep_n" + format_g(a.n) + ".svg",
                        svg_sweep("poisson residual, n = " + format_g(a.n),
                                  "tau", sweep));
        }
        em.finish("poisson: residual=" + format_g(rep.residual));
        return 0;
    }

    if (cmd == "jacobi") {
        const double tail_tol = resolve(a.tol, 1e-12);
        params = {{"tau", a.tau}, {"tail_tol", tail_tol}};
        const double resid = jacobi_residual(a.tau, tail_tol);
        em.env.results = {{"tau", a.tau}, {"residual", resid}};
        em.json_file("jacobi_tau" + format_g(a.tau));
        if (em.want("csv") || em.want("svg")) {
            std::vector<std::pair<double, double>> sweep;
            for (int i = 0; i < 20; ++i) {
                const double tau = 0.1 * std::pow(100.0, i / 19.0);
                sweep.emplace_back(tau, jacobi_residual(tau, tail_tol));
            }
            if (em.want("csv")) em.file("jacobi_sweep.csv", csv_sweep("tau", sweep));
            if (em.want("svg"))
                em.file("jacobi_sweep.svg",
                        svg_sweep("jacobi residual", "tau", sweep));
        }
        em.finish("jacobi: residual=" + format_g(resid));
        return 0;
    }

    if (cmd == "profile") {
        const double xi_max = resolve(a.xi_max, default_xi_max(a.n));
        params = {{"n", a.n}, {"xi_max", xi_max}, {"samples", a.samples}};
        const SpectralProfile prof = spectral_profile(a.n, xi_max, a.samples);
        em.env.results = to_json(prof);
        const std::string base = "profile_n" + format_g(a.n);
        em.json_file(base);
        if (em.want("csv")) {
            em.file(base + "_samples.csv", csv_profile_samples(prof));
            em.file(base + "_envelope.csv", csv_profile_envelope(prof));
        }
        if (em.want("svg")) em.file(base + ".svg", svg_profile(prof));
        em.finish("profile: q_hat=" + format_g(prof.q_hat) +
                  " gamma_hat=" + format_g(prof.gamma_hat));
        return 0;
    }

    if (cmd == "hy") {
        params = {{"n", a.n}, {"p", a.p}};
        const HyRatio h = hy_ratio(a.n, a.p);
        em.env.results = to_json(h);
        em.json_file("hy_n" + format_g(a.n) + "_p" + format_g(a.p));
        em.finish("hy: ratio=" + format_g(h.ratio) +
                  " bound=" + format_g(h.beckner_bound));
        return 0;
    }

    if (cmd == "mellin") {
        params = {{"n", a.n}, {"s", a.s}};
        const MellinReport rep = mellin_numeric(a.n, a.s);
        const std::vector<double> s_grid = {0.5, 1.0, 2.0, 4.0};
        const auto scan = gamma_factor_scan(a.n, s_grid);
        ordered_json scan_json = ordered_json::array();
        for (const auto& row : scan) scan_json.push_back(to_json(row));
        em.env.results = {{"mellin", to_json(rep)}, {"gamma_scan", scan_json}};
        const std::string base =
            "mellin_n" + format_g(a.n) + "_s" + format_g(a.s);
        em.json_file(base);
        if (em.want("csv")) {
            em.file(base + ".csv", csv_mellin({rep}));
            em.file("gamma_scan_n" + format_g(a.n) + ".csv",
                    csv_gamma_scan(scan));
        }
        em.finish("mellin: numeric=" + format_g(rep.numeric) +
                  " residual=" + format_g(rep.residual));
        return 0;
    }

    if (cmd == "repro") {
        return run_suite(a.suite, a.seed, std::cout);
    }

    throw std::domain_error("unknown command: " + cmd);
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"dualitylab: exponential-family geometry, lattice embeddings, "
                 "theta duality, and Mellin-zeta checks"};
    app.require_subcommand(1);

    Args a;
    std::string config_path;
    const char* cmds[] = {"metric", "embed",   "lattice", "closure",
                          "theta",  "poisson", "jacobi",  "profile",
                          "hy",     "mellin",  "repro"};
    for (const char* name : cmds) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--n", a.n, "family exponent n >= 1");
        sub->add_option("--theta0", a.theta0, "reference natural parameter (< 0)");
        sub->add_option("--tau", a.tau, "theta-series argument (> 0)");
        sub->add_option("--s", a.s, "Mellin argument (> 1/n)");
        sub->add_option("--a", a.a, "integer A");
        sub->add_option("--b", a.b, "integer B");
        sub->add_option("--c", a.c, "integer C");
        sub->add_option("--k", a.k, "lattice size K");
        sub->add_option("--xi-max", a.xi_max, "profile window upper edge");
        sub->add_option("--samples", a.samples, "profile sample count (>= 16)");
        sub->add_option("--p", a.p, "Hausdorff-Young exponent in (1, 2]");
        sub->add_option("--branch", a.branch, "embedding branch: below|above");
        sub->add_option("--tol", a.tol, "command-specific tolerance");
        sub->add_option("--out", a.out, "output directory")
            ->envname("DUALITYLAB_OUT");
        sub->add_option("--format", a.formats, "subset of json,csv,svg")
            ->delimiter(',');
        sub->add_option("--seed", a.seed, "seed for randomized sweeps");
        sub->add_option("--suite", a.suite,
                        "repro suite: all|metric|duality|closure|mellin");
        sub->add_option("--config", config_path, "key=value file applied below flags");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // CLI11 reserves 0 for help; anything else is a usage error.
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) {
        try {
            apply_config(sub, config_path);
        } catch (const std::invalid_argument& e) {
            std::cerr << "dualitylab: " << e.what() << '\n';
            return 2;
        }
    }

    const std::string cmd = sub->get_name();
    // Exit 3 still leaves a diagnostics artifact behind; a run may never
    // fail silently after validation has passed.
    auto fail3 = [&](const std::string& what) {
        std::cerr << "dualitylab: non-convergence: " << what << '\n';
        try {
            ReportEnvelope env;
            env.timestamp = iso_timestamp_utc();
            env.config_echo.command = cmd;
            env.config_echo.output_dir = a.out;
            env.config_echo.formats = a.formats;
            env.config_echo.seed = a.seed;
            env.diagnostics.push_back(what);
            write_artifact(a.out, cmd + "_diagnostics.json",
                           to_json(env).dump(2) + "\n");
        } catch (const IoError&) {
        }
        return 3;
    };
    try {
        return dispatch(cmd, a);
    } catch (const IoError& e) {
        std::cerr << "dualitylab: io error: " << e.what() << '\n';
        return 4;
    } catch (const NonConvergence& e) {
        return fail3(e.what());
    } catch (const EvaluationError& e) {
        return fail3(e.what());
    } catch (const TruncationCapExceeded& e) {
        return fail3(e.what());
    } catch (const InsufficientEnvelope& e) {
        return fail3(e.what());
    } catch (const std::invalid_argument& e) {
        std::cerr << "dualitylab: invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "dualitylab: domain error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace dualitylab
