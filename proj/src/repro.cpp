#include "dualitylab/repro.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "dualitylab/embedding.hpp"
#include "dualitylab/expfam.hpp"
#include "dualitylab/mellin_zeta.hpp"
#include "dualitylab/spectral.hpp"

namespace dualitylab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, args...);
    return buf;
}

struct Checker {
    bool pass = true;
    std::vector<std::string> lines;

    void require(bool ok, const std::string& line) {
        if (!ok) pass = false;
        lines.push_back(std::string(ok ? "    ok   " : "    FAIL ") + line);
    }
    void bound(const std::string& label, double measured, double limit) {
        require(measured <= limit,
                fmt("%s: measured %.3e, expected <= %.3e", label.c_str(),
                    measured, limit));
    }
    void at_least(const std::string& label, double measured, double limit) {
        require(measured >= limit,
                fmt("%s: measured %.3e, expected >= %.3e", label.c_str(),
                    measured, limit));
    }
    void near(const std::string& label, double measured, double expected,
              double tol) {
        require(std::abs(measured - expected) <= tol,
                fmt("%s: measured %.10g, expected %.10g +- %.1e", label.c_str(),
                    measured, expected, tol));
    }
};

CriterionResult criterion_1(long) {
    Checker c;
    double max_eta = 0.0, max_g = 0.0, max_mom = 0.0;
    for (double n : {1.5, 2.0, 3.0}) {
        for (double theta : {-0.5, -1.0, -2.0}) {
            const double h = 1e-5 * std::abs(theta);
            auto psi = [n](double t) { return family_point(n, t).psi; };
            const FamilyPoint p = family_point(n, theta);
            const double d1 = (psi(theta + h) - psi(theta - h)) / (2.0 * h);
            const double d2 =
                (psi(theta + h) - 2.0 * p.psi + psi(theta - h)) / (h * h);
            max_eta = std::max(max_eta, std::abs(d1 - p.eta));
            max_g = std::max(max_g, std::abs(d2 - p.g));
            max_mom = std::max(max_mom, std::abs(moment_oracle(p) - p.eta));
        }
    }
    c.bound("finite-difference psi' vs eta, max over grid", max_eta, 1e-6);
    c.bound("finite-difference psi'' vs g, max over grid", max_g, 1e-4);
    c.bound("quadrature moment vs eta, max over grid", max_mom, 1e-8);
    const FamilyPoint p = family_point(2.0, -1.0);
    c.require(p.g == 0.5 && p.eta == 0.5,
              fmt("n=2, theta=-1: g=%.17g eta=%.17g, expected exactly 0.5, 0.5",
                  p.g, p.eta));
    return {1, "closed-form geometry", c.pass, c.lines, 0.0};
}

CriterionResult criterion_2(long seed) {
    Checker c;
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::uniform_real_distribution<double> unif(-5.0, -0.2);
    for (double n : {2.0, 3.0}) {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double ta = unif(rng);
            const double tb = unif(rng);
            const FamilyPoint a = family_point(n, ta);
            const FamilyPoint b = family_point(n, tb);
            const double bregman = divergence(n, ta, tb);
            const double fenchel = a.psi + fenchel_conjugate(n, b.eta) - ta * b.eta;
            QuadConfig quad;
            quad.abs_tol = 1e-12;
            quad.rel_tol = 1e-12;
            // divergence(theta, theta_ref) is KL(p_ref || p_theta), so the
            // integral runs against the reference density b.
            const double kl =
                2.0 * integrate_halfline(
                          [&](double x) {
                              const double xn = std::pow(x, n);
                              if (!(tb * xn - b.psi > -745.0)) return 0.0;
                              return pdf(b, x) * ((tb - ta) * xn - b.psi + a.psi);
                          },
                          quad)
                          .value;
            worst = std::max({worst, std::abs(bregman - fenchel),
                              std::abs(bregman - kl), std::abs(fenchel - kl)});
        }
        c.bound(fmt("n=%g: max pairwise deviation over 20 random pairs", n),
                worst, 1e-7);
    }
    return {2, "divergence consistency", c.pass, c.lines, 0.0};
}

CriterionResult criterion_3(long) {
    Checker c;
    for (double n : {2.0, 3.0}) {
        const LatticeEmbedding emb =
            build_lattice(n, -1.0, 10, Branch::below_reference, 1e-11);
        double worst = 0.0;
        for (const auto& p : emb.points)
            worst = std::max(worst,
                             std::abs(divergence(n, p.theta, -1.0) - p.energy));
        c.bound(fmt("n=%g: max |D(theta_k||theta0) - k^n|, k=1..10", n), worst,
                1e-9);
        if (n == 2.0)
            c.near("n=2 spot value theta_1", emb.theta1, -4.50524150, 5e-8);
    }
    return {3, "embedding defining property", c.pass, c.lines, 0.0};
}

CriterionResult criterion_4(long) {
    Checker c;
    const int triples[3][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}};
    for (const auto& t : triples) {
        const ClosureReport rep = pythagoras_closure(2.0, -1.0, t[0], t[1], t[2]);
        c.require(rep.defect == 0.0 && rep.closed,
                  fmt("n=2 triple (%d,%d,%d): defect=%g closed=%d, expected 0 "
                      "and closed",
                      t[0], t[1], t[2], rep.defect, int(rep.closed)));
    }
    for (int n : {3, 4, 5}) {
        std::int64_t pw[61];
        for (int k = 0; k <= 60; ++k) {
            std::int64_t v = 1;
            for (int i = 0; i < n; ++i) v *= k;
            pw[k] = v;
        }
        long closures = 0;
        std::int64_t min_abs = -1;
        for (int A = 1; A <= 60; ++A)
            for (int B = A; B <= 60; ++B)
                for (int C = 1; C <= 60; ++C) {
                    const std::int64_t d = pw[A] + pw[B] - pw[C];
                    if (d == 0) ++closures;
                    const std::int64_t ad = d < 0 ? -d : d;
                    if (ad > 0 && (min_abs < 0 || ad < min_abs)) min_abs = ad;
                }
        c.require(closures == 0,
                  fmt("n=%d exhaustive A,B,C <= 60: %ld closures, expected 0", n,
                      closures));
        if (n == 3)
            c.require(min_abs == 1,
                      fmt("n=3 minimum nonzero |defect|: %lld, expected 1",
                          static_cast<long long>(min_abs)));
    }
    return {4, "pythagorean closure", c.pass, c.lines, 0.0};
}

CriterionResult criterion_5(long) {
    Checker c;
    for (double n : {2.0, 1.5, 3.0, 4.0}) {
        const bool analytic = (n == 2.0);
        const double tol = analytic ? 1e-10 : 1e-6;
        double worst = 0.0;
        for (double tau : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            ThetaConfig cfg{n, tau, analytic ? 1e-12 : 1e-8};
            worst = std::max(worst, poisson_residual(cfg).residual);
        }
        c.bound(fmt("n=%g (%s fhat): max residual over tau grid", n,
                    analytic ? "analytic" : "numeric"),
                worst, tol);
    }
    return {5, "poisson identity", c.pass, c.lines, 0.0};
}

CriterionResult criterion_6(long) {
    Checker c;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double tau = 0.1 * std::pow(100.0, i / 19.0);
        worst = std::max(worst, jacobi_residual(tau));
    }
    c.bound("max residual over 20-point tau grid in [0.1, 10]", worst, 1e-9);
    c.bound("residual at the fixed point tau = pi", jacobi_residual(kPi), 1e-13);
    return {6, "jacobi modularity (n=2)", c.pass, c.lines, 0.0};
}

CriterionResult criterion_7(long) {
    Checker c;
    for (double n : {2.0, 3.0, 4.0}) {
        const double target = n / (n - 1.0);
        try {
            const SpectralProfile p =
                spectral_profile(n, default_xi_max(n), 512);
            c.near(fmt("n=%g fitted q_hat", n), p.q_hat, target, 0.1);
        } catch (const InsufficientEnvelope& e) {
            c.require(false, fmt("n=%g fitted q_hat: expected %.6g +- 0.1, got "
                                 "InsufficientEnvelope (%s)",
                                 n, target, e.what()));
        }
    }
    const double s2 = gaussian_shape_residual(2.0, default_xi_max(2.0), 512);
    c.bound("n=2 gaussian-shape residual", s2, 1e-6);
    for (double n : {3.0, 4.0})
        c.at_least(fmt("n=%g gaussian-shape residual", n),
                   gaussian_shape_residual(n, default_xi_max(n), 512), 1e-2);
    return {7, "conjugate-exponent law", c.pass, c.lines, 0.0};
}

CriterionResult criterion_8(long) {
    Checker c;
    double worst_violation = -1.0;
    for (double n : {1.5, 2.0, 3.0, 4.0})
        for (double p : {1.25, 1.5, 1.75, 2.0}) {
            const HyRatio h = hy_ratio(n, p);
            worst_violation =
                std::max(worst_violation, h.ratio - h.beckner_bound);
        }
    c.bound("max (ratio - bound) over the full grid", worst_violation, 1e-4);
    for (double p : {1.25, 1.5, 1.75}) {
        const HyRatio h = hy_ratio(2.0, p);
        c.bound(fmt("n=2, p=%g equality deviation |ratio - bound|", p),
                std::abs(h.ratio - h.beckner_bound), 1e-4);
    }
    const HyRatio h = hy_ratio(3.0, 1.5);
    c.at_least("n=3, p=1.5 strict gap (bound - ratio)",
               h.beckner_bound - h.ratio, 1e-3);
    return {8, "hausdorff-young / beckner", c.pass, c.lines, 0.0};
}

CriterionResult criterion_9(long) {
    Checker c;
    double worst = 0.0;
    for (double n : {2.0, 3.0, 4.0})
        for (double s : {0.75, 1.0, 1.5, 2.0})
            worst = std::max(worst, mellin_numeric(n, s).residual);
    c.bound("max residual over (n, s) grid", worst, 1e-6);
    c.near("spot value numeric M[Theta_2 - 1](1)", mellin_numeric(2.0, 1.0).numeric,
           kPi * kPi / 3.0, 1e-6);
    return {9, "mellin-zeta identity", c.pass, c.lines, 0.0};
}

CriterionResult criterion_10(long) {
    Checker c;
    c.bound("|Gamma(1/2) - sqrt(pi)|",
            std::abs(std::exp(log_gamma(0.5)) - std::sqrt(kPi)), 1e-12);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
        const double s = 0.1 + i * (19.9 / 39.0);
        worst = std::max(worst,
                         duplication_residual(s) / std::exp(log_gamma(s)));
    }
    c.bound("max relative duplication residual, s in [0.1, 20]", worst, 1e-9);
    return {10, "special-function anchors", c.pass, c.lines, 0.0};
}

}  // namespace

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    if (suite == "metric") return {1, 2, 10};
    if (suite == "closure") return {3, 4};
    if (suite == "duality") return {5, 6, 7, 8};
    if (suite == "mellin") return {9};
    throw std::invalid_argument("unknown suite: " + suite);
}

CriterionResult run_criterion(int id, long seed) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    CriterionResult r;
    switch (id) {
        case 1: r = criterion_1(seed); break;
        case 2: r = criterion_2(seed); break;
        case 3: r = criterion_3(seed); break;
        case 4: r = criterion_4(seed); break;
        case 5: r = criterion_5(seed); break;
        case 6: r = criterion_6(seed); break;
        case 7: r = criterion_7(seed); break;
        case 8: r = criterion_8(seed); break;
        case 9: r = criterion_9(seed); break;
        case 10: r = criterion_10(seed); break;
        default: throw std::invalid_argument("unknown criterion id");
    }
    r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    return r;
}

int run_suite(const std::string& suite, long seed, std::ostream& out) {
    bool all_pass = true;
    for (int id : suite_criteria(suite)) {
        const CriterionResult r = run_criterion(id, seed);
        all_pass = all_pass && r.pass;
        out << fmt("criterion %2d  %-32s %s  (%.2f s)\n", r.id, r.name.c_str(),
                   r.pass ? "PASS" : "FAIL", r.seconds);
        for (const auto& line : r.lines) out << line << '\n';
    }
    out << (all_pass ? "ALL PASS\n" : "FAILURES PRESENT\n");
    return all_pass ? 0 : 1;
}

}  // namespace dualitylab
