#include "dualitylab/embedding.hpp"

#include <cmath>
#include <stdexcept>

namespace dualitylab {

namespace {

// Exact integer power for integral n keeps closure defects exact in double.
double energy_pow(int base, double n) {
    if (n == std::round(n) && n <= 60.0) {
        double acc = 1.0;
        for (int i = 0; i < static_cast<int>(n); ++i) acc *= base;
        return acc;
    }
    return std::pow(double(base), n);
}

// Solve r - ln r - 1 = n * target for the ratio r = theta / theta0 on the
// requested side of r = 1, then return theta = r * theta0.
double solve_ratio(double n, double theta0, double target, Branch branch,
                   double tol) {
    const double rhs = n * target;
    auto h = [rhs](double r) { return r - std::log(r) - 1.0 - rhs; };
    double r;
    if (branch == Branch::below_reference) {
        // r > 1: h is strictly increasing from h(1) = -rhs < 0.
        double hi = 2.0 + 2.0 * rhs;
        while (h(hi) < 0.0) hi *= 2.0;
        r = find_root_bracketed(h, 1.0, hi, std::max(n * tol * 0.5, 4e-16 * hi));
    } else {
        // r in (0, 1): h is strictly decreasing toward r -> 0+.
        if (rhs > 690.0)
            throw std::domain_error(
                "embed_integer: above_reference ratio underflows for this energy");
        double lo = std::exp(-(rhs + 2.0));
        while (h(lo) < 0.0) lo *= 0.5;
        // |h'| ~ 1/r near the root, so the bracket width must scale with r.
        r = find_root_bracketed(h, lo, 1.0, std::max(0.5 * n * tol * lo, 1e-300));
    }
    return r * theta0;
}

}  // namespace

double embed_integer(double n, double theta0, int A, Branch branch, double tol) {
    if (!(n >= 1.0)) throw std::domain_error("embed_integer: requires n >= 1");
    if (!(theta0 < 0.0)) throw std::domain_error("embed_integer: requires theta0 < 0");
    if (A < 1) throw std::domain_error("embed_integer: requires A >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("embed_integer: tol must be positive");
    return solve_ratio(n, theta0, energy_pow(A, n), branch, tol);
}

LatticeEmbedding build_lattice(double n, double theta0, int K, Branch branch,
                               double tol) {
    if (K < 1) throw std::domain_error("build_lattice: requires K >= 1");
    LatticeEmbedding emb;
    emb.n = n;
    emb.theta0 = theta0;
    emb.branch = branch;
    emb.points.reserve(K);
    for (int k = 1; k <= K; ++k) {
        LatticePoint p;
        p.k = k;
        p.theta = embed_integer(n, theta0, k, branch, tol);
        p.energy = energy_pow(k, n);
        emb.points.push_back(p);
    }
    emb.theta1 = emb.points.front().theta;
    return emb;
}

double riemannian_gap(double n, double theta_a, double theta_b) {
    if (!(n >= 1.0)) throw std::domain_error("riemannian_gap: requires n >= 1");
    if (!(theta_a < 0.0) || !(theta_b < 0.0))
        throw std::domain_error("riemannian_gap: requires negative arguments");
    return std::abs(std::log(theta_b / theta_a)) / std::sqrt(n);
}

GapTable gap_table(const LatticeEmbedding& emb) {
    if (emb.points.size() < 2)
        throw TooFewPoints("gap_table: need at least 2 lattice points");
    GapTable t;
    t.n = emb.n;
    t.theta0 = emb.theta0;
    for (std::size_t i = 0; i + 1 < emb.points.size(); ++i) {
        t.entries.push_back({emb.points[i].k,
                             riemannian_gap(emb.n, emb.points[i].theta,
                                            emb.points[i + 1].theta)});
    }
    return t;
}

ClosureReport pythagoras_closure(double n, double theta0, int A, int B, int C,
                                 double tol) {
    if (A < 1 || B < 1 || C < 1)
        throw std::domain_error("pythagoras_closure: requires A, B, C >= 1");
    const double solver_tol = 1e-10;
    ClosureReport rep;
    rep.n = n;
    rep.A = A;
    rep.B = B;
    rep.C = C;
    rep.energy_sum = energy_pow(A, n) + energy_pow(B, n);
    rep.target_energy = energy_pow(C, n);
    rep.defect = rep.energy_sum - rep.target_energy;

    const double theta_A = embed_integer(n, theta0, A, Branch::below_reference, solver_tol);
    const double theta_B = embed_integer(n, theta0, B, Branch::below_reference, solver_tol);
    rep.theta_C = embed_integer(n, theta0, C, Branch::below_reference, solver_tol);
    rep.theta_R_energy =
        product_divergence(n, {theta_A, theta_B}, {theta0, theta0});
    rep.closed = std::abs(rep.defect) <= tol;
    return rep;
}

}  // namespace dualitylab
