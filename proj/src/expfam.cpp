#include "dualitylab/expfam.hpp"

#include <cmath>
#include <stdexcept>

namespace dualitylab {

namespace {

void check_n(double n) {
    if (!(n >= 1.0)) throw std::domain_error("expfam: requires n >= 1");
}

void check_theta(double theta) {
    if (!(theta < 0.0)) throw std::domain_error("expfam: requires theta < 0");
}

}  // namespace

double psi_constant(double n) {
    check_n(n);
    return std::log(2.0 / n) + log_gamma(1.0 / n);
}

FamilyPoint family_point(double n, double theta) {
    check_n(n);
    check_theta(theta);
    FamilyPoint p;
    p.n = n;
    p.theta = theta;
    p.psi = -std::log(-theta) / n + psi_constant(n);
    p.Z = std::exp(p.psi);
    p.eta = -1.0 / (n * theta);
    p.g = 1.0 / (n * theta * theta);
    return p;
}

double pdf(const FamilyPoint& p, double x) {
    return std::exp(p.theta * std::pow(std::abs(x), p.n) - p.psi);
}

double moment_oracle(const FamilyPoint& p, const QuadConfig& cfg) {
    // E|X|^n = 2 * int_0^inf x^n exp(theta x^n - psi) dx by even symmetry.
    const double n = p.n;
    const double theta = p.theta;
    const double psi = p.psi;
    QuadResult r = integrate_halfline(
        [n, theta, psi](double x) {
            const double xn = std::pow(x, n);
            // Underflowed density kills any polynomial factor (avoids 0 * inf).
            if (!(theta * xn - psi > -745.0)) return 0.0;
            return xn * std::exp(theta * xn - psi);
        },
        cfg);
    return 2.0 * r.value;
}

double legendre_inverse(double n, double eta) {
    check_n(n);
    if (!(eta > 0.0)) throw std::domain_error("legendre_inverse: requires eta > 0");
    return -1.0 / (n * eta);
}

double fenchel_conjugate(double n, double eta) {
    check_n(n);
    if (!(eta > 0.0)) throw std::domain_error("fenchel_conjugate: requires eta > 0");
    return -1.0 / n - std::log(n * eta) / n - psi_constant(n);
}

double divergence(double n, double theta, double theta_ref) {
    check_n(n);
    check_theta(theta);
    check_theta(theta_ref);
    const double r = theta / theta_ref;
    return (-std::log(r) + r - 1.0) / n;
}

double cubic_form(double n, double theta) {
    check_n(n);
    check_theta(theta);
    return -2.0 / (n * theta * theta * theta);
}

double product_divergence(double n, const ProductPoint& a, const ProductPoint& b) {
    return divergence(n, a.theta1, b.theta1) + divergence(n, a.theta2, b.theta2);
}

}  // namespace dualitylab
