#pragma once

#include "dualitylab/numerics.hpp"

namespace dualitylab {

/// One point of the family p(x; theta) = exp(theta |x|^n - psi(theta)),
/// theta < 0, with every derived quantity in closed form:
///   Z   = (2/n) (-theta)^{-1/n} Gamma(1/n)
///   psi = ln Z = -(1/n) ln(-theta) + C_n,   C_n = ln(2 Gamma(1/n) / n)
///   eta = -1/(n theta)                      (expectation of |X|^n)
///   g   = 1/(n theta^2)                     (Fisher metric, psi'')
struct FamilyPoint {
    double n = 2.0;
    double theta = -1.0;
    double Z = 0.0;
    double psi = 0.0;
    double eta = 0.0;
    double g = 0.0;
};

/// A point on the two-axis product manifold; the metric is diagonal,
/// diag(1/(n theta1^2), 1/(n theta2^2)).
struct ProductPoint {
    double theta1;
    double theta2;
};

/// ln(2 Gamma(1/n) / n), the theta-independent part of psi.
double psi_constant(double n);

FamilyPoint family_point(double n, double theta);

double pdf(const FamilyPoint& p, double x);

/// Quadrature value of E[|X|^n]; cross-check for the closed-form eta.
double moment_oracle(const FamilyPoint& p, const QuadConfig& cfg = {});

/// theta = -1/(n eta), the inverse Legendre map.
double legendre_inverse(double n, double eta);

/// psi*(eta) = -1/n - (1/n) ln(n eta) - C_n.
double fenchel_conjugate(double n, double eta);

/// Bregman divergence of psi:
///   D(theta || theta_ref) = (1/n) (ln(theta_ref/theta) + theta/theta_ref - 1).
double divergence(double n, double theta, double theta_ref);

/// psi'''(theta) = -2/(n theta^3); nonzero everywhere on the domain.
double cubic_form(double n, double theta);

/// Component-additive divergence on the product manifold.
double product_divergence(double n, const ProductPoint& a, const ProductPoint& b);

}  // namespace dualitylab
