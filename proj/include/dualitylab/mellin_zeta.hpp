#pragma once

#include <vector>

#include "dualitylab/numerics.hpp"

namespace dualitylab {

struct MellinReport {
    double n = 0.0;
    double s = 0.0;
    double numeric = 0.0;
    double closed_form = 0.0;
    double residual = 0.0;     // |numeric - closed_form|
    double split_point = 1.0;  // boundary between the tau->0 and tau->inf regimes
};

struct GammaScanRow {
    double s = 0.0;
    double ratio = 0.0;        // Gamma(s) / Gamma(s/n)
    double duplication = 0.0;  // n = 2 only: Legendre duplication residual
    bool has_duplication = false;
};

/// M[Theta_n - 1](s) = 2 Gamma(s) zeta(n s), term-by-term from
/// int_0^inf e^{-tau k^n} tau^{s-1} dtau = Gamma(s) k^{-ns}. Needs s > 1/n.
double mellin_closed_form(double n, double s);

/// int_0^inf (Theta_n(tau) - 1) tau^{s-1} dtau by quadrature, split at
/// tau = 1; the closed form above is the oracle for the residual.
MellinReport mellin_numeric(double n, double s, const QuadConfig& quad = {},
                            double tail_tol = 1e-12);

/// Gamma(s) / Gamma(s/n) over a grid; for n = 2 each row also carries the
/// Legendre duplication residual as a correctness witness.
std::vector<GammaScanRow> gamma_factor_scan(double n,
                                            const std::vector<double>& s_grid);

}  // namespace dualitylab
