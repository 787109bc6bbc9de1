#include "dualitylab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dualitylab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

// Closed-form transform of exp(-x^2) under the e^{-2 pi i xi x} convention.
double gaussian_fhat(double xi) {
    return kSqrtPi * std::exp(-kPi * kPi * xi * xi);
}

struct Sampled {
    std::vector<double> xi, fhat, err;
};

Sampled sample_fhat(double n, double xi_max, int count, const QuadConfig& quad) {
    if (!(n >= 1.0)) throw std::domain_error("spectral: requires n >= 1");
    if (!(xi_max > 0.0)) throw std::domain_error("spectral: requires xi_max > 0");
    if (count < 16) throw std::domain_error("spectral: requires sample_count >= 16");
    Sampled s;
    s.xi.reserve(count);
    s.fhat.reserve(count);
    s.err.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double xi = xi_max * double(i) / double(count - 1);
        s.xi.push_back(xi);
        if (n == 2.0) {
            s.fhat.push_back(gaussian_fhat(xi));
            s.err.push_back(0.0);
        } else {
            QuadResult q = fourier_cosine_transform(n, 1.0, xi, quad);
            s.fhat.push_back(q.value);
            s.err.push_back(q.error_estimate);
        }
    }
    return s;
}

struct LinFit {
    double slope = 0.0, intercept = 0.0, rms = 0.0;
};

LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double m = double(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinFit f;
    f.slope = (sxy - sx * sy / m) / (sxx - sx * sx / m);
    f.intercept = (sy - f.slope * sx) / m;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / m);
    return f;
}

}  // namespace

void ThetaConfig::validate() const {
    if (!(n >= 1.0)) throw std::domain_error("ThetaConfig: requires n >= 1");
    if (!(tau > 0.0)) throw std::domain_error("ThetaConfig: requires tau > 0");
    if (!(tail_tol > 0.0)) throw std::domain_error("ThetaConfig: requires tail_tol > 0");
    if (max_terms < 1) throw std::domain_error("ThetaConfig: requires max_terms >= 1");
}

ThetaSum theta_series(const ThetaConfig& cfg) {
    cfg.validate();
    double sum = 1.0;  // k = 0
    long K = 0;
    for (;;) {
        // Tail bound after summing |k| <= K: the terms are dominated by the
        // geometric series with ratio exp(-tau ((K+1)^n - K^n)).
        const double Kn = std::pow(double(K), cfg.n);
        const double delta = std::pow(double(K + 1), cfg.n) - Kn;
        const double head = (cfg.tau * Kn > 745.0) ? 0.0 : std::exp(-cfg.tau * Kn);
        const double bound = 2.0 * head / (-std::expm1(-cfg.tau * delta));
        if (bound < cfg.tail_tol) break;
        if (K >= cfg.max_terms)
            throw TruncationCapExceeded("theta_series: tail bound still above tail_tol at the term cap");
        ++K;
        sum += 2.0 * std::exp(-cfg.tau * std::pow(double(K), cfg.n));
    }
    return {sum, 2 * K + 1};
}

DualSum dual_theta_sum(const ThetaConfig& cfg, const QuadConfig& quad) {
    cfg.validate();
    quad.validate();
    const double sig = std::pow(cfg.tau, -1.0 / cfg.n);
    DualSum out;

    if (cfg.n == 2.0) {
        out.analytic_kernel = true;
        double S = sig * gaussian_fhat(0.0);
        long m = 0;
        for (;;) {
            ++m;
            const double t = 2.0 * sig * gaussian_fhat(m * sig);
            S += t;
            const double r = std::exp(-kPi * kPi * sig * sig * (2.0 * m + 1.0));
            if (t * r / (1.0 - r) < cfg.tail_tol) break;
            if (m >= cfg.max_terms)
                throw TruncationCapExceeded("dual_theta_sum: analytic path hit the term cap");
        }
        out.value = S;
        out.terms_used = 2 * m + 1;
        out.quad_error = 1e-15 * double(m + 1);
        return out;
    }

    auto fhat_term = [&](double xi) -> double {
        QuadResult q = fourier_cosine_transform(cfg.n, 1.0, xi, quad);
        if (!q.converged)
            throw NonConvergence("dual_theta_sum: oscillatory quadrature did not converge");
        out.quad_error += 2.0 * sig * q.error_estimate;
        return q.value;
    };

    double S = sig * fhat_term(0.0);
    std::vector<double> terms{0.0};  // 1-indexed history of signed terms
    const long cap = std::min<long>(cfg.max_terms, 20'000);
    long m = 0;
    for (;;) {
        ++m;
        if (m > cap)
            throw TruncationCapExceeded("dual_theta_sum: numeric path hit the term cap");
        const double t = 2.0 * sig * fhat_term(m * sig);
        S += t;
        terms.push_back(t);
        if (m >= 8 && std::abs(t) < 0.1 * cfg.tail_tol &&
            std::abs(terms[m / 2]) < 0.1 * cfg.tail_tol)
            break;
        if (m >= 32 && m % 4 == 0) {
            // The envelope decays algebraically; estimate the octave slope by
            // Richardson extrapolation and close the sum with the power-law
            // tail when the model puts it below tail_tol.
            const double t1 = std::abs(terms[m]);
            const double t2 = std::abs(terms[m / 2]);
            const double t4 = std::abs(terms[m / 4]);
            const bool same_sign =
                terms[m] * terms[m / 2] > 0.0 && terms[m / 2] * terms[m / 4] > 0.0;
            if (same_sign && t1 < t2 && t2 < t4) {
                const double a1 = std::log2(t2 / t1);
                const double a2 = std::log2(t4 / t2);
                if (a1 > 1.05 && a1 < 14.0 && a2 > 1.05 && a2 < 14.0) {
                    double alpha = 2.0 * a1 - a2;
                    if (alpha <= 1.05) alpha = a1;
                    double tail = 0.0;
                    for (int j = 1; j <= 64; ++j)
                        tail += t1 * std::pow((m + j) / double(m), -alpha);
                    tail += t1 * std::pow((m + 64.5) / double(m), 1.0 - alpha) *
                            double(m) / (alpha - 1.0);
                    const double guard =
                        std::min(1.0, 20.0 * std::pow(m * sig, -1.5));
                    if (tail * guard <= cfg.tail_tol) {
                        S += std::copysign(tail, terms[m]);
                        break;
                    }
                }
            }
        }
    }
    out.value = S;
    out.terms_used = 2 * m + 1;
    return out;
}

PoissonReport poisson_residual(const ThetaConfig& cfg, const QuadConfig& quad) {
    PoissonReport rep;
    rep.n = cfg.n;
    rep.tau = cfg.tau;
    const ThetaSum primal = theta_series(cfg);
    const DualSum dual = dual_theta_sum(cfg, quad);
    rep.primal_sum = primal.value;
    rep.dual_sum = dual.value;
    rep.residual = std::abs(primal.value - dual.value);
    rep.primal_terms = primal.terms_used;
    rep.dual_terms = dual.terms_used;
    rep.quad_error = dual.quad_error;
    return rep;
}

double jacobi_residual(double tau, double tail_tol, const QuadConfig& quad) {
    quad.validate();
    if (!(tau > 0.0)) throw std::domain_error("jacobi_residual: requires tau > 0");
    ThetaConfig left{2.0, tau, tail_tol};
    ThetaConfig right{2.0, kPi * kPi / tau, tail_tol};
    return std::abs(theta_series(left).value -
                    std::sqrt(kPi / tau) * theta_series(right).value);
}

SpectralProfile spectral_profile(double n, double xi_max, int sample_count,
                                 const QuadConfig& quad) {
    quad.validate();
    Sampled s = sample_fhat(n, xi_max, sample_count, quad);

    SpectralProfile prof;
    prof.n = n;
    prof.xi_samples.reserve(s.xi.size());
    for (std::size_t i = 0; i < s.xi.size(); ++i)
        prof.xi_samples.emplace_back(s.xi[i], s.fhat[i]);

    bool sign_change = false;
    for (std::size_t i = 0; i + 1 < s.fhat.size(); ++i)
        if (s.fhat[i] * s.fhat[i + 1] < 0.0) sign_change = true;

    // Envelope candidates with their quadrature noise floor.
    std::vector<double> ex, ev, ee;
    if (!sign_change) {
        for (std::size_t i = 1; i < s.xi.size(); ++i) {
            ex.push_back(s.xi[i]);
            ev.push_back(std::abs(s.fhat[i]));
            ee.push_back(s.err[i]);
        }
    } else {
        for (std::size_t i = 1; i + 1 < s.xi.size(); ++i) {
            const double a = std::abs(s.fhat[i]);
            if (a > std::abs(s.fhat[i - 1]) && a > std::abs(s.fhat[i + 1])) {
                ex.push_back(s.xi[i]);
                ev.push_back(a);
                ee.push_back(s.err[i]);
            }
        }
    }
    for (std::size_t i = 0; i < ex.size(); ++i)
        if (ev[i] > 10.0 * ee[i]) prof.envelope_points.emplace_back(ex[i], ev[i]);

    // Doubly-logarithmic fit over the upper half of the xi range; points at
    // or above the quadrature noise floor only, and env < 0.9 so that
    // -ln env stays positive.
    std::vector<double> fx, fy;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        if (ex[i] < 0.5 * xi_max) continue;
        if (!(ev[i] > 10.0 * ee[i])) continue;
        if (!(ev[i] > 0.0) || !(ev[i] < 0.9)) continue;
        fx.push_back(std::log(ex[i]));
        fy.push_back(std::log(-std::log(ev[i])));
    }
    if (fx.size() < 5)
        throw InsufficientEnvelope(
            "spectral_profile: fewer than 5 usable envelope maxima in the fitting window");
    LinFit fit = least_squares(fx, fy);
    prof.q_hat = fit.slope;
    prof.gamma_hat = std::exp(fit.intercept);
    prof.fit_residual = fit.rms;
    return prof;
}

double gaussian_shape_residual(double n, double xi_max, int sample_count,
                               const QuadConfig& quad) {
    quad.validate();
    Sampled s = sample_fhat(n, xi_max, sample_count, quad);
    const double peak = *std::max_element(s.fhat.begin(), s.fhat.end());
    std::vector<double> x, y;
    for (std::size_t i = 0; i < s.xi.size(); ++i) {
        if (s.fhat[i] > 1e-8 * peak) {
            x.push_back(s.xi[i] * s.xi[i]);
            y.push_back(std::log(s.fhat[i]));
        }
    }
    if (x.size() < 5)
        throw InsufficientEnvelope("gaussian_shape_residual: too few positive samples");
    LinFit fit = least_squares(x, y);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < s.xi.size(); ++i) {
        const double model =
            std::exp(fit.intercept + fit.slope * s.xi[i] * s.xi[i]);
        const double r = s.fhat[i] - model;
        num += r * r;
        den += s.fhat[i] * s.fhat[i];
    }
    return std::sqrt(num / den);
}

double conjugate_exponent(double n) {
    if (!(n > 1.0))
        throw std::domain_error("conjugate_exponent: requires n > 1");
    return n / (n - 1.0);
}

HyRatio hy_ratio(double n, double p, const QuadConfig& quad) {
    quad.validate();
    if (!(n >= 1.0)) throw std::domain_error("hy_ratio: requires n >= 1");
    if (!(p > 1.0) || !(p <= 2.0))
        throw std::domain_error("hy_ratio: requires p in (1, 2]");
    const double pp = p / (p - 1.0);

    auto fhat_abs = [&](double xi) -> double {
        if (n == 2.0) return gaussian_fhat(xi);
        return std::abs(fourier_cosine_transform(n, 1.0, xi, quad).value);
    };
    auto integrand = [&](double xi) { return std::pow(fhat_abs(xi), pp); };

    // ||fhat||_pp^pp = 2 * int_0^inf |fhat|^pp: composite Gauss panels over
    // [0,1], then octave blocks with a geometric tail estimate from the
    // octave-to-octave decay ratio.
    double total = 0.0;
    for (int j = 0; j < 8; ++j)
        total += gauss16(integrand, j * 0.125, (j + 1) * 0.125);
    double prev_octave = -1.0;
    for (int k = 0; k <= 5; ++k) {
        const double lo = std::pow(2.0, double(k));
        const double width = lo / 16.0;
        double oct = 0.0;
        for (int j = 0; j < 16; ++j)
            oct += gauss16(integrand, lo + j * width, lo + (j + 1) * width);
        total += oct;
        if (prev_octave > 0.0 && oct > 0.0 && oct < 0.9 * prev_octave) {
            const double r = oct / prev_octave;
            const double tail = oct * r / (1.0 - r);
            if (tail < 1e-9 * total) {
                total += tail;
                break;
            }
            if (k == 5) total += tail;
        }
        prev_octave = oct;
    }

    HyRatio out;
    const double log_fnorm =
        (std::log(2.0 / n) + log_gamma(1.0 / n)) / p - std::log(p) / (n * p);
    out.ratio = std::pow(2.0 * total, 1.0 / pp) / std::exp(log_fnorm);
    out.beckner_bound =
        std::exp(0.5 * (std::log(p) / p - std::log(pp) / pp));
    return out;
}

double default_xi_max(double n) { return n >= 3.0 ? 5.0 : 3.0; }

}  // namespace dualitylab
