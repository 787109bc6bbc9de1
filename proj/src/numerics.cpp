#include "dualitylab/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace dualitylab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

}  // namespace

void QuadConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("QuadConfig: tolerances must be positive");
    if (max_refinements < 1)
        throw std::invalid_argument("QuadConfig: max_refinements must be >= 1");
    if (max_oscillation_terms < 4)
        throw std::invalid_argument("QuadConfig: max_oscillation_terms must be >= 4");
}

double log_gamma(double x) {
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: requires x > 0");
    // Shift into the asymptotic regime, then Stirling's series.
    double shift = 0.0;
    double z = x;
    while (z < 16.0) {
        shift += std::log(z);
        z += 1.0;
    }
    constexpr std::array<double, 8> c = {
        1.0 / 12.0,        -1.0 / 360.0,       1.0 / 1260.0,
        -1.0 / 1680.0,     1.0 / 1188.0,       -691.0 / 360360.0,
        1.0 / 156.0,       -3617.0 / 122400.0};
    const double inv = 1.0 / z;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv;
    for (double ck : c) {
        series += ck * p;
        p *= inv2;
    }
    const double half_log_2pi = 0.5 * std::log(2.0 * kPi);
    return (z - 0.5) * std::log(z) - z + half_log_2pi + series - shift;
}

double zeta_real(double s) {
    if (!(s > 1.0))
        throw std::domain_error("zeta_real: requires s > 1");
    constexpr int N = 64;
    double sum = 0.0;
    for (int k = 1; k < N; ++k) sum += std::pow(double(k), -s);
    const double Ns = std::pow(double(N), -s);
    sum += 0.5 * Ns;
    sum += Ns * double(N) / (s - 1.0);  // N^{1-s}/(s-1)
    // Euler-Maclaurin corrections: B_{2j}/(2j)! * (s)_{2j-1} * N^{-s-2j+1}
    constexpr std::array<double, 7> b_over_fact = {
        1.0 / 12.0,                      // B2/2!
        -1.0 / 720.0,                    // B4/4!
        1.0 / 30240.0,                   // B6/6!
        -1.0 / 1209600.0,                // B8/8!
        1.0 / 47900160.0,                // B10/10!
        -691.0 / 1307674368000.0,        // B12/12!
        1.0 / 74724249600.0};            // B14/14!
    double rising = s;            // s(s+1)...(s+2j-2), starts at j=1 with just s
    double npow = Ns / double(N);  // N^{-s-2j+1}, starts at N^{-s-1}
    for (int j = 0; j < 7; ++j) {
        sum += b_over_fact[j] * rising * npow;
        rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
        npow /= double(N) * double(N);
    }
    return sum;
}

QuadResult integrate_halfline(const std::function<double(double)>& f,
                              const QuadConfig& cfg) {
    cfg.validate();
    QuadResult res;
    // x = exp((pi/2) sinh t); weight dx/dt = x * (pi/2) cosh t.
    auto term_at = [&](double t) -> double {
        const double e = kHalfPi * std::sinh(t);
        if (e > 700.0 || e < -700.0) return 0.0;  // integrand decayed / x underflow
        const double x = std::exp(e);
        const double w = x * kHalfPi * std::cosh(t);
        const double fx = f(x);
        ++res.evaluations;
        if (!std::isfinite(fx))
            throw EvaluationError("integrate_halfline: integrand returned non-finite value");
        const double v = fx * w;
        if (!std::isfinite(v))
            throw EvaluationError("integrate_halfline: weighted integrand overflowed");
        return v;
    };

    const double cut = 1e-6 * cfg.abs_tol;
    auto centered_sweep = [&](double step) -> double {
        // Sum term_at(k*step) for k = 0, +-1, ... going outward on both
        // sides; stop a side after 4 consecutive negligible terms past
        // |t| > 2.5.
        double acc = term_at(0.0);
        for (int dir = -1; dir <= 1; dir += 2) {
            int small_run = 0;
            for (int k = 1; k < 4000; ++k) {
                const double v = term_at(dir * k * step);
                acc += v;
                if (std::abs(v) < cut && k * step > 2.5) {
                    if (++small_run >= 4) break;
                } else {
                    small_run = 0;
                }
            }
        }
        return acc;
    };

    double h = 0.5;
    double sum = centered_sweep(h);  // node sum at spacing h
    double integral = h * sum;
    double prev = integral;
    for (int level = 1; level <= cfg.max_refinements; ++level) {
        // Add midpoints: nodes at odd multiples of h/2, i.e. +-h/2, +-3h/2, ...
        double mid = 0.0;
        {
            int small_run = 0;
            for (int k = 0; k < 8000; ++k) {
                const double t = (k + 0.5) * h;
                const double v1 = term_at(t);
                const double v2 = term_at(-t);
                mid += v1 + v2;
                if (std::abs(v1) + std::abs(v2) < cut && t > 2.5) {
                    if (++small_run >= 4) break;
                } else {
                    small_run = 0;
                }
            }
        }
        sum += mid;
        h *= 0.5;
        integral = h * sum;
        res.error_estimate = std::abs(integral - prev);
        prev = integral;
        if (level >= 2 &&
            res.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(integral)))
            break;
    }
    res.value = integral;
    res.converged =
        res.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(res.value));
    return res;
}

namespace {

// Finite Euler transform of an alternating tail a0 - a1 + a2 - ... given the
// magnitudes a[k]; returns the accelerated sum and a stabilization estimate.
std::pair<double, double> euler_sum(std::vector<double> mags, double lead_sign) {
    std::vector<double> diffs = std::move(mags);
    double total = 0.0;
    double last = 0.0;
    double denom = 2.0;
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        last = diffs[0] / denom;
        total += last;
        denom *= 2.0;
        for (std::size_t i = 0; i + 1 < diffs.size() - k; ++i)
            diffs[i] = diffs[i] - diffs[i + 1];
    }
    return {lead_sign * total, std::abs(last)};
}

}  // namespace

QuadResult fourier_cosine_transform(double n, double gamma, double xi,
                                    const QuadConfig& cfg) {
    cfg.validate();
    if (!(n >= 1.0))
        throw std::domain_error("fourier_cosine_transform: requires n >= 1");
    if (!(gamma > 0.0))
        throw std::domain_error("fourier_cosine_transform: requires gamma > 0");
    xi = std::abs(xi);

    if (xi < 1e-300) {
        QuadResult r = integrate_halfline(
            [&](double x) { return std::exp(-gamma * std::pow(x, n)); }, cfg);
        r.value *= 2.0;
        r.error_estimate *= 2.0;
        return r;
    }

    QuadResult res;
    // Kernel support cutoff: exp(-gamma x^n) < e^-50 beyond xmax.
    const double xmax = std::pow(50.0 / gamma, 1.0 / n);
    const double half_period = 1.0 / (2.0 * xi);

    auto kernel = [&](double x) { return std::exp(-gamma * std::pow(x, n)); };

    // Integrate [a, b] with 16-point Gauss-Legendre, subdividing so the
    // kernel's log varies by at most ~1.5 per panel.
    auto cell_integral = [&](double a, double b) -> double {
        const double width = b - a;
        const double slope = n * gamma * std::pow(b, n - 1.0);
        const int sub = 1 + static_cast<int>(width * slope / 1.5);
        const double w = width / sub;
        double acc = 0.0;
        for (int s = 0; s < sub; ++s) {
            const double lo = a + s * w;
            const double mid = lo + 0.5 * w;
            const double half = 0.5 * w;
            double cell = 0.0;
            for (int i = 0; i < 8; ++i) {
                const double dx = half * kGlNodes[i];
                const double xl = mid - dx;
                const double xr = mid + dx;
                cell += kGlWeights[i] * (kernel(xl) * std::cos(2.0 * kPi * xi * xl) +
                                         kernel(xr) * std::cos(2.0 * kPi * xi * xr));
                res.evaluations += 2;
            }
            acc += half * cell;
        }
        return acc;
    };

    const double first_zero = 0.25 / xi;
    double total = 0.0;
    double abs_accum = 0.0;

    if (first_zero >= xmax) {
        // No zero crossing inside the kernel support.
        total = cell_integral(0.0, xmax);
        abs_accum = std::abs(total);
    } else {
        total = cell_integral(0.0, first_zero);
        abs_accum += std::abs(total);
        const long cells =
            static_cast<long>(std::ceil((xmax - first_zero) / half_period));
        if (cells <= cfg.max_oscillation_terms) {
            double a = first_zero;
            for (long j = 0; j < cells; ++j) {
                const double b = std::min(a + half_period, xmax);
                const double c = cell_integral(a, b);
                total += c;
                abs_accum += std::abs(c);
                a = b;
            }
        } else {
            // Cell budget exceeded: sum what the budget allows, then Euler-
            // accelerate the remaining alternating series.
            double a = first_zero;
            long direct = cfg.max_oscillation_terms;
            double last_mag = 0.0;
            for (long j = 0; j < direct; ++j) {
                const double b = a + half_period;
                const double c = cell_integral(a, b);
                total += c;
                abs_accum += std::abs(c);
                last_mag = std::abs(c);
                a = b;
            }
            const int tail_len = 24;
            std::vector<double> mags;
            mags.reserve(tail_len);
            double lead_sign = 0.0;
            for (int j = 0; j < tail_len; ++j) {
                const double b = a + half_period;
                const double c = cell_integral(a, b);
                if (j == 0) lead_sign = (c >= 0.0) ? 1.0 : -1.0;
                mags.push_back(std::abs(c));
                a = b;
            }
            auto [accel, stab] = euler_sum(std::move(mags), lead_sign);
            total += accel;
            res.error_estimate += stab + last_mag * 1e-3;
            if (stab > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
                res.value = 2.0 * total;
                res.error_estimate = 2.0 * (stab + last_mag);
                res.converged = false;
                return res;
            }
        }
    }

    res.value = 2.0 * total;
    // Truncation beyond xmax plus floating accumulation noise.
    const double tail = std::exp(-50.0) * xmax;
    res.error_estimate = 2.0 * (res.error_estimate + tail + 5e-16 * abs_accum);
    res.converged =
        res.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(res.value));
    return res;
}

double gauss16(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kGlNodes[i];
        acc += kGlWeights[i] * (f(mid - dx) + f(mid + dx));
    }
    return half * acc;
}

double duplication_residual(double s) {
    if (!(s > 0.0))
        throw std::domain_error("duplication_residual: requires s > 0");
    const double lhs = log_gamma(s);
    const double rhs = (s - 1.0) * std::numbers::ln2 + log_gamma(0.5 * s) +
                       log_gamma(0.5 * (s + 1.0)) - 0.5 * std::log(kPi);
    return std::exp(lhs) * std::abs(std::expm1(rhs - lhs));
}

double find_root_bracketed(const std::function<double(double)>& g,
                           double lo, double hi, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("find_root_bracketed: tol must be positive");
    if (lo > hi) std::swap(lo, hi);
    double flo = g(lo);
    double fhi = g(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw BadBracket("find_root_bracketed: g(lo) and g(hi) have the same sign");
    for (int it = 0; it < 200; ++it) {
        const double width = hi - lo;
        if (width <= tol) break;
        // Secant candidate; fall back to bisection when it fails to land
        // strictly inside or to contract.
        double x = hi - fhi * width / (fhi - flo);
        const double margin = 0.01 * width;
        if (!(x > lo + margin) || !(x < hi - margin)) x = lo + 0.5 * width;
        const double fx = g(x);
        if (fx == 0.0) return x;
        if (flo * fx < 0.0) {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace dualitylab
