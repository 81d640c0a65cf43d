#pragma once

// Spectral density of the generalized Cauchy field: closed form at alpha = 2,
// contour and Hankel quadratures, asymptotic series at both ends of the
// spectrum, and the product spectrum of the sheet.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cauchy/error.hpp"
#include "cauchy/kernels.hpp"
#include "cauchy/quadrature.hpp"
#include "cauchy/specfun.hpp"

namespace cauchy {

using Frequency = Lag;

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_subdivisions = 4000;
    /// upper cutoff in the scaled variable x = |omega| u; <= 0 selects it automatically
    double truncation_point = 0.0;
    /// cap on the discarded tail; <= 0 means a tenth of the effective tolerance
    double tail_bound = 0.0;
};

struct SpectralValue {
    double value = 0.0;
    /// quadrature error estimate plus the tail bound, in density units
    double abs_error = 0.0;
    double truncation_point = 0.0;
    double tail_bound = 0.0;
    int evaluations = 0;

    operator double() const { return value; }
};

enum class Regime { HighFreq, LowFreq };

enum class LowFreqCase { Power, Log, Constant };

struct SeriesTerm {
    double coefficient;
    double exponent;
};

struct AsymptoticSeries {
    Regime regime = Regime::HighFreq;
    std::vector<SeriesTerm> terms;
    /// multiplies ln(1/|omega|); nonzero only in the logarithmic low-frequency case
    double log_term_coefficient = 0.0;
    /// every term carries an extra factor e^{-|omega|}
    bool exponential_prefactor = false;
    /// the power-law series vanishes identically here; use the alpha = 2 expansion
    bool requires_exponential_branch = false;
    LowFreqCase low_case = LowFreqCase::Power;
};

namespace detail {

inline double frequency_norm(const KernelParams& p, const Frequency& w, const char* what) {
    if (w.size() != 1) require_dim(w.size(), static_cast<std::size_t>(p.dim()), what);
    return w.norm();
}

inline double alpha_beta_margin(const KernelParams& p) {
    const double m = p.alpha() * p.beta() - p.dim();
    return std::abs(m) <= 1e-12 * p.dim() ? 0.0 : m;
}

// relative error beyond which a roundoff-limited contour result is rejected
inline constexpr double kCancellationLimit = 1e-6;

// K_nu(x) x^{n/2}, falling back to the small-argument form where K_nu would overflow
inline double bessel_k_weight(double nu, double n, double x) {
    const double a = std::abs(nu);
    if (x < 1e-30) {
        if (a == 0.0) return -std::log(0.5 * x) * std::pow(x, 0.5 * n);
        return 0.5 * specfun::gamma(a) * std::pow(2.0, a) * std::pow(x, 0.5 * n - a);
    }
    return specfun::bessel_k(nu, x) * std::pow(x, 0.5 * n);
}

inline std::string describe(const KernelParams& p, double w) {
    std::ostringstream os;
    os << "(alpha=" << p.alpha() << ", beta=" << p.beta() << ", n=" << p.dim() << ", |omega|=" << w << ")";
    return os.str();
}

}  // namespace detail

/// Low-frequency leading behaviour; the regime follows the sign of alpha*beta - n.
inline AsymptoticSeries low_freq_leading(const KernelParams& p, std::optional<LowFreqCase> force = std::nullopt) {
    const double n = p.dim();
    const double a = p.alpha();
    const double b = p.beta();
    const double ab = a * b;
    const double margin = detail::alpha_beta_margin(p);
    const LowFreqCase which = force ? *force : (margin < 0.0 ? LowFreqCase::Power : margin == 0.0 ? LowFreqCase::Log : LowFreqCase::Constant);
    const double pi = std::numbers::pi;
    const double scale = 1.0 / (std::pow(2.0, n - 1.0) * std::pow(pi, 0.5 * n) * specfun::gamma(0.5 * n));

    AsymptoticSeries s;
    s.regime = Regime::LowFreq;
    s.low_case = which;
    switch (which) {
        case LowFreqCase::Power:
            if (!(ab < n)) throw PreconditionError("power-law low-frequency form needs alpha*beta < n");
            s.terms.push_back({specfun::gamma(0.5 * (n - ab)) / (std::pow(2.0, ab) * std::pow(pi, 0.5 * n) * specfun::gamma(0.5 * ab)), ab - n});
            break;
        case LowFreqCase::Log: {
            const double c = -(b / n) * (specfun::digamma(b) + specfun::euler_gamma) + std::numbers::ln2 -
                             0.5 * specfun::euler_gamma + 0.5 * specfun::digamma(0.5 * n);
            s.log_term_coefficient = scale;
            s.terms.push_back({scale * c, 0.0});
            break;
        }
        case LowFreqCase::Constant:
            if (!(ab > n)) throw PreconditionError("constant low-frequency form needs alpha*beta > n");
            s.terms.push_back({scale * specfun::gamma(n / a) * specfun::gamma(b - n / a) / (a * specfun::gamma(b)), 0.0});
            break;
    }
    return s;
}

/// Terms of the power-law high-frequency series, j = 1..m.  At alpha = 2 every term
/// vanishes and the result is empty with requires_exponential_branch set.
inline AsymptoticSeries high_freq_power_series(const KernelParams& p, int m) {
    if (m < 1 || m > 20) throw PreconditionError("high-frequency series supports 1 <= m <= 20 terms");
    const double n = p.dim();
    const double a = p.alpha();
    const double b = p.beta();
    AsymptoticSeries s;
    s.regime = Regime::HighFreq;
    bool all_zero = true;
    for (int j = 1; j <= m; ++j) {
        const double sn = specfun::sin_pi(0.5 * a * j);
        const double log_mag = a * j * std::numbers::ln2 + specfun::log_gamma(b + j) - specfun::log_gamma(b) +
                               specfun::log_gamma(0.5 * (a * j + n)) + specfun::log_gamma(0.5 * (a * j + 2.0)) -
                               specfun::log_gamma(j + 1.0) - 0.5 * (n + 2.0) * std::log(std::numbers::pi);
        const double mag = std::exp(log_mag);
        if (!std::isfinite(mag)) throw OverflowError("high-frequency coefficient overflow at j=" + std::to_string(j));
        const double coeff = (j % 2 == 1 ? 1.0 : -1.0) * mag * sn;
        if (coeff != 0.0) all_zero = false;
        s.terms.push_back({coeff, -a * j - n});
    }
    if (all_zero) {
        s.terms.clear();
        s.requires_exponential_branch = true;
    }
    return s;
}

/// High-frequency series; at alpha = 2 the large-argument expansion of K with an e^{-|omega|} prefactor.
inline AsymptoticSeries high_freq_series(const KernelParams& p, int m) {
    if (p.alpha() < 2.0) return high_freq_power_series(p, m);
    if (m < 1 || m > 20) throw PreconditionError("high-frequency series supports 1 <= m <= 20 terms");
    const double n = p.dim();
    const double b = p.beta();
    const double nu = 0.5 * n - b;
    const double pre = 1.0 / (std::pow(2.0, 0.5 * (n - 1.0) + b) * std::pow(std::numbers::pi, 0.5 * (n - 1.0)) * specfun::gamma(b));
    AsymptoticSeries s;
    s.regime = Regime::HighFreq;
    s.exponential_prefactor = true;
    // Gamma(nu + j + 1/2) / (j! Gamma(nu - j + 1/2)) / 2^j as a finite product
    double ratio = 1.0;
    for (int j = 0; j < m; ++j) {
        if (j > 0) {
            const double odd = 2.0 * j - 1.0;
            ratio *= (4.0 * nu * nu - odd * odd) / (8.0 * j);
        }
        s.terms.push_back({pre * ratio, b - 0.5 * (n + 1.0) - j});
        if (ratio == 0.0) break;
    }
    return s;
}

/// Sums the first m terms (all when m <= 0).
inline double evaluate_truncated(const AsymptoticSeries& s, double w, int m = 0) {
    if (!(w > 0.0)) throw DomainError("evaluate_truncated: |omega| must be positive");
    const std::size_t count = m <= 0 ? s.terms.size() : std::min<std::size_t>(static_cast<std::size_t>(m), s.terms.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < count; ++j) sum += s.terms[j].coefficient * std::pow(w, s.terms[j].exponent);
    if (s.log_term_coefficient != 0.0) sum += s.log_term_coefficient * std::log(1.0 / w);
    if (s.exponential_prefactor) sum *= std::exp(-w);
    return sum;
}

inline SpectralValue spectral_closed_alpha2(const KernelParams& p, const Frequency& omega) {
    if (p.alpha() != 2.0) throw PreconditionError("closed form requires alpha = 2");
    const double w = detail::frequency_norm(p, omega, "spectral_closed_alpha2");
    const double n = p.dim();
    const double b = p.beta();
    if (w == 0.0) {
        if (detail::alpha_beta_margin(p) > 0.0) return {low_freq_leading(p).terms[0].coefficient};
        throw DomainError("spectral density diverges at omega = 0 when alpha*beta <= n");
    }
    const double log_pre = (b - 0.5 * n) * std::log(w) - (0.5 * n + b - 1.0) * std::numbers::ln2 -
                           0.5 * n * std::log(std::numbers::pi) - specfun::log_gamma(b) - w;
    SpectralValue out;
    out.value = std::exp(log_pre) * specfun::bessel_k_scaled(0.5 * n - b, w);
    out.abs_error = 4.0 * std::numeric_limits<double>::epsilon() * out.value;
    return out;
}

/// Contour representation (alpha < 2), integrated in x = |omega| u.
inline SpectralValue spectral_contour(const KernelParams& p, const Frequency& omega, const QuadratureSpec& q = {}) {
    if (!(p.alpha() < 2.0)) throw PreconditionError("contour representation requires alpha < 2");
    const double w = detail::frequency_norm(p, omega, "spectral_contour");
    if (!(w > 0.0)) throw DomainError("spectral_contour: |omega| must be positive");
    const double n = p.dim();
    const double nu = 0.5 * (n - 2.0);
    const double a = p.alpha();
    const double b = p.beta();

    auto f = [&](double x) {
        return detail::bessel_k_weight(nu, n, x) * specfun::complex_pow_denominator(x / w, a, b).imag();
    };

    // rigorous tail: e^x sqrt(x) K_nu(x) is monotone, so K_nu(x) <= A x^{-1/2} e^{-x} beyond X
    const double mexp = 0.5 * (n - 1.0);
    auto tail = [&](double X) {
        const double A = std::abs(nu) < 0.5 ? std::sqrt(0.5 * std::numbers::pi) : specfun::bessel_k_scaled(nu, X) * std::sqrt(X);
        double g = a <= 1.0 ? 1.0 : std::pow(specfun::sin_pi(0.5 * a), -b);
        const double r0 = std::pow(X / w, a);
        if (r0 > 1.0) g = std::min(g, std::pow(r0 - 1.0, -b));
        return g * A * std::exp(mexp * std::log(X) - X) / (1.0 - mexp / X);
    };

    double X = q.truncation_point > 0.0 ? q.truncation_point : std::max({40.0, 4.0 * mexp + 10.0, 2.0 * nu * nu});
    std::vector<double> pts = {0.0};
    for (double s : {1e-2, 1e-1, 1.0, 1e1, 1e2}) pts.push_back(s * w);
    for (double s : {1.0, 5.0, 20.0}) pts.push_back(s);
    pts.push_back(X);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::remove_if(pts.begin(), pts.end(), [&](double v) { return v > X; }), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const quad::Tolerance tol{q.abs_tol, q.rel_tol, q.max_subdivisions};
    quad::Result r = quad::integrate(f, pts, tol);
    double value = r.value;
    double qerr = r.abs_error;
    int evals = r.evaluations;
    bool ok = r.converged;
    double tb = tail(X);
    if (q.truncation_point <= 0.0) {
        // extend the cutoff until the tail is below the requested share of the tolerance
        while (ok) {
            const double cap = q.tail_bound > 0.0 ? q.tail_bound : 0.1 * std::max(q.abs_tol, q.rel_tol * std::abs(value));
            if (tb <= cap || X >= 745.0) break;
            const double X2 = std::min(X + 20.0, 745.0);
            const quad::Result ext = quad::integrate(f, X, X2, tol);
            value += ext.value;
            qerr += ext.abs_error;
            evals += ext.evaluations;
            ok = ext.converged;
            X = X2;
            tb = tail(X);
        }
    }
    if (!ok) {
        throw ConvergenceError("spectral_contour: subdivision limit reached " + detail::describe(p, w) +
                               ", partial estimate error " + std::to_string(qerr));
    }
    // near alpha = 2 with large beta the integrand spikes at u = 1 and cancels almost completely
    if (qerr > std::max(q.abs_tol, detail::kCancellationLimit * std::abs(value))) {
        throw ConvergenceError("spectral_contour: cancellation leaves error " + std::to_string(qerr) + " against value " +
                               std::to_string(value) + " " + detail::describe(p, w));
    }
    const double pre = -std::pow(w, -n) / (std::pow(2.0, 0.5 * (n - 2.0)) * std::pow(std::numbers::pi, 0.5 * (n + 2.0)));
    SpectralValue out;
    out.value = pre * value;
    out.abs_error = std::abs(pre) * (qerr + tb);
    out.truncation_point = X;
    out.tail_bound = std::abs(pre) * tb;
    out.evaluations = evals;
    return out;
}

/// Hankel representation, valid for alpha*beta > (n-1)/2; panels between Bessel zeros with epsilon extrapolation.
inline SpectralValue spectral_hankel(const KernelParams& p, const Frequency& omega, const QuadratureSpec& q = {}) {
    const double n = p.dim();
    const double a = p.alpha();
    const double b = p.beta();
    if (!(a * b > 0.5 * (n - 1.0))) throw PreconditionError("Hankel representation requires alpha*beta > (n-1)/2");
    const double w = detail::frequency_norm(p, omega, "spectral_hankel");
    if (!(w > 0.0)) throw DomainError("spectral_hankel: |omega| must be positive");
    const double nu = 0.5 * (n - 2.0);

    auto f = [&](double x) {
        if (x == 0.0) return nu == -0.5 ? std::sqrt(2.0 / std::numbers::pi) : 0.0;
        return specfun::bessel_j(nu, x) * std::pow(x, 0.5 * n) * cauchy_radial(x / w, a, b);
    };

    const quad::Tolerance panel_tol{0.0, 1e-13, 400};
    quad::WynnEpsilon wynn;
    double partial = 0.0;
    double max_abs = 0.0;
    double qerr = 0.0;
    int evals = 0;
    int settled = 0;
    double left = 0.0;
    // approximate zeros of J_nu: (k + nu/2 - 1/4) pi
    auto zero = [&](int k) { return (k + 0.5 * nu - 0.25) * std::numbers::pi; };
    const double scale_end = 4.0 * std::max(1.0, w);
    for (int k = 1; k <= 5000; ++k) {
        const double right = zero(k);
        std::vector<double> pts = {left};
        for (double s : {1e-2, 1e-1, 1.0, 1e1}) {
            const double c = s * w;
            if (c > left && c < right) pts.push_back(c);
        }
        pts.push_back(right);
        std::sort(pts.begin(), pts.end());
        const quad::Result r = quad::integrate(f, pts, panel_tol);
        partial += r.value;
        qerr += r.abs_error;
        evals += r.evaluations;
        max_abs = std::max(max_abs, std::abs(partial));
        wynn.push(partial);
        left = right;
        if (right < scale_end || k < 8) continue;
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * max_abs;
        const double tol = std::max({q.abs_tol, q.rel_tol * std::abs(wynn.estimate()), floor});
        settled = wynn.change() <= tol ? settled + 1 : 0;
        if (settled >= 3) {
            const double pre = std::pow(w, -n) / std::pow(2.0 * std::numbers::pi, 0.5 * n);
            SpectralValue out;
            out.value = pre * wynn.estimate();
            out.abs_error = pre * (wynn.change() + floor);
            out.truncation_point = right;
            out.evaluations = evals;
            return out;
        }
    }
    throw ConvergenceError("spectral_hankel: extrapolation did not settle " + detail::describe(p, w));
}

/// Closed form at alpha = 2, contour quadrature otherwise (Hankel when the contour cancels); the finite limit at omega = 0 when alpha*beta > n.
inline SpectralValue spectral_density(const KernelParams& p, const Frequency& omega, const QuadratureSpec& q = {}) {
    const double w = detail::frequency_norm(p, omega, "spectral_density");
    if (w == 0.0) {
        if (detail::alpha_beta_margin(p) > 0.0) return {low_freq_leading(p).terms[0].coefficient};
        throw DomainError("spectral density diverges at omega = 0 when alpha*beta <= n " + detail::describe(p, w));
    }
    if (p.alpha() == 2.0) return spectral_closed_alpha2(p, omega);
    try {
        return spectral_contour(p, omega, q);
    } catch (const ConvergenceError&) {
        if (!(p.alpha() * p.beta() > 0.5 * (p.dim() - 1.0))) throw;
        return spectral_hankel(p, omega, q);
    }
}

inline SpectralValue gsgcc_spectrum(const SheetParams& p, const Frequency& omega, const QuadratureSpec& q = {}) {
    detail::require_dim(omega.size(), p.alphas().size(), "gsgcc_spectrum");
    SpectralValue out{1.0};
    double rel = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const SpectralValue s = spectral_density(p.axis(i), Frequency({omega[i]}), q);
        out.value *= s.value;
        if (s.value != 0.0) rel += s.abs_error / std::abs(s.value);
        out.evaluations += s.evaluations;
    }
    out.abs_error = rel * std::abs(out.value);
    return out;
}

/// Per-axis one-dimensional asymptotic factors of the sheet spectrum.
inline std::vector<AsymptoticSeries> gsgcc_high_low_freq(const SheetParams& p, Regime regime) {
    const double pi = std::numbers::pi;
    std::vector<AsymptoticSeries> out;
    for (std::size_t i = 0; i < p.alphas().size(); ++i) {
        const double a = p.alphas()[i];
        const double b = p.betas()[i];
        AsymptoticSeries s;
        s.regime = regime;
        if (regime == Regime::HighFreq) {
            if (a < 2.0) {
                s.terms.push_back({b / pi * specfun::gamma(a + 1.0) * specfun::sin_pi(0.5 * a), -a - 1.0});
            } else {
                s.exponential_prefactor = true;
                s.terms.push_back({1.0 / (std::pow(2.0, b) * specfun::gamma(b)), b - 1.0});
            }
        } else {
            const double ab = a * b;
            double m = ab - 1.0;
            if (std::abs(m) <= 1e-12) m = 0.0;
            if (m < 0.0) {
                s.low_case = LowFreqCase::Power;
                s.terms.push_back({specfun::gamma(1.0 - ab) / pi * specfun::sin_pi(0.5 * ab), ab - 1.0});
            } else if (m == 0.0) {
                s.low_case = LowFreqCase::Log;
                s.log_term_coefficient = 1.0 / pi;
                s.terms.push_back({-(b * (specfun::digamma(b) + specfun::euler_gamma) + specfun::euler_gamma) / pi, 0.0});
            } else {
                s.low_case = LowFreqCase::Constant;
                s.terms.push_back({specfun::gamma(1.0 / a) * specfun::gamma(b - 1.0 / a) / (pi * a * specfun::gamma(b)), 0.0});
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace cauchy
