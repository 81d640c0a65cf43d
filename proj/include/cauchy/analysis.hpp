#pragma once

// Sample-path analysis: dependence classification, fractal dimension,
// variogram regression, tangent-field covariances and local self-similarity.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "cauchy/error.hpp"
#include "cauchy/kernels.hpp"
#include "cauchy/quadrature.hpp"
#include "cauchy/simulate.hpp"
#include "cauchy/specfun.hpp"
#include "cauchy/spectral.hpp"

namespace cauchy {

enum class Dependence { LRD, SRD };

inline const char* to_string(Dependence d) { return d == Dependence::LRD ? "LRD" : "SRD"; }

struct DependenceVerdict {
    Dependence verdict = Dependence::LRD;
    /// alpha*beta - n, or min_i alpha_i*beta_i - 1 for sheets; LRD iff margin <= 0
    double margin = 0.0;
};

inline DependenceVerdict classify_dependence(const KernelParams& p) {
    const double m = p.alpha() * p.beta() - p.dim();
    return {m <= 0.0 ? Dependence::LRD : Dependence::SRD, m};
}

inline DependenceVerdict classify_dependence(const SheetParams& p) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.alphas().size(); ++i) m = std::min(m, p.alphas()[i] * p.betas()[i] - 1.0);
    return {m <= 0.0 ? Dependence::LRD : Dependence::SRD, m};
}

struct WitnessResult {
    /// integral of the covariance over the positive orthant, truncated at radius R
    double partial = 0.0;
    /// the finite value of the full integral, present for SRD parameters
    std::optional<double> limit;
};

namespace detail {

// area of the unit sphere in R^n restricted to the positive orthant
inline double orthant_sphere_area(int n) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / (std::ldexp(1.0, n) * specfun::gamma(0.5 * n));
}

// ln(1 + e^x) without overflow
inline double log1p_exp(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace detail

/// Partial integral of (1 + |tau|^alpha)^(-beta) over the positive orthant up to radius R.
inline WitnessResult lrd_integral_witness(const KernelParams& p, double R) {
    if (!(R > 1.0)) throw DomainError("lrd_integral_witness: requires R > 1");
    const double a = p.alpha();
    const double b = p.beta();
    const int n = p.dim();
    const quad::Tolerance tol{0.0, 1e-13, 20000};

    auto inner = [&](double r) { return std::pow(r, n - 1) * cauchy_radial(r, a, b); };
    double radial = quad::integrate(inner, 0.0, 1.0, tol).value;

    // r = e^s on [1, R], panels one decade wide
    auto outer = [&](double s) { return std::exp(n * s - b * detail::log1p_exp(a * s)); };
    const double top = std::log(R);
    std::vector<double> pts{0.0};
    for (double s = std::numbers::ln10; s < top; s += std::numbers::ln10) pts.push_back(s);
    pts.push_back(top);
    radial += quad::integrate(outer, std::span<const double>(pts), tol).value;

    WitnessResult w;
    w.partial = detail::orthant_sphere_area(n) * radial;
    if (a * b > n) {
        w.limit = std::pow(std::numbers::pi, 0.5 * n) / (std::ldexp(1.0, n - 1) * a * specfun::gamma(0.5 * n)) *
                  specfun::beta_function(n / a, b - n / a);
    }
    return w;
}

/// Divergence of the covariance integral judged from growth of the partial integral.
inline Dependence witness_verdict(const KernelParams& p, double r_low = 1e8, double r_high = 1e16) {
    const double ratio = lrd_integral_witness(p, r_high).partial / lrd_integral_witness(p, r_low).partial;
    return ratio > 1.5 ? Dependence::LRD : Dependence::SRD;
}

/// Divergence of the spectral density at the origin judged from S(1e-8) / S(1e-4).
inline Dependence spectral_verdict(const KernelParams& p) {
    auto at = [&](double w) {
        std::vector<double> c(static_cast<std::size_t>(p.dim()), 0.0);
        c[0] = w;
        return spectral_density(p, Lag(c)).value;
    };
    return at(1e-8) / at(1e-4) > 1.5 ? Dependence::LRD : Dependence::SRD;
}

inline constexpr const char* kSheetDimensionStatus = "conjectured (supported by two-sided variance bounds)";

/// Fractal dimension of the graph, n + 1 - alpha/2.
inline double predict_dimension(const KernelParams& p) { return p.dim() + 1.0 - 0.5 * p.alpha(); }

/// Graph dimension of the sheet, n + 1 - min alpha / 2; see kSheetDimensionStatus.
inline double predict_dimension(const SheetParams& p) { return p.dim() + 1.0 - 0.5 * p.min_alpha(); }

struct VariogramFit {
    double alpha_hat = 0.0;
    /// topothesy
    double beta_hat = 0.0;
    double dimension_hat = 0.0;
    std::vector<double> lags_used;
    double r_squared = 0.0;
    /// regression slope left (0, 2] and alpha_hat was clamped
    bool clamped = false;
    /// grid axis the fit was taken along
    int axis = 0;
};

namespace detail {

inline constexpr double kMinAlphaHat = 1e-6;

inline VariogramFit ols_fit(const std::vector<double>& lags, const std::vector<double>& values, int dim) {
    std::vector<double> x, y, used;
    for (std::size_t k = 0; k < lags.size(); ++k) {
        if (lags[k] > 0.0 && values[k] > 0.0 && std::isfinite(values[k])) {
            x.push_back(std::log(lags[k]));
            y.push_back(std::log(values[k]));
            used.push_back(lags[k]);
        }
    }
    if (x.size() < 3) throw InsufficientData("variogram fit needs at least 3 usable lags, got " + std::to_string(x.size()));
    const double m = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    VariogramFit fit;
    fit.alpha_hat = std::clamp(slope, kMinAlphaHat, 2.0);
    fit.clamped = fit.alpha_hat != slope;
    fit.beta_hat = 0.5 * std::exp(intercept);
    fit.dimension_hat = dim + 1.0 - 0.5 * fit.alpha_hat;
    fit.lags_used = std::move(used);
    fit.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return fit;
}

// mean squared increment at k steps along one axis, non-periodic
inline double mean_sq_increment(const FieldGrid& f, int axis, std::size_t k) {
    const std::size_t n = f.grid().points;
    double sum = 0.0;
    std::size_t count = 0;
    if (f.grid().dim == 1) {
        for (std::size_t i = 0; i + k < n; ++i) {
            const double d = f[i + k] - f[i];
            sum += d * d;
        }
        count = n - k;
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (axis == 0 ? i + k >= n : j + k >= n) continue;
                const double d = axis == 0 ? f.at(i + k, j) - f.at(i, j) : f.at(i, j + k) - f.at(i, j);
                sum += d * d;
                ++count;
            }
    }
    return sum / static_cast<double>(count);
}

}  // namespace detail

/// OLS of log variogram on log lag, for given lag and variogram values in dimension dim.
inline VariogramFit fit_variogram(const std::vector<double>& lags, const std::vector<double>& values, int dim = 1) {
    if (lags.size() != values.size()) throw DimensionMismatch("fit_variogram: lags and values differ in length");
    return detail::ols_fit(lags, values, dim);
}

/// Variogram regression pooled over realizations of one grid: squared increments at
/// k = 1..max_lag steps are averaged over all fields before the log-log fit. On 2-D
/// grids each axis is fitted and the rougher axis (smaller alpha_hat) is reported,
/// since it sets the graph dimension.
inline VariogramFit estimate_variogram(std::span<const FieldGrid> fields, int max_lag = 8) {
    if (fields.empty()) throw InsufficientData("estimate_variogram: no fields");
    const GridSpec& g = fields.front().grid();
    for (const auto& f : fields) {
        if (f.grid().dim != g.dim || f.grid().points != g.points) throw DimensionMismatch("estimate_variogram: grids differ");
    }
    if (max_lag < 1 || static_cast<std::size_t>(max_lag) > g.points / 4)
        throw PreconditionError("estimate_variogram: max_lag must lie in [1, points/4]");
    std::optional<VariogramFit> best;
    for (int axis = 0; axis < g.dim; ++axis) {
        std::vector<double> lags, values;
        for (int k = 1; k <= max_lag; ++k) {
            double v = 0.0;
            for (const auto& f : fields) v += detail::mean_sq_increment(f, axis, static_cast<std::size_t>(k));
            lags.push_back(k * g.step(axis));
            values.push_back(v / static_cast<double>(fields.size()));
        }
        VariogramFit fit = detail::ols_fit(lags, values, g.dim);
        fit.axis = axis;
        if (!best || fit.alpha_hat < best->alpha_hat) best = std::move(fit);
    }
    return *best;
}

inline VariogramFit estimate_variogram(const FieldGrid& f, int max_lag = 8) {
    return estimate_variogram(std::span<const FieldGrid>(&f, 1), max_lag);
}

/// Covariance of the tangent field, 2 beta times the Levy fBf covariance of index alpha/2.
inline double tangent_cov_gfgcc(const KernelParams& p, const Lag& u, const Lag& v) {
    detail::require_dim(u.size(), static_cast<std::size_t>(p.dim()), "tangent_cov_gfgcc");
    detail::require_dim(v.size(), static_cast<std::size_t>(p.dim()), "tangent_cov_gfgcc");
    return 2.0 * p.beta() * detail::levy_unchecked(0.5 * p.alpha(), u, v);
}

/// Covariance of the sheet's tangent field: only axes attaining min alpha contribute.
inline double tangent_cov_gsgcc(const SheetParams& p, const Lag& u, const Lag& v) {
    detail::require_dim(u.size(), p.alphas().size(), "tangent_cov_gsgcc");
    detail::require_dim(v.size(), p.alphas().size(), "tangent_cov_gsgcc");
    const double a = p.min_alpha();
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!p.is_min_axis(i)) continue;
        sum += p.betas()[i] * (std::pow(std::abs(u[i]), a) + std::pow(std::abs(v[i]), a) - std::pow(std::abs(u[i] - v[i]), a));
    }
    return sum;
}

/// Variance of the total increment of a stationary sheet over the box [t, t + tau].
inline double total_increment_var(const SheetParams& p, const Lag& t, const Lag& tau) {
    detail::require_dim(t.size(), p.alphas().size(), "total_increment_var");
    detail::require_dim(tau.size(), p.alphas().size(), "total_increment_var");
    double prod = 1.0;
    for (std::size_t i = 0; i < tau.size(); ++i)
        prod *= 2.0 * cauchy_radial_complement(tau[i], p.alphas()[i], p.betas()[i]);
    return prod;
}

/// (1 - C(tau)) / (beta |tau|^alpha); tends to 1 as tau -> 0.
inline double lss_ratio(const KernelParams& p, const Lag& tau) {
    const double r = tau.norm();
    if (!(r > 0.0 && r < 1.0)) throw DomainError("lss_ratio: requires 0 < |tau| < 1");
    return cauchy_radial_complement(r, p.alpha(), p.beta()) / (p.beta() * std::pow(r, p.alpha()));
}

inline nlohmann::ordered_json to_json(const DependenceVerdict& d) {
    nlohmann::ordered_json j;
    j["verdict"] = to_string(d.verdict);
    j["margin"] = d.margin;
    return j;
}

inline nlohmann::ordered_json report_json(const DependenceVerdict& d, const VariogramFit& f) {
    nlohmann::ordered_json j = to_json(d);
    j["alpha_hat"] = f.alpha_hat;
    j["beta_hat"] = f.beta_hat;
    j["dimension_hat"] = f.dimension_hat;
    j["r_squared"] = f.r_squared;
    j["lags_used"] = f.lags_used;
    return j;
}

}  // namespace cauchy
