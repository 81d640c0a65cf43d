#pragma once

// Covariance kernels: generalized Cauchy (isotropic and sheet), powered
// exponential, Levy fractional Brownian field and fractional Brownian sheet.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cauchy/error.hpp"

namespace cauchy {

/// A point or lag in R^n.
class Lag {
public:
    Lag() = default;
    Lag(std::initializer_list<double> c) : c_(c) {}
    explicit Lag(std::vector<double> c) : c_(std::move(c)) {}

    /// One-component lag whose norm is |r|.
    static Lag radial(double r) { return Lag({r}); }

    std::size_t size() const { return c_.size(); }
    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }
    const std::vector<double>& components() const { return c_; }

    double norm() const {
        double scale = 0.0;
        for (double x : c_) scale = std::max(scale, std::abs(x));
        if (scale == 0.0 || !std::isfinite(scale)) return scale;
        double sum = 0.0;
        for (double x : c_) {
            const double y = x / scale;
            sum += y * y;
        }
        return scale * std::sqrt(sum);
    }

    friend Lag operator-(const Lag& a, const Lag& b) {
        if (a.size() != b.size()) throw DimensionMismatch("lag dimensions differ");
        std::vector<double> out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
        return Lag(std::move(out));
    }
    friend Lag operator+(const Lag& a, const Lag& b) {
        if (a.size() != b.size()) throw DimensionMismatch("lag dimensions differ");
        std::vector<double> out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
        return Lag(std::move(out));
    }
    friend Lag operator*(double s, const Lag& a) {
        std::vector<double> out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
        return Lag(std::move(out));
    }

private:
    std::vector<double> c_;
};

class KernelParams {
public:
    KernelParams(double alpha, double beta, int dim = 1) : alpha_(alpha), beta_(beta), dim_(dim) {
        if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("alpha must lie in (0, 2], got " + std::to_string(alpha));
        if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be positive, got " + std::to_string(beta));
        if (dim < 1) throw ParameterError("dimension must be at least 1");
    }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    int dim() const { return dim_; }

private:
    double alpha_;
    double beta_;
    int dim_;
};

class SheetParams {
public:
    SheetParams(std::vector<double> alphas, std::vector<double> betas) : alphas_(std::move(alphas)), betas_(std::move(betas)) {
        if (alphas_.empty()) throw ParameterError("sheet needs at least one axis");
        if (alphas_.size() != betas_.size()) throw ParameterError("alphas and betas differ in length");
        for (std::size_t i = 0; i < alphas_.size(); ++i) KernelParams(alphas_[i], betas_[i], 1);
        min_alpha_ = *std::min_element(alphas_.begin(), alphas_.end());
        for (double a : alphas_) multiplicity_ += is_min_axis_value(a) ? 1 : 0;
    }

    int dim() const { return static_cast<int>(alphas_.size()); }
    const std::vector<double>& alphas() const { return alphas_; }
    const std::vector<double>& betas() const { return betas_; }
    double min_alpha() const { return min_alpha_; }
    /// number of axes attaining the minimum exponent
    int min_alpha_multiplicity() const { return multiplicity_; }
    bool is_min_axis(std::size_t i) const { return is_min_axis_value(alphas_[i]); }
    KernelParams axis(std::size_t i) const { return KernelParams(alphas_[i], betas_[i], 1); }

private:
    bool is_min_axis_value(double a) const { return a - min_alpha_ <= 1e-12 * min_alpha_; }

    std::vector<double> alphas_;
    std::vector<double> betas_;
    double min_alpha_ = 0.0;
    int multiplicity_ = 0;
};

namespace detail {

inline void require_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        std::ostringstream os;
        os << what << ": expected dimension " << want << ", got " << got;
        throw DimensionMismatch(os.str());
    }
}

// ln(1 + r^alpha), safe for huge r
inline double log1p_pow(double r, double alpha) {
    const double t = std::pow(r, alpha);
    if (std::isinf(t)) return alpha * std::log(r);
    return std::log1p(t);
}

}  // namespace detail

/// (1 + r^alpha)^(-beta) for a scalar distance r >= 0.
inline double cauchy_radial(double r, double alpha, double beta) {
    if (r == 0.0) return 1.0;
    return std::exp(-beta * detail::log1p_pow(std::abs(r), alpha));
}

/// 1 - (1 + r^alpha)^(-beta) without cancellation at small r.
inline double cauchy_radial_complement(double r, double alpha, double beta) {
    if (r == 0.0) return 0.0;
    return -std::expm1(-beta * detail::log1p_pow(std::abs(r), alpha));
}

inline double gfgcc_cov(const KernelParams& p, const Lag& tau) {
    return cauchy_radial(tau.norm(), p.alpha(), p.beta());
}

inline double gsgcc_cov(const SheetParams& p, const Lag& tau) {
    detail::require_dim(tau.size(), p.alphas().size(), "gsgcc_cov");
    double v = 1.0;
    for (std::size_t i = 0; i < tau.size(); ++i) v *= cauchy_radial(tau[i], p.alphas()[i], p.betas()[i]);
    return v;
}

inline double powered_exp_cov(const KernelParams& p, const Lag& tau) {
    const double r = tau.norm();
    if (r == 0.0) return 1.0;
    return std::exp(-p.beta() * std::pow(r, p.alpha()));
}

namespace detail {

// 1/2 (|u|^{2H} + |v|^{2H} - |u-v|^{2H}) with H allowed up to 1
inline double levy_unchecked(double H, const Lag& u, const Lag& v) {
    const double e = 2.0 * H;
    return 0.5 * (std::pow(u.norm(), e) + std::pow(v.norm(), e) - std::pow((u - v).norm(), e));
}

}  // namespace detail

inline double levy_fbf_cov(double H, const Lag& u, const Lag& v) {
    if (!(H > 0.0 && H < 1.0)) throw ParameterError("Hurst index must lie in (0, 1)");
    detail::require_dim(v.size(), u.size(), "levy_fbf_cov");
    return detail::levy_unchecked(H, u, v);
}

inline double fbs_cov(const std::vector<double>& H, const Lag& t, const Lag& s) {
    detail::require_dim(t.size(), H.size(), "fbs_cov");
    detail::require_dim(s.size(), H.size(), "fbs_cov");
    double v = 1.0;
    for (std::size_t i = 0; i < H.size(); ++i) {
        if (!(H[i] > 0.0 && H[i] < 1.0)) throw ParameterError("Hurst indices must lie in (0, 1)");
        const double e = 2.0 * H[i];
        v *= 0.5 * (std::pow(std::abs(t[i]), e) + std::pow(std::abs(s[i]), e) - std::pow(std::abs(t[i] - s[i]), e));
    }
    return v;
}

/// C(tau) - (1 - beta |tau|^alpha) for |tau| < 1.
inline double local_expansion_error(const KernelParams& p, const Lag& tau) {
    const double r = tau.norm();
    if (!(r < 1.0)) throw DomainError("local_expansion_error: requires |tau| < 1");
    if (r == 0.0) return 0.0;
    return p.beta() * std::pow(r, p.alpha()) - cauchy_radial_complement(r, p.alpha(), p.beta());
}

/// Covariance of the increments X(u) - X(0) and X(v) - X(0).
inline double gfgcc_increment_cov(const KernelParams& p, const Lag& u, const Lag& v) {
    const double a = p.alpha();
    const double b = p.beta();
    return cauchy_radial_complement(u.norm(), a, b) + cauchy_radial_complement(v.norm(), a, b) -
           cauchy_radial_complement((u - v).norm(), a, b);
}

/// Covariance of the total (rectangular) increments of the sheet over [0,u] and [0,v].
inline double gsgcc_increment_cov(const SheetParams& p, const Lag& u, const Lag& v) {
    detail::require_dim(u.size(), p.alphas().size(), "gsgcc_increment_cov");
    detail::require_dim(v.size(), p.alphas().size(), "gsgcc_increment_cov");
    double prod = 1.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double a = p.alphas()[i];
        const double b = p.betas()[i];
        prod *= cauchy_radial_complement(u[i], a, b) + cauchy_radial_complement(v[i], a, b) -
                cauchy_radial_complement(u[i] - v[i], a, b);
    }
    return prod;
}

}  // namespace cauchy
