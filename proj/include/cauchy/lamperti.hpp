#pragma once

// Lamperti transformations on the positive orthant. The first transform
// Y(t) = |t|^H X(ln t) gives an H-self-similar field; the second
// Y(t) = prod t_i^{H_i} X(ln t) gives a multi-self-similar field. X is a
// stationary generalized Cauchy field (isotropic) or sheet.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cauchy/analysis.hpp"
#include "cauchy/error.hpp"
#include "cauchy/kernels.hpp"
#include "cauchy/quadrature.hpp"
#include "cauchy/simulate.hpp"

namespace cauchy {

enum class LampertiMode { FirstSS, SecondMSS };

using PositivePoint = Lag;

class LampertiParams {
public:
    using Base = std::variant<KernelParams, SheetParams>;

    static LampertiParams first(double H, Base base) { return LampertiParams(LampertiMode::FirstSS, {H}, std::move(base)); }
    static LampertiParams second(std::vector<double> H, Base base) {
        return LampertiParams(LampertiMode::SecondMSS, std::move(H), std::move(base));
    }

    LampertiMode mode() const { return mode_; }
    const std::vector<double>& H() const { return H_; }
    const Base& base() const { return base_; }
    bool sheet() const { return std::holds_alternative<SheetParams>(base_); }
    int dim() const { return dim_; }

private:
    LampertiParams(LampertiMode mode, std::vector<double> H, Base base) : mode_(mode), H_(std::move(H)), base_(std::move(base)) {
        dim_ = std::visit([](const auto& p) { return p.dim(); }, base_);
        if (H_.empty()) throw ParameterError("Lamperti transform needs a Hurst index");
        for (double h : H_)
            if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("Hurst indices must be positive");
        if (mode_ == LampertiMode::SecondMSS && static_cast<int>(H_.size()) != dim_)
            throw ParameterError("second transform needs one Hurst index per axis");
        if (mode_ == LampertiMode::FirstSS && H_.size() != 1) throw ParameterError("first transform takes a single Hurst index");
    }

    LampertiMode mode_;
    std::vector<double> H_;
    Base base_;
    int dim_ = 1;
};

namespace detail {

inline void require_positive(const Lag& t, const char* what) {
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!(t[i] > 0.0) || !std::isfinite(t[i])) throw DomainError(std::string(what) + ": coordinates must be positive and finite");
}

inline void check_point(const LampertiParams& L, const Lag& t, const char* what) {
    require_dim(t.size(), static_cast<std::size_t>(L.dim()), what);
    require_positive(t, what);
}

// ln of the weight |t|^H or prod t_i^{H_i}
inline double log_weight(const LampertiParams& L, const Lag& t) {
    if (L.mode() == LampertiMode::FirstSS) return L.H()[0] * std::log(t.norm());
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) s += L.H()[i] * std::log(t[i]);
    return s;
}

// ln w(t + tau) - ln w(t), accurate for small tau
inline double log_weight_step(const LampertiParams& L, const Lag& t, const Lag& tau) {
    if (L.mode() == LampertiMode::FirstSS) {
        double tt = 0.0, cross = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            tt += t[i] * t[i];
            cross += tau[i] * (2.0 * t[i] + tau[i]);
        }
        return 0.5 * L.H()[0] * std::log1p(cross / tt);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) s += L.H()[i] * std::log1p(tau[i] / t[i]);
    return s;
}

// 1 - C at the log-lag ell, without cancellation
inline double stationary_complement(const LampertiParams& L, const Lag& ell) {
    if (const auto* p = std::get_if<KernelParams>(&L.base())) return cauchy_radial_complement(ell.norm(), p->alpha(), p->beta());
    const auto& s = std::get<SheetParams>(L.base());
    double acc = 0.0;
    for (std::size_t i = 0; i < ell.size(); ++i) acc += std::log1p(-cauchy_radial_complement(ell[i], s.alphas()[i], s.betas()[i]));
    return -std::expm1(acc);
}

inline double stationary_cov(const LampertiParams& L, const Lag& ell) {
    if (const auto* p = std::get_if<KernelParams>(&L.base())) return gfgcc_cov(*p, ell);
    return gsgcc_cov(std::get<SheetParams>(L.base()), ell);
}

inline Lag log_lag(const Lag& t, const Lag& s) {
    std::vector<double> d(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) d[i] = std::log(t[i]) - std::log(s[i]);
    return Lag(std::move(d));
}

// ln(1 + tau_i / t_i), the log-lag between t + tau and t
inline Lag log_step(const Lag& t, const Lag& tau) {
    std::vector<double> d(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) d[i] = std::log1p(tau[i] / t[i]);
    return Lag(std::move(d));
}

// variance of w(t+tau) X(ln(t+tau)) - w(t) X(ln t), as (w1 - w0)^2 + 2 w1 w0 (1 - rho)
inline double weighted_increment_var(const LampertiParams& L, const Lag& t, const Lag& tau) {
    const double lw0 = log_weight(L, t);
    const double step = log_weight_step(L, t, tau);
    const double w0 = std::exp(lw0);
    const double w1 = std::exp(lw0 + step);
    const double dw = w0 * std::expm1(step);
    return dw * dw + 2.0 * w1 * w0 * stationary_complement(L, log_step(t, tau));
}

inline void require_base(const LampertiParams& L, LampertiMode mode, bool sheet, const char* what) {
    if (L.mode() != mode || L.sheet() != sheet) throw ParameterError(std::string(what) + ": transform mode or base kernel does not match");
}

}  // namespace detail

/// Covariance of the transformed field, w(t) w(s) C(ln t - ln s), for either mode and base.
inline double lamperti_cov(const LampertiParams& L, const PositivePoint& t, const PositivePoint& s) {
    detail::check_point(L, t, "lamperti_cov");
    detail::check_point(L, s, "lamperti_cov");
    return std::exp(detail::log_weight(L, t) + detail::log_weight(L, s)) * detail::stationary_cov(L, detail::log_lag(t, s));
}

inline double yss_cov(const LampertiParams& L, const PositivePoint& t, const PositivePoint& s) {
    detail::require_base(L, LampertiMode::FirstSS, false, "yss_cov");
    return lamperti_cov(L, t, s);
}

inline double yss_sheet_cov(const LampertiParams& L, const PositivePoint& t, const PositivePoint& s) {
    detail::require_base(L, LampertiMode::FirstSS, true, "yss_sheet_cov");
    return lamperti_cov(L, t, s);
}

inline double ymss_cov(const LampertiParams& L, const PositivePoint& t, const PositivePoint& s) {
    detail::require_base(L, LampertiMode::SecondMSS, false, "ymss_cov");
    return lamperti_cov(L, t, s);
}

inline double ymss_sheet_cov(const LampertiParams& L, const PositivePoint& t, const PositivePoint& s) {
    detail::require_base(L, LampertiMode::SecondMSS, true, "ymss_sheet_cov");
    return lamperti_cov(L, t, s);
}

/// Correlation between the field at t + tau and at t; no dependence on H or the mode.
inline double lamperti_correlation(const LampertiParams& L, const PositivePoint& t, const Lag& tau) {
    detail::check_point(L, t, "lamperti_correlation");
    detail::require_dim(tau.size(), t.size(), "lamperti_correlation");
    for (std::size_t i = 0; i < tau.size(); ++i)
        if (!(tau[i] >= 0.0)) throw DomainError("lamperti_correlation: lag components must be nonnegative");
    return detail::stationary_cov(L, detail::log_step(t, tau));
}

/// prod t_i times the integral over [0, V]^n of C(v) prod e^{v_i}.
inline double lamperti_lrd_witness(const LampertiParams& L, const PositivePoint& t, double V) {
    detail::check_point(L, t, "lamperti_lrd_witness");
    if (!(V > 0.0)) throw DomainError("lamperti_lrd_witness: requires V > 0");
    const int n = L.dim();
    const quad::Tolerance tol{0.0, 1e-10, 4000};
    double prod_t = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i) prod_t *= t[i];

    if (const auto* s = std::get_if<SheetParams>(&L.base())) {
        double v = prod_t;
        for (int i = 0; i < n; ++i) {
            const double a = s->alphas()[i], b = s->betas()[i];
            v *= quad::integrate([&](double x) { return std::exp(x) * cauchy_radial(x, a, b); }, 0.0, V, tol).value;
        }
        return v;
    }
    const auto& p = std::get<KernelParams>(L.base());
    // nested 1-D quadrature over the cube, the last axis innermost
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    auto level = [&](auto& self, int axis) -> double {
        return quad::integrate(
                   [&](double xi) {
                       x[static_cast<std::size_t>(axis)] = xi;
                       if (axis + 1 == n) {
                           double sum = 0.0;
                           for (double c : x) sum += c;
                           return std::exp(sum) * gfgcc_cov(p, Lag(x));
                       }
                       return self(self, axis + 1);
                   },
                   0.0, V, tol)
            .value;
    };
    return prod_t * level(level, 0);
}

struct ExpansionValue {
    double exact = 0.0;
    double leading = 0.0;
};

/// Variance of Y(t + tau) - Y(t) and its small-lag leading term.
inline ExpansionValue increment_var_expansion(const LampertiParams& L, const PositivePoint& t, const Lag& tau) {
    detail::check_point(L, t, "increment_var_expansion");
    detail::require_dim(tau.size(), t.size(), "increment_var_expansion");
    detail::require_positive(t + tau, "increment_var_expansion");
    ExpansionValue r;
    r.exact = detail::weighted_increment_var(L, t, tau);
    const double w2 = std::exp(2.0 * detail::log_weight(L, t));
    if (const auto* p = std::get_if<KernelParams>(&L.base())) {
        double q = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) q += (tau[i] / t[i]) * (tau[i] / t[i]);
        r.leading = 2.0 * p->beta() * w2 * std::pow(q, 0.5 * p->alpha());
    } else {
        const auto& s = std::get<SheetParams>(L.base());
        double sum = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) sum += s.betas()[i] * std::pow(std::abs(tau[i] / t[i]), s.alphas()[i]);
        r.leading = 2.0 * w2 * sum;
    }
    return r;
}

struct TotalIncrementValue {
    double exact = 0.0;
    double leading = 0.0;
    /// exponent of the relative remainder, min_i {2 - alpha_i, alpha_i, 1}
    double delta = 0.0;
};

/// Variance of the total increment of the multi-self-similar sheet over the box [t, t + tau].
inline TotalIncrementValue total_increment_var_mss_sheet(const LampertiParams& L, const PositivePoint& t, const Lag& tau) {
    detail::require_base(L, LampertiMode::SecondMSS, true, "total_increment_var_mss_sheet");
    detail::check_point(L, t, "total_increment_var_mss_sheet");
    detail::require_dim(tau.size(), t.size(), "total_increment_var_mss_sheet");
    detail::require_positive(t + tau, "total_increment_var_mss_sheet");
    const auto& s = std::get<SheetParams>(L.base());
    TotalIncrementValue r{1.0, 1.0, 1.0};
    // the sheet factorizes, so the signed vertex sum is a product of 1-D increment variances
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto axis = LampertiParams::second({L.H()[i]}, SheetParams({s.alphas()[i]}, {s.betas()[i]}));
        const double a = s.alphas()[i];
        r.exact *= detail::weighted_increment_var(axis, Lag{t[i]}, Lag{tau[i]});
        r.leading *= 2.0 * s.betas()[i] * std::pow(t[i], 2.0 * L.H()[i]) * std::pow(std::abs(tau[i] / t[i]), a);
        r.delta = std::min({r.delta, 2.0 - a, a});
    }
    return r;
}

/// Covariance of the tangent field at t, evaluated at the rescaled lags u_i / t_i.
inline double lamperti_tangent_cov(const LampertiParams& L, const PositivePoint& t, const Lag& u, const Lag& v) {
    detail::check_point(L, t, "lamperti_tangent_cov");
    detail::require_dim(u.size(), t.size(), "lamperti_tangent_cov");
    detail::require_dim(v.size(), t.size(), "lamperti_tangent_cov");
    std::vector<double> ur(t.size()), vr(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        ur[i] = u[i] / t[i];
        vr[i] = v[i] / t[i];
    }
    const double w2 = std::exp(2.0 * detail::log_weight(L, t));
    if (const auto* p = std::get_if<KernelParams>(&L.base())) return w2 * tangent_cov_gfgcc(*p, Lag(ur), Lag(vr));
    return w2 * tangent_cov_gsgcc(std::get<SheetParams>(L.base()), Lag(ur), Lag(vr));
}

/// Weight of the first transform, |t|^H.
inline double first_weight(const PositivePoint& t, double H) {
    detail::require_positive(t, "first_weight");
    return std::pow(t.norm(), H);
}

/// Weight of the second transform, prod t_i^{H_i}.
inline double second_weight(const PositivePoint& t, const std::vector<double>& H) {
    detail::require_positive(t, "second_weight");
    detail::require_dim(H.size(), t.size(), "second_weight");
    double w = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i) w *= std::pow(t[i], H[i]);
    return w;
}

namespace detail {

// node coordinates x = log_origin + index * spacing of a stationary grid
template <class F>
FieldGrid reweight(const FieldGrid& f, const std::vector<double>& log_origin, F log_factor, const std::string& tag) {
    const GridSpec& g = f.grid();
    if (log_origin.size() != static_cast<std::size_t>(g.dim)) throw DimensionMismatch("log origin does not match grid dimension");
    std::vector<double> out(f.values().size());
    std::vector<double> x(static_cast<std::size_t>(g.dim));
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (g.dim == 1) {
            x[0] = log_origin[0] + static_cast<double>(k) * g.step(0);
        } else {
            x[0] = log_origin[0] + static_cast<double>(k / g.points) * g.step(0);
            x[1] = log_origin[1] + static_cast<double>(k % g.points) * g.step(1);
        }
        out[k] = f[k] * std::exp(log_factor(x));
    }
    return FieldGrid(g, std::move(out), tag);
}

inline double log_first_weight(const std::vector<double>& x, double H) {
    // ln |e^x| computed as max + log-sum-exp
    double m = x[0];
    for (double c : x) m = std::max(m, c);
    double s = 0.0;
    for (double c : x) s += std::exp(2.0 * (c - m));
    return H * (m + 0.5 * std::log(s));
}

inline double log_second_weight(const std::vector<double>& x, const std::vector<double>& H) {
    require_dim(H.size(), x.size(), "second transform");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += H[i] * x[i];
    return s;
}

inline std::string transform_tag(const char* name, const std::vector<double>& H, const std::string& base) {
    std::ostringstream os;
    os << name << "(H=";
    for (std::size_t i = 0; i < H.size(); ++i) os << (i ? "," : "") << H[i];
    os << ")|" << base;
    return os.str();
}

}  // namespace detail

/// Samples of Y at t = exp(x) from samples of the stationary field X on the grid x = log_origin + k h.
inline FieldGrid lamperti_first(const FieldGrid& x, double H, const std::vector<double>& log_origin) {
    return detail::reweight(x, log_origin, [&](const std::vector<double>& c) { return detail::log_first_weight(c, H); },
                            detail::transform_tag("first", {H}, x.kernel_tag()));
}

inline FieldGrid inverse_first(const FieldGrid& y, double H, const std::vector<double>& log_origin) {
    return detail::reweight(y, log_origin, [&](const std::vector<double>& c) { return -detail::log_first_weight(c, H); }, y.kernel_tag());
}

inline FieldGrid lamperti_second(const FieldGrid& x, const std::vector<double>& H, const std::vector<double>& log_origin) {
    return detail::reweight(x, log_origin, [&](const std::vector<double>& c) { return detail::log_second_weight(c, H); },
                            detail::transform_tag("second", H, x.kernel_tag()));
}

inline FieldGrid inverse_second(const FieldGrid& y, const std::vector<double>& H, const std::vector<double>& log_origin) {
    return detail::reweight(y, log_origin, [&](const std::vector<double>& c) { return -detail::log_second_weight(c, H); }, y.kernel_tag());
}

/// Covariance of Z(t) = (sum e^{2 t_i})^{-H/2} B_H(e^t), the first inverse of a Levy fBf.
inline double inverse_first_levy_cov(double H, const Lag& t, const Lag& s) {
    detail::require_dim(s.size(), t.size(), "inverse_first_levy_cov");
    std::vector<double> et(t.size()), es(s.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        et[i] = std::exp(t[i]);
        es[i] = std::exp(s[i]);
    }
    const double w = std::exp(-detail::log_first_weight(t.components(), H) - detail::log_first_weight(s.components(), H));
    return w * levy_fbf_cov(H, Lag(et), Lag(es));
}

struct ScalingCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_error = 0.0;
};

/// Compares cov(c t, c s) with the scaling law; c holds one factor (first) or one per axis (second).
inline ScalingCheck scaling_check(const LampertiParams& L, const PositivePoint& t, const PositivePoint& s, const std::vector<double>& c) {
    detail::require_positive(Lag(c), "scaling_check");
    double factor = 1.0;
    std::vector<double> ct(t.size()), cs(s.size());
    if (L.mode() == LampertiMode::FirstSS) {
        if (c.size() != 1) throw DimensionMismatch("first transform scaling takes a single factor");
        factor = std::pow(c[0], 2.0 * L.H()[0]);
        for (std::size_t i = 0; i < t.size(); ++i) {
            ct[i] = c[0] * t[i];
            cs[i] = c[0] * s[i];
        }
    } else {
        detail::require_dim(c.size(), t.size(), "scaling_check");
        for (std::size_t i = 0; i < t.size(); ++i) {
            factor *= std::pow(c[i], 2.0 * L.H()[i]);
            ct[i] = c[i] * t[i];
            cs[i] = c[i] * s[i];
        }
    }
    ScalingCheck r;
    r.lhs = lamperti_cov(L, Lag(ct), Lag(cs));
    r.rhs = factor * lamperti_cov(L, t, s);
    r.rel_error = r.rhs == 0.0 ? std::abs(r.lhs) : std::abs(r.lhs - r.rhs) / std::abs(r.rhs);
    return r;
}

}  // namespace cauchy
