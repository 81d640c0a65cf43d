#pragma once

// Special functions: gamma family, digamma, Bessel J and K of real order,
// and the complex power used by the contour spectral integral.

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "cauchy/error.hpp"

namespace cauchy::specfun {

using ComplexValue = std::complex<double>;

inline constexpr double euler_gamma = std::numbers::egamma;

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
inline constexpr int kMaxIter = 100000;

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Taylor coefficients of 1/Gamma(1+z) about z = 0.
inline constexpr std::array<double, 25> kRecipGamma = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
};

// gampl = 1/Gamma(1+mu), gammi = 1/Gamma(1-mu),
// gam1 = (gammi - gampl)/(2 mu), gam2 = (gammi + gampl)/2, for |mu| <= 1/2.
struct TemmeGammas {
    double gam1;
    double gam2;
    double gampl;
    double gammi;
};

inline TemmeGammas temme_gammas(double mu) {
    const double mu2 = mu * mu;
    double even = 0.0;
    double odd = 0.0;
    for (int k = static_cast<int>(kRecipGamma.size()) - 1; k >= 0; --k) {
        if (k % 2 == 0) {
            even = even * mu2 + kRecipGamma[static_cast<std::size_t>(k)];
        } else {
            odd = odd * mu2 + kRecipGamma[static_cast<std::size_t>(k)];
        }
    }
    // even(mu) = sum b_{2k} mu^{2k}, odd(mu) = sum b_{2k+1} mu^{2k}
    TemmeGammas g{};
    g.gam1 = -odd;
    g.gam2 = even;
    g.gampl = even + mu * odd;
    g.gammi = even - mu * odd;
    return g;
}

// Stirling series for ln Gamma(x), x >= 10.
inline double log_gamma_stirling(double x) {
    constexpr double half_log_two_pi = 0.91893853320467274178;
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv * (1.0 / 12.0 -
               inv2 * (1.0 / 360.0 -
                       inv2 * (1.0 / 1260.0 -
                               inv2 * (1.0 / 1680.0 -
                                       inv2 * (1.0 / 1188.0 - inv2 * (691.0 / 360360.0 - inv2 / 156.0))))));
    return (x - 0.5) * std::log(x) - x + half_log_two_pi + series;
}

}  // namespace detail

/// sin(pi x) with exact zeros at the integers.
inline double sin_pi(double x) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    double r = std::fmod(x, 2.0);
    if (r < 0.0) r += 2.0;
    if (r == 0.0 || r == 1.0) return 0.0;
    if (r == 0.5) return 1.0;
    if (r == 1.5) return -1.0;
    if (r > 1.0) return -std::sin(std::numbers::pi * (r - 1.0));
    return std::sin(std::numbers::pi * r);
}

/// cos(pi x) with exact zeros at the half integers.
inline double cos_pi(double x) { return sin_pi(x + 0.5); }

inline double gamma(double x) {
    if (std::isnan(x)) throw DomainError("gamma: NaN argument");
    if (detail::is_nonpositive_integer(x)) throw PoleError("gamma: pole at " + std::to_string(x));
    const double g = std::tgamma(x);
    if (!std::isfinite(g)) throw OverflowError("gamma: overflow at " + std::to_string(x));
    return g;
}

/// ln |Gamma(x)|.
inline double log_gamma(double x) {
    if (std::isnan(x)) throw DomainError("log_gamma: NaN argument");
    if (detail::is_nonpositive_integer(x)) throw PoleError("log_gamma: pole at " + std::to_string(x));
    if (x >= 10.0) return detail::log_gamma_stirling(x);
    if (x > 0.0) {
        // shift up to the Stirling range
        double acc = 1.0;
        double y = x;
        while (y < 10.0) {
            acc *= y;
            y += 1.0;
        }
        return detail::log_gamma_stirling(y) - std::log(acc);
    }
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::log(std::numbers::pi / std::abs(sin_pi(x))) - log_gamma(1.0 - x);
}

inline double beta_function(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_function: arguments must be positive");
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

inline double digamma(double x) {
    if (std::isnan(x)) throw DomainError("digamma: NaN argument");
    if (detail::is_nonpositive_integer(x)) throw PoleError("digamma: pole at " + std::to_string(x));
    if (x < 0.0) {
        // psi(1-x) - psi(x) = pi cot(pi x)
        return digamma(1.0 - x) - std::numbers::pi * cos_pi(x) / sin_pi(x);
    }
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 -
                      inv2 * (1.0 / 120.0 -
                              inv2 * (1.0 / 252.0 -
                                      inv2 * (1.0 / 240.0 -
                                              inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    return result;
}

namespace detail {

struct JY {
    double j;
    double y;
};

// J_nu(x) and Y_nu(x) for nu >= 0, x > 0 (Temme series below x = 2, Steed's method above).
inline JY bessel_jy(double nu, double x) {
    constexpr double pi = std::numbers::pi;
    constexpr double xmin = 2.0;
    const int nl = x < xmin ? static_cast<int>(nu + 0.5) : std::max(0, static_cast<int>(nu - x + 1.5));
    const double xmu = nu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / pi;

    // CF1: J'_nu / J_nu
    int isign = 1;
    double h = nu * xi;
    if (h < kTiny) h = kTiny;
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    int i = 0;
    for (; i < kMaxIter; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b - 1.0 / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) <= kEps) break;
    }
    if (i >= kMaxIter) throw ConvergenceError("bessel_j: continued fraction CF1 did not converge");

    double rjl = isign * kTiny;
    double rjpl = h * rjl;
    const double rjl1 = rjl;
    const double rjp1 = rjpl;
    double fact = nu * xi;
    for (int l = nl - 1; l >= 0; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = kEps;
    const double f = rjpl / rjl;

    double rjmu = 0.0;
    double rymu = 0.0;
    double rymup = 0.0;
    double ry1 = 0.0;
    if (x < xmin) {
        const double x2 = 0.5 * x;
        const double pimu = pi * xmu;
        fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
        d = -std::log(x2);
        double e = xmu * d;
        const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
        const TemmeGammas g = temme_gammas(xmu);
        double ff = 2.0 / pi * fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
        e = std::exp(e);
        double p = e / (g.gampl * pi);
        double q = 1.0 / (e * pi * g.gammi);
        const double pimu2 = 0.5 * pimu;
        const double fact3 = std::abs(pimu2) < kEps ? 1.0 : std::sin(pimu2) / pimu2;
        const double r = pi * pimu2 * fact3 * fact3;
        c = 1.0;
        d = -x2 * x2;
        double sum = ff + r * q;
        double sum1 = p;
        for (i = 1; i <= kMaxIter; ++i) {
            ff = (i * ff + p + q) / (i * i - xmu2);
            c *= d / i;
            p /= i - xmu;
            q /= i + xmu;
            const double del = c * (ff + r * q);
            sum += del;
            const double del1 = c * p - i * del;
            sum1 += del1;
            if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) break;
        }
        if (i > kMaxIter) throw ConvergenceError("bessel_j: Temme series did not converge");
        rymu = -sum;
        ry1 = -sum1 * xi2;
        rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + i q
        double a = 0.25 - xmu2;
        double p = -0.5 * xi;
        double q = 1.0;
        const double br = 2.0 * x;
        double bi = 2.0;
        fact = a * xi / (p * p + q * q);
        double cr = br + q * fact;
        double ci = bi + p * fact;
        double den = br * br + bi * bi;
        double dr = br / den;
        double di = -bi / den;
        double dlr = cr * dr - ci * di;
        double dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for (i = 1; i < kMaxIter; ++i) {
            a += 2 * i;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::abs(dr) + std::abs(di) < kTiny) dr = kTiny;
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if (std::abs(cr) + std::abs(ci) < kTiny) cr = kTiny;
            den = dr * dr + di * di;
            dr /= den;
            di = -di / den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::abs(dlr - 1.0) + std::abs(dli) <= kEps) break;
        }
        if (i >= kMaxIter) throw ConvergenceError("bessel_j: continued fraction CF2 did not converge");
        const double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    fact = rjmu / rjl;
    const double rj = rjl1 * fact;
    (void)rjp1;
    for (i = 1; i <= nl; ++i) {
        const double rytemp = (xmu + i) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    return {rj, rymu};
}

// Hankel's large-argument expansion; returns {J, Y}.
inline JY bessel_jy_asymptotic(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double last = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        const double mag = std::abs(term);
        if (mag > last && k > 2) break;
        last = mag;
        // k = 1,2,3,... contributes +Q, -P, -Q, +P, ...
        switch (k % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            default: p += term; break;
        }
        if (mag < kEps * 1e-2 * (std::abs(p) + std::abs(q))) break;
    }
    // chi = x - (nu/2 + 1/4) pi, reduced so large x keeps its accuracy
    const double phase = 0.5 * nu + 0.25;
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double sp = sin_pi(phase);
    const double cp = cos_pi(phase);
    const double cos_chi = c * cp + s * sp;
    const double sin_chi = s * cp - c * sp;
    const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
    return {amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi)};
}

inline bool use_jy_asymptotic(double nu, double x) { return x >= 50.0 + nu * nu; }

// K_mu(x) and K_{mu+1}(x) times e^x when scaled; then forward recurrence to order nu.
inline double bessel_k_impl(double nu, double x, bool scaled) {
    constexpr double pi = std::numbers::pi;
    nu = std::abs(nu);
    const int nl = static_cast<int>(nu + 0.5);
    const double xmu = nu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    double rkmu = 0.0;
    double rk1 = 0.0;
    if (x < 2.0) {
        const double x2 = 0.5 * x;
        const double pimu = pi * xmu;
        const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
        const double d = -std::log(x2);
        double e = xmu * d;
        const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
        const TemmeGammas g = temme_gammas(xmu);
        double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / g.gampl;
        double q = 0.5 / (e * g.gammi);
        double c = 1.0;
        const double dd = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (; i <= kMaxIter; ++i) {
            ff = (i * ff + p + q) / (i * i - xmu2);
            c *= dd / i;
            p /= i - xmu;
            q /= i + xmu;
            const double del = c * ff;
            sum += del;
            sum1 += c * (p - i * ff);
            if (std::abs(del) < std::abs(sum) * kEps) break;
        }
        if (i > kMaxIter) throw ConvergenceError("bessel_k: Temme series did not converge");
        rkmu = sum;
        rk1 = sum1 * xi2;
        if (scaled) {
            const double ex = std::exp(x);
            rkmu *= ex;
            rk1 *= ex;
        }
    } else {
        double b = 2.0 * (1.0 + x);
        double d = 1.0 / b;
        double h = d;
        double delh = d;
        double q1 = 0.0;
        double q2 = 1.0;
        const double a1 = 0.25 - xmu2;
        double q = a1;
        double c = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        int i = 1;
        for (; i < kMaxIter; ++i) {
            a -= 2 * i;
            c = -a * c / (i + 1.0);
            const double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            const double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < kEps) break;
        }
        if (i >= kMaxIter) throw ConvergenceError("bessel_k: continued fraction CF2 did not converge");
        h = a1 * h;
        rkmu = std::sqrt(pi / (2.0 * x)) / s;
        if (!scaled) rkmu *= std::exp(-x);
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    for (int i = 1; i <= nl; ++i) {
        const double rktemp = (xmu + i) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    if (!std::isfinite(rkmu)) throw OverflowError("bessel_k: overflow");
    return rkmu;
}

}  // namespace detail

/// J_nu(x) for nu >= -1/2 and x >= 0.
inline double bessel_j(double nu, double x) {
    if (std::isnan(nu) || std::isnan(x)) throw DomainError("bessel_j: NaN argument");
    if (x < 0.0) throw DomainError("bessel_j: negative argument");
    if (nu < -0.5) throw DomainError("bessel_j: order below -1/2 is not supported");
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw OverflowError("bessel_j: J_nu(0) diverges for negative order");
    }
    if (nu == -0.5) return std::sqrt(2.0 / (std::numbers::pi * x)) * std::cos(x);
    const double order = std::abs(nu);
    const detail::JY jy =
        detail::use_jy_asymptotic(order, x) ? detail::bessel_jy_asymptotic(order, x) : detail::bessel_jy(order, x);
    if (nu >= 0.0) return jy.j;
    // J_{-m} = cos(m pi) J_m - sin(m pi) Y_m
    return cos_pi(order) * jy.j - sin_pi(order) * jy.y;
}

/// K_nu(x), x > 0; K_{-nu} = K_nu.
inline double bessel_k(double nu, double x) {
    if (std::isnan(nu) || std::isnan(x)) throw DomainError("bessel_k: NaN argument");
    if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive");
    return detail::bessel_k_impl(nu, x, false);
}

/// e^x K_nu(x), x > 0.
inline double bessel_k_scaled(double nu, double x) {
    if (std::isnan(nu) || std::isnan(x)) throw DomainError("bessel_k_scaled: NaN argument");
    if (!(x > 0.0)) throw DomainError("bessel_k_scaled: argument must be positive");
    return detail::bessel_k_impl(nu, x, true);
}

/// (1 + e^{i pi alpha/2} u^alpha)^{-beta} on the principal branch.
inline ComplexValue complex_pow_denominator(double u, double alpha, double beta) {
    if (!(u >= 0.0)) throw DomainError("complex_pow_denominator: u must be nonnegative");
    if (u == 0.0) return {1.0, 0.0};
    const double r = std::pow(u, alpha);
    const double wr = r * cos_pi(0.5 * alpha);
    const double wi = r * sin_pi(0.5 * alpha);
    // log(1 + w) with w = wr + i wi
    const double re_log = r < 1.0 ? 0.5 * std::log1p(2.0 * wr + r * r) : std::log(std::hypot(1.0 + wr, wi));
    const double im_log = std::atan2(wi, 1.0 + wr);
    assert(im_log > -std::numbers::pi && im_log <= std::numbers::pi);
    return std::polar(std::exp(-beta * re_log), -beta * im_log);
}

}  // namespace cauchy::specfun
