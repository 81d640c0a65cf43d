#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <functional>

namespace oracle {

/// 2 * int_0^inf S(w) cos(w tau) dw for an even one-dimensional density S.
/// For tau = 0 the range [0, A] is integrated directly and the remainder is
/// supplied by `tail(A)`.
inline double invert_even_density(const std::function<double(double)>& S, double tau,
                                  const std::function<double(double)>& tail, double A = 1e6) {
    boost::math::quadrature::tanh_sinh<double> ts(12);
    if (tau == 0.0) {
        double sum = 0.0;
        double lo = 0.0;
        for (double hi = 1.0; lo < A; hi *= 10.0) {
            sum += ts.integrate(S, lo, std::min(hi, A), 1e-12);
            lo = std::min(hi, A);
        }
        return 2.0 * (sum + tail(A));
    }
    const double a = 1.0;
    auto near = [&](double w) { return S(w) * std::cos(w * tau); };
    const double head = ts.integrate(near, 0.0, a, 1e-12);
    // shift the tail to start at zero and split the phase
    auto shifted = [&](double t) { return S(a + t); };
    boost::math::quadrature::ooura_fourier_cos<double> oc(1e-10, 10);
    boost::math::quadrature::ooura_fourier_sin<double> os(1e-10, 10);
    const double c = oc.integrate(shifted, tau).first;
    const double s = os.integrate(shifted, tau).first;
    return 2.0 * (head + std::cos(a * tau) * c - std::sin(a * tau) * s);
}

}  // namespace oracle
