#pragma once

// Global adaptive Gauss-Kronrod (10/21) integration over a list of panels,
// plus Wynn's epsilon algorithm for sequences of partial sums.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cauchy::quad {

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    /// integral of |f|; sets the roundoff floor of the achievable error
    double abs_integral = 0.0;
    int intervals = 0;
    int evaluations = 0;
    bool converged = false;
};

struct Tolerance {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int max_intervals = 2000;
};

namespace detail {

struct Panel {
    double a;
    double b;
    double value;
    double error;
    double abs_integral;
    bool operator<(const Panel& other) const { return error < other.error; }
};

// QUADPACK qk21-style rule with the Boost-tabulated nodes.
template <class F>
Panel gk21(F& f, double a, double b) {
    const auto& xk = boost::math::quadrature::gauss_kronrod<double, 21>::abscissa();
    const auto& wk = boost::math::quadrature::gauss_kronrod<double, 21>::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 10>::weights();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double kronrod = fc * wk[0];
    double gauss = 0.0;
    double resabs = std::abs(kronrod);
    std::array<double, 21> values{};
    values[0] = fc;
    for (std::size_t j = 1; j < xk.size(); ++j) {
        const double dx = half * xk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        values[2 * j - 1] = f1;
        values[2 * j] = f2;
        kronrod += wk[j] * (f1 + f2);
        resabs += wk[j] * (std::abs(f1) + std::abs(f2));
        // odd Kronrod nodes coincide with the 10-point Gauss nodes
        if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * kronrod;
    double resasc = wk[0] * std::abs(fc - mean);
    for (std::size_t j = 1; j < xk.size(); ++j) {
        resasc += wk[j] * (std::abs(values[2 * j - 1] - mean) + std::abs(values[2 * j] - mean));
    }
    const double value = kronrod * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, value, err, resabs};
}

}  // namespace detail

/// Integrates f over [pts.front(), pts.back()], splitting first at every interior point.
/// The target error is max(abs_tol, rel_tol |I|, 100 eps int|f|); the last term is the
/// roundoff floor below which cancellation makes further subdivision pointless.
template <class F>
Result integrate(F&& f, std::span<const double> pts, const Tolerance& tol = {}) {
    Result res;
    if (pts.size() < 2) return res;
    std::priority_queue<detail::Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    double total_abs = 0.0;
    constexpr double floor_factor = 100.0 * std::numeric_limits<double>::epsilon();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i + 1] > pts[i])) continue;
        detail::Panel p = detail::gk21(f, pts[i], pts[i + 1]);
        res.evaluations += 21;
        total += p.value;
        total_err += p.error;
        total_abs += p.abs_integral;
        heap.push(p);
    }
    while (!heap.empty()) {
        if (total_err <= std::max({tol.abs_tol, tol.rel_tol * std::abs(total), floor_factor * total_abs})) {
            res.converged = true;
            break;
        }
        if (static_cast<int>(heap.size()) >= tol.max_intervals) break;
        const detail::Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval can no longer be split
        heap.pop();
        const detail::Panel left = detail::gk21(f, worst.a, mid);
        const detail::Panel right = detail::gk21(f, mid, worst.b);
        res.evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_abs += left.abs_integral + right.abs_integral - worst.abs_integral;
        heap.push(left);
        heap.push(right);
    }
    // resum to drop accumulated cancellation in the running totals
    res.value = 0.0;
    res.abs_error = 0.0;
    res.intervals = static_cast<int>(heap.size());
    while (!heap.empty()) {
        res.value += heap.top().value;
        res.abs_error += heap.top().error;
        res.abs_integral += heap.top().abs_integral;
        heap.pop();
    }
    if (!res.converged) {
        res.converged = res.abs_error <= std::max({tol.abs_tol, tol.rel_tol * std::abs(res.value), floor_factor * res.abs_integral});
    }
    return res;
}

template <class F>
Result integrate(F&& f, double a, double b, const Tolerance& tol = {}) {
    const double pts[2] = {a, b};
    return integrate(std::forward<F>(f), std::span<const double>(pts, 2), tol);
}

/// Wynn's epsilon algorithm on a stream of partial sums.
class WynnEpsilon {
public:
    explicit WynnEpsilon(std::size_t max_depth = 40) : max_depth_(max_depth) {}

    void push(double partial_sum) {
        std::vector<double> next(diag_.size() + 1);
        next[0] = partial_sum;
        std::size_t filled = 1;
        for (std::size_t k = 0; k < diag_.size(); ++k) {
            const double diff = next[k] - diag_[k];
            if (diff == 0.0 || !std::isfinite(diff)) break;
            const double prev = k == 0 ? 0.0 : diag_[k - 1];
            next[k + 1] = prev + 1.0 / diff;
            if (!std::isfinite(next[k + 1])) break;
            ++filled;
        }
        next.resize(std::min(filled, max_depth_));
        diag_ = std::move(next);
        // even columns carry the estimates; take the deepest one
        const std::size_t k = (diag_.size() - 1) & ~std::size_t{1};
        prev_estimate_ = estimate_;
        estimate_ = diag_[k];
        ++count_;
    }

    double estimate() const { return estimate_; }
    double change() const { return count_ < 2 ? std::numeric_limits<double>::infinity() : std::abs(estimate_ - prev_estimate_); }
    std::size_t count() const { return count_; }

private:
    std::size_t max_depth_;
    std::vector<double> diag_;
    double estimate_ = 0.0;
    double prev_estimate_ = 0.0;
    std::size_t count_ = 0;
};

}  // namespace cauchy::quad
