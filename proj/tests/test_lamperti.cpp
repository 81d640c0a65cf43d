#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cauchy/lamperti.hpp"

using namespace cauchy;

namespace {

Lag random_point(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    std::vector<double> c(static_cast<std::size_t>(n));
    for (auto& x : c) x = std::exp(d(rng));
    return Lag(c);
}

std::vector<LampertiParams> all_modes(int n) {
    std::vector<double> H(static_cast<std::size_t>(n)), a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        H[i] = 0.3 + 0.4 * i;
        a[i] = 0.7 + 0.5 * i;
        b[i] = 1.5 - 0.3 * i;
    }
    return {LampertiParams::first(0.8, KernelParams(1.3, 0.9, n)), LampertiParams::first(1.7, SheetParams(a, b)),
            LampertiParams::second(H, KernelParams(0.6, 2.0, n)), LampertiParams::second(H, SheetParams(a, b))};
}

// covariance of the increments Y(t + u) - Y(t) and Y(t + v) - Y(t) by polarization
double polarized(const LampertiParams& L, const Lag& t, const Lag& u, const Lag& v) {
    return 0.5 * (increment_var_expansion(L, t, u).exact + increment_var_expansion(L, t, v).exact -
                  increment_var_expansion(L, t + v, u - v).exact);
}

}  // namespace

TEST(Params, Validation) {
    EXPECT_THROW(LampertiParams::first(0.0, KernelParams(1.0, 1.0)), ParameterError);
    EXPECT_THROW(LampertiParams::second({0.5}, KernelParams(1.0, 1.0, 2)), ParameterError);
    EXPECT_THROW(LampertiParams::second({0.5, -1.0}, SheetParams({1.0, 1.0}, {1.0, 1.0})), ParameterError);
    const auto L = LampertiParams::second({0.5, 0.7}, SheetParams({1.0, 1.0}, {1.0, 1.0}));
    EXPECT_EQ(L.dim(), 2);
    EXPECT_TRUE(L.sheet());
    EXPECT_THROW(yss_cov(L, Lag{1.0, 1.0}, Lag{1.0, 1.0}), ParameterError);
}

TEST(Covariance, Examples) {
    const auto L = LampertiParams::first(0.5, KernelParams(2.0, 1.0));
    EXPECT_DOUBLE_EQ(yss_cov(L, Lag{1.0}, Lag{1.0}), 1.0);
    EXPECT_NEAR(yss_cov(L, Lag{1.0}, Lag{std::exp(1.0)}), 0.82436063535006407, 1e-15);
    const auto S = LampertiParams::first(1.0, SheetParams({1.0, 1.0}, {1.0, 1.0}));
    const double e = std::exp(1.0);
    EXPECT_NEAR(yss_sheet_cov(S, Lag{1.0, 1.0}, Lag{e, e}), 1.3591409142295226, 1e-15);
    const auto M = LampertiParams::second({0.4, 1.1}, KernelParams(1.0, 2.0, 2));
    EXPECT_DOUBLE_EQ(ymss_cov(M, Lag{1.0, 1.0}, Lag{1.0, 1.0}), 1.0);
    EXPECT_THROW(yss_cov(L, Lag{0.0}, Lag{1.0}), DomainError);
    EXPECT_THROW(yss_cov(L, Lag{-1.0}, Lag{1.0}), DomainError);
    EXPECT_THROW(yss_cov(L, Lag{1.0, 1.0}, Lag{1.0}), DimensionMismatch);
}

TEST(Covariance, DiagonalAndSymmetry) {
    std::mt19937_64 rng(11);
    for (int n : {1, 2, 3})
        for (const auto& L : all_modes(n))
            for (int k = 0; k < 20; ++k) {
                const Lag t = random_point(rng, n), s = random_point(rng, n);
                EXPECT_EQ(lamperti_cov(L, t, s), lamperti_cov(L, s, t));
                const double w = L.mode() == LampertiMode::FirstSS ? first_weight(t, L.H()[0]) : second_weight(t, L.H());
                EXPECT_NEAR(lamperti_cov(L, t, t), w * w, 1e-13 * w * w);
            }
}

TEST(Covariance, OneDimensionalTransformsCoincide) {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 50; ++k) {
        const Lag t = random_point(rng, 1), s = random_point(rng, 1);
        const double a = yss_cov(LampertiParams::first(0.7, KernelParams(1.2, 0.8)), t, s);
        EXPECT_NEAR(ymss_cov(LampertiParams::second({0.7}, KernelParams(1.2, 0.8)), t, s), a, 1e-14 * std::abs(a));
        EXPECT_NEAR(yss_sheet_cov(LampertiParams::first(0.7, SheetParams({1.2}, {0.8})), t, s), a, 1e-14 * std::abs(a));
        EXPECT_NEAR(ymss_sheet_cov(LampertiParams::second({0.7}, SheetParams({1.2}, {0.8})), t, s), a, 1e-14 * std::abs(a));
    }
}

TEST(Covariance, SheetIsSeparable) {
    const auto L = LampertiParams::second({0.3, 0.9}, SheetParams({0.7, 1.6}, {2.0, 0.5}));
    const auto A = LampertiParams::second({0.3}, SheetParams({0.7}, {2.0}));
    const auto B = LampertiParams::second({0.9}, SheetParams({1.6}, {0.5}));
    std::mt19937_64 rng(13);
    for (int k = 0; k < 50; ++k) {
        const Lag t = random_point(rng, 2), s = random_point(rng, 2);
        const double want = ymss_sheet_cov(A, Lag{t[0]}, Lag{s[0]}) * ymss_sheet_cov(B, Lag{t[1]}, Lag{s[1]});
        EXPECT_NEAR(ymss_sheet_cov(L, t, s), want, 1e-13 * std::abs(want));
    }
}

TEST(Scaling, SelfSimilarity) {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> lc(-3.0, 3.0);
    for (int n : {1, 2, 3})
        for (const auto& L : all_modes(n)) {
            for (double c : {0.5, 2.0, 10.0}) {
                const Lag t = random_point(rng, n), s = random_point(rng, n);
                if (L.mode() == LampertiMode::FirstSS) {
                    EXPECT_LE(scaling_check(L, t, s, {c}).rel_error, 1e-12);
                }
            }
            for (int k = 0; k < 100; ++k) {
                const Lag t = random_point(rng, n), s = random_point(rng, n);
                std::vector<double> c(static_cast<std::size_t>(L.mode() == LampertiMode::FirstSS ? 1 : n));
                for (auto& x : c) x = std::exp(lc(rng));
                const auto r = scaling_check(L, t, s, c);
                EXPECT_LE(r.rel_error, 1e-12) << r.lhs << " " << r.rhs;
            }
        }
}

TEST(Scaling, FirstTransformIsNotMultiSelfSimilar) {
    const auto L = LampertiParams::first(0.8, KernelParams(1.0, 1.0, 2));
    const auto M = LampertiParams::second({0.4, 0.4}, KernelParams(1.0, 1.0, 2));
    const Lag t{1.0, 2.0}, s{3.0, 0.5};
    const std::vector<double> c{2.0, 0.25};
    // per-axis scaling with the first transform's weight has no exact law
    const double lhs = lamperti_cov(L, Lag{2.0, 0.5}, Lag{6.0, 0.125});
    const double rhs = std::pow(2.0, 0.8) * std::pow(0.25, 0.8) * lamperti_cov(L, t, s);
    EXPECT_GT(std::abs(lhs / rhs - 1.0), 1e-3);
    EXPECT_LE(scaling_check(M, t, s, c).rel_error, 1e-13);
}

TEST(Correlation, Examples) {
    const auto L = LampertiParams::first(0.5, KernelParams(2.0, 1.0));
    EXPECT_NEAR(lamperti_correlation(L, Lag{1.0}, Lag{std::exp(1.0) - 1.0}), 0.5, 1e-15);
    EXPECT_EQ(lamperti_correlation(L, Lag{2.0}, Lag{0.0}), 1.0);
    EXPECT_NEAR(lamperti_correlation(L, Lag{2.0}, Lag{1e-9}), 1.0, 1e-15);
    EXPECT_THROW(lamperti_correlation(L, Lag{1.0}, Lag{-0.1}), DomainError);
    EXPECT_THROW(lamperti_correlation(L, Lag{0.0}, Lag{0.1}), DomainError);
}

TEST(Correlation, IndependentOfHurstIndexAndMode) {
    std::mt19937_64 rng(15);
    for (int n : {1, 2}) {
        const KernelParams p(1.4, 0.7, n);
        for (int k = 0; k < 20; ++k) {
            const Lag t = random_point(rng, n), tau = random_point(rng, n);
            const double ref = lamperti_correlation(LampertiParams::first(0.3, p), t, tau);
            for (double H : {1.0, 2.7}) {
                EXPECT_EQ(lamperti_correlation(LampertiParams::first(H, p), t, tau), ref);
                EXPECT_EQ(lamperti_correlation(LampertiParams::second(std::vector<double>(static_cast<std::size_t>(n), H), p), t, tau), ref);
            }
            // equals the normalized covariance
            const auto L = LampertiParams::second(std::vector<double>(static_cast<std::size_t>(n), 0.6), p);
            const double c = lamperti_cov(L, t + tau, t) / std::sqrt(lamperti_cov(L, t + tau, t + tau) * lamperti_cov(L, t, t));
            EXPECT_NEAR(c, ref, 1e-13);
        }
    }
}

TEST(LrdWitness, Examples) {
    const auto L = LampertiParams::first(0.5, KernelParams(2.0, 1.0));
    const double w5 = lamperti_lrd_witness(L, Lag{1.0}, 5.0);
    EXPECT_NEAR(w5, 11.210794118156729, 1e-9);
    EXPECT_NEAR(lamperti_lrd_witness(L, Lag{1.0}, 10.0) / w5, 25.5560316505317, 1e-8);
    EXPECT_GT(lamperti_lrd_witness(L, Lag{1.0}, 10.0) / w5, 10.0);
    EXPECT_LT(lamperti_lrd_witness(L, Lag{1.0}, 1e-8), 1e-7);
    EXPECT_NEAR(lamperti_lrd_witness(L, Lag{3.0}, 5.0), 3.0 * w5, 1e-12 * w5);
    EXPECT_THROW(lamperti_lrd_witness(L, Lag{1.0}, 0.0), DomainError);
}

TEST(LrdWitness, TwoDimensionalOracle) {
    const auto L = LampertiParams::second({0.5, 0.5}, KernelParams(1.0, 1.0, 2));
    EXPECT_NEAR(lamperti_lrd_witness(L, Lag{1.0, 1.0}, 3.0), 90.532376755431176, 1e-7);
}

TEST(LrdWitness, DivergesForEveryBase) {
    for (int n : {1, 2})
        for (double a : {0.5, 1.0, 2.0})
            for (double b : {0.5, 2.0, 8.0}) {
                const auto L = LampertiParams::first(0.5, KernelParams(a, b, n));
                const Lag t(std::vector<double>(static_cast<std::size_t>(n), 1.0));
                double prev = 0.0;
                for (double V : {1.0, 2.0, 4.0, 8.0}) {
                    const double w = lamperti_lrd_witness(L, t, V);
                    EXPECT_GT(w, prev);
                    prev = w;
                }
                // e^v outgrows the v^{-alpha beta} decay once v exceeds alpha beta
                const double V = 8.0 + 4.0 * a * b;
                EXPECT_GT(lamperti_lrd_witness(L, t, 2.0 * V) / lamperti_lrd_witness(L, t, V), 10.0) << a << " " << b << " " << n;
            }
}

TEST(IncrementExpansion, StationaryIncrementCase) {
    // alpha = 2H: the leading term 2 beta |tau|^alpha does not depend on t
    const auto L = LampertiParams::first(0.4, KernelParams(0.8, 1.5));
    const double tau = 1e-5;
    const double ref = 2.0 * 1.5 * std::pow(tau, 0.8);
    for (double t : {0.5, 1.0, 7.0}) {
        const auto e = increment_var_expansion(L, Lag{t}, Lag{tau});
        EXPECT_NEAR(e.leading, ref, 1e-13 * ref);
        EXPECT_NEAR(e.exact / e.leading, 1.0, 1e-3);
    }
}

TEST(IncrementExpansion, RatioNearOneAtUnitPoint) {
    for (int n : {1, 2})
        for (const auto& L : all_modes(n)) {
            const Lag t(std::vector<double>(static_cast<std::size_t>(n), 1.0));
            const Lag tau(std::vector<double>(static_cast<std::size_t>(n), 1e-4 / std::sqrt(n)));
            const auto e = increment_var_expansion(L, t, tau);
            EXPECT_GE(e.exact / e.leading, 0.99);
            EXPECT_LE(e.exact / e.leading, 1.01);
        }
}

TEST(IncrementExpansion, RatioTendsToOne) {
    for (int n : {1, 2})
        for (const auto& L : all_modes(n)) {
            const Lag t(n == 1 ? std::vector<double>{2.5} : std::vector<double>{0.7, 3.0});
            double prev = 1.0;
            for (double h = 1e-2; h >= 1e-8; h *= 0.1) {
                const Lag tau(n == 1 ? std::vector<double>{h} : std::vector<double>{h, -0.5 * h});
                const auto e = increment_var_expansion(L, t, tau);
                const double dev = std::abs(e.exact / e.leading - 1.0);
                EXPECT_LT(dev, prev);
                prev = dev;
            }
            EXPECT_LT(prev, 1e-3);
        }
}

TEST(IncrementExpansion, SmoothBaseKeepsWeightGradient) {
    // with alpha = 2 the weight gradient is of the same order: exact / leading -> 1 + H^2 / (2 beta)
    const auto L = LampertiParams::first(0.6, KernelParams(2.0, 1.5));
    const auto e = increment_var_expansion(L, Lag{1.3}, Lag{1e-6});
    EXPECT_NEAR(e.exact / e.leading, 1.0 + 0.36 / 3.0, 1e-5);
}

TEST(IncrementExpansion, LeadingTermDependsOnBasePoint) {
    for (double H : {0.2, 0.5, 1.0, 3.0})
        for (const auto& L : {LampertiParams::first(H, KernelParams(1.0, 1.0, 2)), LampertiParams::second({H, H}, KernelParams(2.0 * H > 2.0 ? 2.0 : 2.0 * H, 1.0, 2))}) {
            const Lag tau{1e-4, 2e-4};
            const double a = increment_var_expansion(L, Lag{1.0, 1.0}, tau).leading;
            const double b = increment_var_expansion(L, Lag{2.0, 0.5}, tau).leading;
            EXPECT_GT(std::abs(a / b - 1.0), 1e-3) << H;
        }
}

TEST(IncrementExpansion, ExponentIsAlphaNotTwiceH) {
    for (const auto& [a, H] : {std::pair{1.0, 0.8}, std::pair{0.6, 1.5}, std::pair{1.5, 0.2}}) {
        const auto L = LampertiParams::first(H, KernelParams(a, 1.0));
        std::vector<double> lags, values;
        for (int k = 1; k <= 8; ++k) {
            const double h = k * 1e-6;
            lags.push_back(h);
            values.push_back(increment_var_expansion(L, Lag{2.0}, Lag{h}).exact);
        }
        const VariogramFit f = fit_variogram(lags, values);
        EXPECT_NEAR(f.alpha_hat, a, 1e-2) << a << " " << H;
    }
    const auto S = LampertiParams::second({0.9, 0.9}, SheetParams({1.6, 0.7}, {1.0, 1.0}));
    std::vector<double> lags, values;
    for (int k = 1; k <= 8; ++k) {
        lags.push_back(k * 1e-6);
        values.push_back(increment_var_expansion(S, Lag{1.0, 2.0}, Lag{k * 1e-6, k * 1e-6}).exact);
    }
    EXPECT_NEAR(fit_variogram(lags, values).alpha_hat, 0.7, 1e-2);
}

TEST(TotalIncrement, LocallyStationaryWhenAlphaIsTwiceH) {
    const auto L = LampertiParams::second({0.5, 0.4}, SheetParams({1.0, 0.8}, {1.0, 1.0}));
    const double h = 1e-3;
    const double ref = 4.0 * std::pow(h, 1.8);
    for (const Lag& t : {Lag{1.0, 1.0}, Lag{3.0, 5.0}, Lag{10.0, 0.2}}) {
        const auto r = total_increment_var_mss_sheet(L, t, Lag{h, h});
        EXPECT_NEAR(r.leading, ref, 1e-12 * ref);
        EXPECT_DOUBLE_EQ(r.delta, 0.8);
    }
}

TEST(TotalIncrement, DegenerateBox) {
    const auto L = LampertiParams::second({0.5, 0.4}, SheetParams({1.0, 0.8}, {1.0, 1.0}));
    EXPECT_EQ(total_increment_var_mss_sheet(L, Lag{1.0, 2.0}, Lag{0.0, 0.1}).exact, 0.0);
    EXPECT_THROW(total_increment_var_mss_sheet(L, Lag{1.0, 2.0}, Lag{-2.0, 0.1}), DomainError);
    EXPECT_THROW(total_increment_var_mss_sheet(LampertiParams::first(0.5, SheetParams({1.0, 0.8}, {1.0, 1.0})), Lag{1.0, 1.0}, Lag{0.1, 0.1}),
                 ParameterError);
}

TEST(TotalIncrement, MatchesSignedVertexSum) {
    const auto L = LampertiParams::second({0.7, 0.3}, SheetParams({1.2, 0.6}, {0.5, 2.0}));
    const Lag t{1.5, 0.4}, tau{0.3, 0.2};
    // 4 x 4 signed covariance sum over the box vertices
    double sum = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const Lag p{t[0] + (a & 1) * tau[0], t[1] + (a >> 1) * tau[1]};
            const Lag q{t[0] + (b & 1) * tau[0], t[1] + (b >> 1) * tau[1]};
            const int sign = ((a & 1) + (a >> 1) + (b & 1) + (b >> 1)) % 2 ? -1 : 1;
            sum += sign * ymss_sheet_cov(L, p, q);
        }
    EXPECT_NEAR(total_increment_var_mss_sheet(L, t, tau).exact, sum, 1e-13);
}

TEST(TotalIncrement, RatioTendsToOne) {
    const auto L = LampertiParams::second({0.5, 0.4}, SheetParams({1.0, 0.8}, {1.0, 1.0}));
    for (const Lag& t : {Lag{1.0, 1.0}, Lag{3.0, 5.0}}) {
        double prev = 1.0;
        for (double h : {1e-3, 1e-4, 1e-5}) {
            const auto r = total_increment_var_mss_sheet(L, t, Lag{h, h});
            const double dev = std::abs(r.exact / r.leading - 1.0);
            EXPECT_LT(dev, prev);
            prev = dev;
        }
        EXPECT_LT(prev, 1e-2);
    }
}

TEST(Tangent, Examples) {
    const KernelParams p(1.3, 0.7);
    const auto L = LampertiParams::first(0.8, p);
    for (const auto& [u, v] : {std::pair{0.4, 1.1}, std::pair{-0.3, 0.9}})
        EXPECT_DOUBLE_EQ(lamperti_tangent_cov(L, Lag{1.0}, Lag{u}, Lag{v}), tangent_cov_gfgcc(p, Lag{u}, Lag{v}));
    EXPECT_EQ(lamperti_tangent_cov(L, Lag{2.0}, Lag{0.0}, Lag{0.5}), 0.0);
    const auto S = LampertiParams::second({0.5, 0.5}, SheetParams({1.0, 1.5}, {2.0, 1.0}));
    EXPECT_EQ(lamperti_tangent_cov(S, Lag{2.0, 3.0}, Lag{0.4, 0.1}, Lag{0.0, 0.0}), 0.0);
    EXPECT_THROW(lamperti_tangent_cov(L, Lag{-1.0}, Lag{0.1}, Lag{0.1}), DomainError);
}

TEST(Tangent, SmallScaleLimit) {
    const double eps = 1e-3;
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> d(0.1, 1.0);
    const std::vector<LampertiParams> cases{LampertiParams::first(0.7, KernelParams(1.0, 1.5, 2)),
                                            LampertiParams::second({0.3, 1.2}, KernelParams(0.8, 0.6, 2)),
                                            LampertiParams::first(0.5, SheetParams({1.0, 2.0}, {2.0, 1.0})),
                                            LampertiParams::second({0.9, 0.4}, SheetParams({0.9, 0.9}, {1.0, 0.5}))};
    for (const auto& L : cases) {
        const double a = L.sheet() ? std::get<SheetParams>(L.base()).min_alpha() : std::get<KernelParams>(L.base()).alpha();
        for (int k = 0; k < 10; ++k) {
            const Lag t{2.0 * d(rng), 2.0 * d(rng)};
            const Lag u{d(rng), d(rng)}, v{d(rng), d(rng)};
            const double finite = polarized(L, t, eps * u, eps * v) / std::pow(eps, a);
            EXPECT_NEAR(finite / lamperti_tangent_cov(L, t, u, v), 1.0, 1e-2);
        }
    }
}

TEST(Transforms, RoundTrip) {
    GridSpec g;
    g.dim = 2;
    g.points = 16;
    g.spacing = {0.25, 0.125};
    g.seed = 3;
    std::mt19937_64 rng(17);
    std::normal_distribution<double> nd;
    std::vector<double> v(g.total());
    for (auto& x : v) x = nd(rng);
    const FieldGrid x(g, v, "noise");
    const std::vector<double> origin{-1.0, 0.5};
    const FieldGrid y2 = lamperti_second(x, {0.4, 1.3}, origin);
    const FieldGrid back2 = inverse_second(y2, {0.4, 1.3}, origin);
    double dev = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) dev = std::max(dev, std::abs(back2[k] - v[k]));
    EXPECT_LE(dev, 1e-12);
    EXPECT_EQ(back2.kernel_tag(), y2.kernel_tag());

    GridSpec g1;
    g1.points = 32;
    g1.spacing = {0.1};
    std::vector<double> v1(32);
    for (auto& x1 : v1) x1 = nd(rng);
    const FieldGrid x1(g1, v1, "noise");
    const FieldGrid back1 = inverse_first(lamperti_first(x1, 0.7, {0.0}), 0.7, {0.0});
    for (std::size_t k = 0; k < v1.size(); ++k) EXPECT_NEAR(back1[k], v1[k], 4e-16 * std::abs(v1[k])) << k;
}

TEST(Transforms, ForwardWeights) {
    GridSpec g;
    g.dim = 2;
    g.points = 8;
    g.spacing = {0.5};
    const FieldGrid ones(g, std::vector<double>(64, 1.0), "");
    const FieldGrid y = lamperti_first(ones, 0.6, {0.0, -1.0});
    const Lag t{std::exp(3 * 0.5), std::exp(-1.0 + 5 * 0.5)};
    EXPECT_NEAR(y.at(3, 5), first_weight(t, 0.6), 1e-14);
    const FieldGrid z = lamperti_second(ones, {0.6, 0.2}, {0.0, -1.0});
    EXPECT_NEAR(z.at(3, 5), second_weight(t, {0.6, 0.2}), 1e-14);
    EXPECT_THROW(first_weight(Lag{1.0, 0.0}, 0.5), DomainError);
    EXPECT_THROW(second_weight(Lag{-1.0}, {0.5}), DomainError);
    EXPECT_THROW(lamperti_first(ones, 0.6, {0.0}), DimensionMismatch);
}

TEST(Transforms, SimulatedFieldCovariance) {
    // the reweighted stationary samples carry the transformed covariance
    GridSpec g;
    g.points = 64;
    g.spacing = {0.25};
    g.seed = 21;
    const KernelParams p(1.0, 1.0);
    const auto s = CirculantSampler::gfgcc(p, g);
    const auto L = LampertiParams::first(0.5, p);
    const int reps = 4000;
    double acc = 0.0;
    for (int r = 0; r < reps; ++r) {
        const FieldGrid y = lamperti_first(s.sample(static_cast<std::uint64_t>(r)), 0.5, {0.0});
        acc += y[2] * y[6];
    }
    const double want = lamperti_cov(L, Lag{std::exp(0.5)}, Lag{std::exp(1.5)});
    const double w2 = std::exp(0.5) * std::exp(1.5);
    EXPECT_NEAR(acc / reps, want, 4.0 * w2 / std::sqrt(reps));
}

TEST(Transforms, InverseOfLevyFieldIsNotStationary) {
    const Lag tau{0.3, 0.2};
    const double a = inverse_first_levy_cov(0.5, tau, Lag{0.0, 0.0});
    const double b = inverse_first_levy_cov(0.5, Lag{1.0, -1.0} + tau, Lag{1.0, -1.0});
    EXPECT_NEAR(a, 0.8789597397950507, 1e-14);
    EXPECT_NEAR(b, 0.86127705188679261, 1e-14);
    EXPECT_GT(std::abs(a - b), 1e-3);
}
