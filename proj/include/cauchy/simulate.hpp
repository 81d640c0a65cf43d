#pragma once

// Exact stationary Gaussian sampling on regular 1-D and 2-D grids by circulant
// embedding.  One complex transform of size M gives two independent fields
// (real and imaginary parts).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cauchy/error.hpp"
#include "cauchy/fft.hpp"
#include "cauchy/kernels.hpp"
#include "cauchy/parallel.hpp"
#include "cauchy/rng.hpp"

namespace cauchy {

struct GridSpec {
    int dim = 1;
    std::size_t points = 256;
    /// one entry per axis; a single entry applies to every axis
    std::vector<double> spacing = {1.0};
    std::uint64_t seed = 0;

    double step(int axis) const { return spacing.size() == 1 ? spacing[0] : spacing.at(static_cast<std::size_t>(axis)); }

    std::size_t total() const { return dim == 1 ? points : points * points; }

    void validate() const {
        if (dim != 1 && dim != 2) throw ParameterError("grid dimension must be 1 or 2");
        if (points < 8 || (points & (points - 1)) != 0) throw ParameterError("points per axis must be a power of two >= 8");
        if (spacing.size() != 1 && spacing.size() != static_cast<std::size_t>(dim))
            throw ParameterError("spacing needs one value or one per axis");
        for (double h : spacing)
            if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("spacing must be positive");
    }
};

class FieldGrid {
public:
    FieldGrid() = default;
    FieldGrid(GridSpec grid, std::vector<double> values, std::string tag)
        : grid_(std::move(grid)), values_(std::move(values)), tag_(std::move(tag)) {
        if (values_.size() != grid_.total()) throw DimensionMismatch("field size does not match grid");
    }

    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const std::string& kernel_tag() const { return tag_; }
    double operator[](std::size_t i) const { return values_[i]; }
    /// row-major: i along axis 0 (rows), j along axis 1
    double at(std::size_t i, std::size_t j) const { return values_[i * grid_.points + j]; }

private:
    GridSpec grid_;
    std::vector<double> values_;
    std::string tag_;
};

struct EmbeddingReport {
    std::vector<std::size_t> embedding_size;
    int padding_factor = 0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    /// false when no padding up to the cap satisfied the acceptance rule
    bool accepted = false;
    bool clipped = false;
    /// clipped negative eigenvalue mass as a fraction of the total absolute mass
    double clipped_mass = 0.0;
};

namespace detail {

inline constexpr int kMaxPadding = 16;
inline constexpr double kMinEigenvalueRatio = 1e-12;
inline constexpr double kMaxClippedMass = 1e-8;

struct Embedding {
    std::vector<int> extents;
    std::vector<double> eigenvalues;
    EmbeddingReport report;
};

// eigenvalues of the circulant built from `base` (row-major over extents)
inline std::vector<double> circulant_eigenvalues(const std::vector<double>& base, const std::vector<int>& extents) {
    fft::Buffer buf(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) buf.re(i) = base[i];
    fft::Plan(extents).execute(buf);
    std::vector<double> lam(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) lam[i] = buf.re(i);
    return lam;
}

// accepted when the most negative eigenvalue is negligible against the largest or the
// negative mass is negligible against the total; clips in place when accepted
inline bool accept_and_clip(std::vector<double>& lam, EmbeddingReport& rep) {
    const auto [mn, mx] = std::minmax_element(lam.begin(), lam.end());
    rep.min_eigenvalue = *mn;
    rep.max_eigenvalue = *mx;
    double neg = 0.0;
    double total = 0.0;
    for (double l : lam) {
        total += std::abs(l);
        if (l < 0.0) neg -= l;
    }
    rep.clipped_mass = total > 0.0 ? neg / total : 0.0;
    rep.clipped = neg > 0.0;
    if (!(*mn >= -kMinEigenvalueRatio * *mx || rep.clipped_mass < kMaxClippedMass)) return false;
    for (double& l : lam) l = std::max(l, 0.0);
    return true;
}

inline int wrap(int k, int m) { return std::min(k, m - k); }

/// Searches padding 2x..16x for a nonnegative-definite embedding of a stationary
/// covariance given as a function of the lag vector (in physical units).
/// On failure the report of the largest attempt is returned with accepted = false.
inline Embedding search_embedding(const std::function<double(const Lag&)>& cov, const GridSpec& g) {
    Embedding last;
    for (int pad = 2; pad <= kMaxPadding; pad *= 2) {
        const int m = static_cast<int>(g.points) * pad;
        Embedding e;
        e.extents.assign(static_cast<std::size_t>(g.dim), m);
        std::vector<double> base;
        if (g.dim == 1) {
            base.resize(static_cast<std::size_t>(m));
            for (int k = 0; k < m; ++k) base[k] = cov(Lag({wrap(k, m) * g.step(0)}));
        } else {
            base.resize(static_cast<std::size_t>(m) * m);
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) base[static_cast<std::size_t>(k) * m + l] = cov(Lag({wrap(k, m) * g.step(0), wrap(l, m) * g.step(1)}));
        }
        e.eigenvalues = circulant_eigenvalues(base, e.extents);
        e.report.embedding_size.assign(e.extents.begin(), e.extents.end());
        e.report.padding_factor = pad;
        e.report.accepted = accept_and_clip(e.eigenvalues, e.report);
        if (e.report.accepted) return e;
        last = std::move(e);
    }
    return last;
}

inline void require_accepted(const EmbeddingReport& last, const std::string& what) {
    if (last.accepted) return;
    std::ostringstream os;
    os << what << ": no nonnegative-definite circulant embedding up to " << kMaxPadding << "x padding (min eigenvalue "
       << last.min_eigenvalue << ", max " << last.max_eigenvalue << ", negative mass " << last.clipped_mass << ")";
    throw EmbeddingError(os.str());
}

// per-axis embeddings of a separable 2-D kernel combined as an outer product
inline Embedding sheet_embedding(const SheetParams& p, const GridSpec& g) {
    Embedding axes[2];
    for (int i = 0; i < 2; ++i) {
        GridSpec gi = g;
        gi.dim = 1;
        gi.spacing = {g.step(i)};
        const double a = p.alphas()[i];
        const double b = p.betas()[i];
        axes[i] = search_embedding([a, b](const Lag& t) { return cauchy_radial(t[0], a, b); }, gi);
    }
    Embedding e;
    e.extents = {axes[0].extents[0], axes[1].extents[0]};
    const std::size_t m0 = static_cast<std::size_t>(e.extents[0]);
    const std::size_t m1 = static_cast<std::size_t>(e.extents[1]);
    e.eigenvalues.resize(m0 * m1);
    for (std::size_t k = 0; k < m0; ++k)
        for (std::size_t l = 0; l < m1; ++l) e.eigenvalues[k * m1 + l] = axes[0].eigenvalues[k] * axes[1].eigenvalues[l];
    const EmbeddingReport& r0 = axes[0].report;
    const EmbeddingReport& r1 = axes[1].report;
    auto& r = e.report;
    r.embedding_size = {m0, m1};
    r.padding_factor = std::max(r0.padding_factor, r1.padding_factor);
    r.min_eigenvalue = std::min({r0.min_eigenvalue * r1.max_eigenvalue, r0.max_eigenvalue * r1.min_eigenvalue,
                                 r0.min_eigenvalue * r1.min_eigenvalue});
    r.max_eigenvalue = r0.max_eigenvalue * r1.max_eigenvalue;
    r.accepted = r0.accepted && r1.accepted;
    r.clipped = r0.clipped || r1.clipped;
    r.clipped_mass = r0.clipped_mass + r1.clipped_mass;
    return e;
}

inline Embedding gfgcc_embedding(const KernelParams& p, const GridSpec& g) {
    g.validate();
    if (p.dim() != g.dim) throw DimensionMismatch("kernel dimension does not match grid dimension");
    return search_embedding([&](const Lag& t) { return gfgcc_cov(p, t); }, g);
}

inline Embedding gsgcc_embedding(const SheetParams& p, const GridSpec& g) {
    g.validate();
    if (p.dim() != g.dim) throw DimensionMismatch("sheet dimension does not match grid dimension");
    if (g.dim == 1) return search_embedding([&](const Lag& t) { return gsgcc_cov(p, t); }, g);
    return sheet_embedding(p, g);
}

inline std::string gfgcc_tag(const KernelParams& p) {
    std::ostringstream os;
    os.precision(17);
    os << "gfgcc(alpha=" << p.alpha() << ",beta=" << p.beta() << ",n=" << p.dim() << ")";
    return os.str();
}

inline std::string gsgcc_tag(const SheetParams& p) {
    std::ostringstream os;
    os.precision(17);
    os << "gsgcc(alpha=";
    for (std::size_t i = 0; i < p.alphas().size(); ++i) os << (i ? "," : "") << p.alphas()[i];
    os << ";beta=";
    for (std::size_t i = 0; i < p.betas().size(); ++i) os << (i ? "," : "") << p.betas()[i];
    os << ")";
    return os.str();
}

}  // namespace detail

/// Holds the square-rooted, scaled circulant spectrum of one kernel on one grid.
/// Immutable after construction; sampling is safe from several threads.
class CirculantSampler {
public:
    static CirculantSampler gfgcc(const KernelParams& p, const GridSpec& g) {
        detail::Embedding e = detail::gfgcc_embedding(p, g);
        detail::require_accepted(e.report, "simulate_gfgcc");
        return CirculantSampler(g, std::move(e), detail::gfgcc_tag(p));
    }

    /// Separable kernel: per-axis 1-D embeddings combined as an outer product.
    static CirculantSampler gsgcc(const SheetParams& p, const GridSpec& g) {
        detail::Embedding e = detail::gsgcc_embedding(p, g);
        detail::require_accepted(e.report, "simulate_gsgcc");
        return CirculantSampler(g, std::move(e), detail::gsgcc_tag(p));
    }
    const GridSpec& grid() const { return grid_; }
    const EmbeddingReport& report() const { return report_; }
    const std::string& kernel_tag() const { return tag_; }

    /// Both realizations carried by transform number `stream` under the grid seed.
    std::pair<FieldGrid, FieldGrid> sample_pair(std::uint64_t stream, int threads = 0) const {
        const std::size_t total = plan_->size();
        fft::Buffer buf(total);
        const rng::Philox gen(grid_.seed);
        const std::size_t chunk = 4096;
        parallel_for(
            (total + chunk - 1) / chunk,
            [&](std::size_t c) {
                const std::size_t end = std::min(total, (c + 1) * chunk);
                for (std::size_t j = c * chunk; j < end; ++j) {
                    const auto [z0, z1] = gen.normal_pair(stream, j);
                    buf.re(j) = scale_[j] * z0;
                    buf.im(j) = scale_[j] * z1;
                }
            },
            total > chunk ? threads : 1);
        plan_->execute(buf);

        const std::size_t n = grid_.points;
        std::vector<double> re(grid_.total());
        std::vector<double> im(grid_.total());
        if (grid_.dim == 1) {
            for (std::size_t i = 0; i < n; ++i) {
                re[i] = buf.re(i);
                im[i] = buf.im(i);
            }
        } else {
            const std::size_t m1 = static_cast<std::size_t>(plan_->extents()[1]);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    re[i * n + j] = buf.re(i * m1 + j);
                    im[i * n + j] = buf.im(i * m1 + j);
                }
        }
        return {FieldGrid(grid_, std::move(re), tag_), FieldGrid(grid_, std::move(im), tag_)};
    }

    /// Realization number r: the real part of transform r/2 for even r, the imaginary part for odd r.
    FieldGrid sample(std::uint64_t r, int threads = 0) const {
        auto pair = sample_pair(r / 2, threads);
        return r % 2 == 0 ? std::move(pair.first) : std::move(pair.second);
    }

private:
    CirculantSampler(GridSpec g, detail::Embedding e, std::string tag)
        : grid_(std::move(g)), report_(std::move(e.report)), tag_(std::move(tag)), plan_(std::make_shared<fft::Plan>(e.extents)) {
        const double m = static_cast<double>(e.eigenvalues.size());
        scale_.resize(e.eigenvalues.size());
        for (std::size_t i = 0; i < scale_.size(); ++i) scale_[i] = std::sqrt(e.eigenvalues[i] / m);
    }

    GridSpec grid_;
    EmbeddingReport report_;
    std::string tag_;
    std::shared_ptr<const fft::Plan> plan_;
    std::vector<double> scale_;
};

inline FieldGrid simulate_gfgcc(const KernelParams& p, const GridSpec& g) { return CirculantSampler::gfgcc(p, g).sample(0); }

inline FieldGrid simulate_gsgcc(const SheetParams& p, const GridSpec& g) { return CirculantSampler::gsgcc(p, g).sample(0); }

inline EmbeddingReport embedding_diagnostics(const KernelParams& p, const GridSpec& g) { return detail::gfgcc_embedding(p, g).report; }

inline EmbeddingReport embedding_diagnostics(const SheetParams& p, const GridSpec& g) { return detail::gsgcc_embedding(p, g).report; }

}  // namespace cauchy
