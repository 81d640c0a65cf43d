#pragma once

// Thin FFTW wrapper: aligned complex buffers and shared in-place plans.
// Planning is not thread-safe in FFTW, so plan creation is serialised;
// execution on fresh fftw_malloc buffers is.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <new>
#include <vector>

namespace cauchy::fft {

inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class Buffer {
public:
    explicit Buffer(std::size_t n) : n_(n), data_(fftw_alloc_complex(n)) {
        if (!data_) throw std::bad_alloc();
        for (std::size_t i = 0; i < n; ++i) data_[i][0] = data_[i][1] = 0.0;
    }
    ~Buffer() { fftw_free(data_); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
    Buffer(Buffer&& o) noexcept : n_(o.n_), data_(o.data_) { o.data_ = nullptr; o.n_ = 0; }

    std::size_t size() const { return n_; }
    fftw_complex* raw() { return data_; }
    double& re(std::size_t i) { return data_[i][0]; }
    double& im(std::size_t i) { return data_[i][1]; }
    double re(std::size_t i) const { return data_[i][0]; }
    double im(std::size_t i) const { return data_[i][1]; }

private:
    std::size_t n_;
    fftw_complex* data_;
};

/// Unnormalised forward DFT over a row-major array with the given extents.
class Plan {
public:
    explicit Plan(std::vector<int> extents) : extents_(std::move(extents)) {
        std::size_t total = 1;
        for (int e : extents_) total *= static_cast<std::size_t>(e);
        Buffer scratch(total);
        std::lock_guard lock(planner_mutex());
        // ESTIMATE keeps the chosen algorithm, and therefore the bits, independent of timing
        plan_ = fftw_plan_dft(static_cast<int>(extents_.size()), extents_.data(), scratch.raw(), scratch.raw(), FFTW_FORWARD,
                              FFTW_ESTIMATE);
        if (!plan_) throw std::bad_alloc();
        size_ = total;
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    std::size_t size() const { return size_; }
    const std::vector<int>& extents() const { return extents_; }

    void execute(Buffer& b) const { fftw_execute_dft(plan_, b.raw(), b.raw()); }

private:
    std::vector<int> extents_;
    std::size_t size_ = 0;
    fftw_plan plan_ = nullptr;
};

}  // namespace cauchy::fft
