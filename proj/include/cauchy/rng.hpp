#pragma once

// Philox4x32-10 counter-based generator.  A (seed, stream, index) triple maps
// to one 128-bit block, so any node of any realization can be drawn
// independently of the others and of the thread that draws it.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace cauchy::rng {

using Block = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

namespace detail {

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace detail

inline Block philox4x32(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += detail::kWeyl0;
            key[1] += detail::kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        detail::mulhilo(detail::kMul0, ctr[0], hi0, lo0);
        detail::mulhilo(detail::kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

/// Uniform in (0, 1) from 64 random bits, never exactly 0 or 1.
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t x = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(x >> 12) + 0.5) * 0x1.0p-52;
}

/// Stream layout: key = seed, counter = (index, stream), each 64-bit split low word first.
class Philox {
public:
    explicit Philox(std::uint64_t seed) : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    Block block(std::uint64_t stream, std::uint64_t index) const {
        return philox4x32({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                           static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
                          key_);
    }

    /// Two independent standard normals (Box-Muller) for one (stream, index).
    std::pair<double, double> normal_pair(std::uint64_t stream, std::uint64_t index) const {
        const Block b = block(stream, index);
        const double u1 = to_open_unit(b[0], b[1]);
        const double u2 = to_open_unit(b[2], b[3]);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    std::pair<double, double> uniform_pair(std::uint64_t stream, std::uint64_t index) const {
        const Block b = block(stream, index);
        return {to_open_unit(b[0], b[1]), to_open_unit(b[2], b[3])};
    }

private:
    Key key_;
};

}  // namespace cauchy::rng
