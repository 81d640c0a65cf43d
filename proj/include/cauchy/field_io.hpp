#pragma once

// FieldGrid serialisation.
//
// Binary layout, all little-endian:
//   "CFLD" | u16 version | u16 dim | u32 n0 | u32 n1      (16 bytes; n1 = 1 for 1-D)
//   n0 * n1 float64 values, row-major
//   optional trailer: "META" | dim x f64 spacing | u64 seed | u32 tag length | tag bytes
// Files without the trailer read back with unit spacing, seed 0 and an empty tag.

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "cauchy/error.hpp"
#include "cauchy/simulate.hpp"

namespace cauchy {

namespace detail {

inline constexpr std::uint16_t kFieldVersion = 1;

template <class U>
void put_le(std::ostream& os, U v) {
    unsigned char b[sizeof(U)];
    for (std::size_t i = 0; i < sizeof(U); ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), sizeof(U));
}

template <class U>
bool get_le(std::istream& is, U& v) {
    unsigned char b[sizeof(U)];
    if (!is.read(reinterpret_cast<char*>(b), sizeof(U))) return false;
    v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(b[i]) << (8 * i);
    return true;
}

inline void put_f64(std::ostream& os, double x) { put_le(os, std::bit_cast<std::uint64_t>(x)); }

inline double get_f64(std::istream& is) {
    std::uint64_t u;
    if (!get_le(is, u)) throw ParameterError("field file truncated");
    return std::bit_cast<double>(u);
}

}  // namespace detail

inline void write_binary(const FieldGrid& f, std::ostream& os) {
    const GridSpec& g = f.grid();
    os.write("CFLD", 4);
    detail::put_le<std::uint16_t>(os, detail::kFieldVersion);
    detail::put_le<std::uint16_t>(os, static_cast<std::uint16_t>(g.dim));
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.points));
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim == 2 ? g.points : 1));
    for (double v : f.values()) detail::put_f64(os, v);
    os.write("META", 4);
    for (int i = 0; i < g.dim; ++i) detail::put_f64(os, g.step(i));
    detail::put_le<std::uint64_t>(os, g.seed);
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.kernel_tag().size()));
    os.write(f.kernel_tag().data(), static_cast<std::streamsize>(f.kernel_tag().size()));
    if (!os) throw Error("failed to write field");
}

inline FieldGrid read_binary(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::string(magic, 4) != "CFLD") throw ParameterError("not a CFLD field file");
    std::uint16_t version = 0, dim = 0;
    std::uint32_t n0 = 0, n1 = 0;
    if (!detail::get_le(is, version) || !detail::get_le(is, dim) || !detail::get_le(is, n0) || !detail::get_le(is, n1))
        throw ParameterError("field header truncated");
    if (version != detail::kFieldVersion) throw ParameterError("unsupported field file version " + std::to_string(version));
    if (dim == 1 ? n1 != 1 : (dim != 2 || n1 != n0)) throw ParameterError("field header has inconsistent extents");

    GridSpec g;
    g.dim = dim;
    g.points = n0;
    const std::size_t total = static_cast<std::size_t>(n0) * n1;
    std::vector<double> values(total);
    for (auto& v : values) v = detail::get_f64(is);

    std::string tag;
    char meta[4];
    if (is.read(meta, 4) && std::string(meta, 4) == "META") {
        g.spacing.assign(dim, 1.0);
        for (auto& h : g.spacing) h = detail::get_f64(is);
        std::uint32_t len = 0;
        if (!detail::get_le(is, g.seed) || !detail::get_le(is, len)) throw ParameterError("field trailer truncated");
        tag.resize(len);
        if (len > 0 && !is.read(tag.data(), len)) throw ParameterError("field trailer truncated");
    }
    g.validate();
    return FieldGrid(g, std::move(values), std::move(tag));
}

inline void write_binary(const FieldGrid& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path + " for writing");
    write_binary(f, os);
}

inline FieldGrid read_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParameterError("cannot open " + path);
    return read_binary(is);
}

/// Long format: i[,j],x[,y],value with 17 significant digits.
inline void write_csv(const FieldGrid& f, std::ostream& os) {
    const GridSpec& g = f.grid();
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    if (g.dim == 1) {
        os << "i,x,value\n";
        for (std::size_t i = 0; i < g.points; ++i) os << i << ',' << i * g.step(0) << ',' << f[i] << '\n';
    } else {
        os << "i,j,x,y,value\n";
        for (std::size_t i = 0; i < g.points; ++i)
            for (std::size_t j = 0; j < g.points; ++j)
                os << i << ',' << j << ',' << i * g.step(0) << ',' << j * g.step(1) << ',' << f.at(i, j) << '\n';
    }
}

}  // namespace cauchy
