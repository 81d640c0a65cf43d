#include <gtest/gtest.h>

#include <cstring>
#include <sstream>
#include <string>

#include "cauchy/field_io.hpp"

using namespace cauchy;

namespace {

FieldGrid sample_field(int dim) {
    GridSpec g;
    g.dim = dim;
    g.points = 8;
    g.spacing = dim == 1 ? std::vector<double>{0.125} : std::vector<double>{0.5, 0.25};
    g.seed = 0x0123456789abcdefull;
    if (dim == 1) return simulate_gfgcc(KernelParams(1.0, 1.0), g);
    return simulate_gsgcc(SheetParams({1.0, 0.5}, {1.0, 2.0}), g);
}

}  // namespace

TEST(Binary, HeaderLayout) {
    const FieldGrid f = sample_field(2);
    std::ostringstream os;
    write_binary(f, os);
    const std::string s = os.str();
    ASSERT_GE(s.size(), 16u + 64u * 8u);
    EXPECT_EQ(s.substr(0, 4), "CFLD");
    const unsigned char* b = reinterpret_cast<const unsigned char*>(s.data());
    EXPECT_EQ(b[4] | (b[5] << 8), 1);
    EXPECT_EQ(b[6] | (b[7] << 8), 2);
    EXPECT_EQ(b[8], 8);
    EXPECT_EQ(b[12], 8);
    double first;
    std::memcpy(&first, s.data() + 16, 8);
    EXPECT_EQ(first, f[0]);
    EXPECT_EQ(s.substr(16 + 64 * 8, 4), "META");
}

TEST(Binary, RoundTrip) {
    for (int dim : {1, 2}) {
        const FieldGrid f = sample_field(dim);
        std::stringstream ss;
        write_binary(f, ss);
        const FieldGrid g = read_binary(ss);
        EXPECT_EQ(g.grid().dim, dim);
        EXPECT_EQ(g.grid().points, 8u);
        EXPECT_EQ(g.grid().seed, f.grid().seed);
        for (int i = 0; i < dim; ++i) EXPECT_EQ(g.grid().step(i), f.grid().step(i));
        EXPECT_EQ(g.kernel_tag(), f.kernel_tag());
        ASSERT_EQ(g.values().size(), f.values().size());
        EXPECT_EQ(std::memcmp(g.values().data(), f.values().data(), f.values().size() * 8), 0);
    }
}

TEST(Binary, WithoutTrailer) {
    const FieldGrid f = sample_field(1);
    std::ostringstream os;
    write_binary(f, os);
    std::istringstream is(os.str().substr(0, 16 + 8 * 8));
    const FieldGrid g = read_binary(is);
    EXPECT_EQ(g.grid().step(0), 1.0);
    EXPECT_EQ(g.grid().seed, 0u);
    EXPECT_EQ(g.kernel_tag(), "");
    EXPECT_EQ(g[3], f[3]);
}

TEST(Binary, RejectsMalformed) {
    std::istringstream bad_magic("XFLD0000000000000000");
    EXPECT_THROW(read_binary(bad_magic), ParameterError);
    const FieldGrid f = sample_field(1);
    std::ostringstream os;
    write_binary(f, os);
    std::istringstream truncated(os.str().substr(0, 40));
    EXPECT_THROW(read_binary(truncated), ParameterError);
    std::string s = os.str();
    s[4] = 9;
    std::istringstream version(s);
    EXPECT_THROW(read_binary(version), ParameterError);
    EXPECT_THROW(read_binary(std::string("/nonexistent/field.bin")), ParameterError);
}

TEST(Csv, LongFormat) {
    const FieldGrid f = sample_field(2);
    std::ostringstream os;
    write_csv(f, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "i,j,x,y,value");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    EXPECT_EQ(rows, 64);

    const FieldGrid g = sample_field(1);
    std::ostringstream o1;
    write_csv(g, o1);
    std::istringstream i1(o1.str());
    std::getline(i1, line);
    EXPECT_EQ(line, "i,x,value");
    std::getline(i1, line);
    std::getline(i1, line);
    const auto last = line.rfind(',');
    EXPECT_EQ(std::stod(line.substr(last + 1)), g[1]);
    EXPECT_EQ(line.substr(0, 8), "1,0.125,");
}
