#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "glab/profile.hpp"

using namespace glab;

namespace {

// 1 + 2r + 3r^2 - r^3 + r^4/2 and its derivatives.
double quartic(double r, int k) {
    switch (k) {
        case 0: return 1 + 2 * r + 3 * r * r - r * r * r + 0.5 * r * r * r * r;
        case 1: return 2 + 6 * r - 3 * r * r + 2 * r * r * r;
        case 2: return 6 - 6 * r + 6 * r * r;
        case 3: return -6 + 12 * r;
        default: return 12.0;
    }
}

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST(LogGrid, Shape) {
    const auto g = log_grid(1e-3, 10.0, 100);
    EXPECT_DOUBLE_EQ(g.front(), 1e-3);
    EXPECT_DOUBLE_EQ(g.back(), 10.0);
    EXPECT_EQ(g.size(), 401u);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
    EXPECT_THROW(log_grid(1.0, 0.5), DomainError);
}

TEST(RadialProfile, QuarticReconstruction) {
    const auto grid = log_grid(1e-3, 10.0, 20);
    std::vector<double> v;
    for (double r : grid) v.push_back(quartic(r, 0));
    const RadialProfile p(grid, v);
    for (double r : {0.05, 0.37, 0.9, 4.2}) {
        for (int k = 0; k <= 3; ++k)
            EXPECT_NEAR(p.derivative(r, k), quartic(r, k), 1e-8 * std::max(1.0, std::abs(quartic(r, k))))
                << "r=" << r << " k=" << k;
        EXPECT_NEAR(p.derivative(r, 4), 12.0, 12.0 * 1e-5) << "r=" << r;
    }
}

TEST(RadialProfile, Validation) {
    EXPECT_THROW(RadialProfile({1, 2, 3}, {1, 2, 3}), DomainError);
    const auto g = log_grid(0.1, 1.0, 10);
    std::vector<double> v(g.size(), 0.0);
    v[3] = std::nan("");
    EXPECT_THROW(RadialProfile(g, v), DomainError);
    const RadialProfile ok(g, std::vector<double>(g.size(), 1.0));
    EXPECT_THROW(ok.value(2.0), DomainError);
    EXPECT_THROW(ok.derivative(0.5, 5), DomainError);
}

TEST(ProfileCsv, RoundTrip) {
    const auto grid = log_grid(1e-2, 10.0, 50);
    std::vector<double> v;
    for (double r : grid) v.push_back(std::sin(r) / 3.0);
    const RadialProfile p(grid, v);
    const auto path = temp_path("glab_profile_roundtrip.csv");
    write_profile_csv(p, path);
    const auto q = read_profile_csv(path);
    ASSERT_EQ(q.grid().size(), grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_EQ(q.grid()[i], grid[i]);
        EXPECT_EQ(q.values()[i], v[i]);
    }
    std::filesystem::remove(path);
}

TEST(ProfileCsv, BadInput) {
    EXPECT_THROW(read_profile_csv(temp_path("glab_no_such_profile.csv")), IoError);
    const auto path = temp_path("glab_bad_profile.csv");
    {
        std::ofstream os(path);
        os << "x,y\n1,2\n";
    }
    EXPECT_THROW(read_profile_csv(path), IoError);
    {
        std::ofstream os(path);
        os << "r,u\n1;2\n";
    }
    EXPECT_THROW(read_profile_csv(path), IoError);
    std::filesystem::remove(path);
    EXPECT_THROW(write_profile_csv(RadialProfile(log_grid(1, 2, 10), std::vector<double>(9, 0.0)),
                                   "/nonexistent_dir/x.csv"),
                 IoError);
}
