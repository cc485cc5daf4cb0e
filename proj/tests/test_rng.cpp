#include "doctest.h"

#include <vector>

#include "collapse/rng.hpp"
#include "stat_utils.hpp"

using namespace collapse;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference vectors from the Random123 known-answers file.
    {
        const auto out = Philox4x32::block({0u, 0u, 0u, 0u}, {0u, 0u});
        CHECK(out[0] == 0x6627e8d5u);
        CHECK(out[1] == 0xe169c58du);
        CHECK(out[2] == 0xbc57ac4cu);
        CHECK(out[3] == 0x9b00dbd8u);
    }
    {
        const auto out = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                           {0xffffffffu, 0xffffffffu});
        CHECK(out[0] == 0x408f276du);
        CHECK(out[1] == 0x41c83b0eu);
        CHECK(out[2] == 0xa20bc7c6u);
        CHECK(out[3] == 0x6d5451fdu);
    }
    {
        const auto out = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                           {0xa4093822u, 0x299f31d0u});
        CHECK(out[0] == 0xd16cfe09u);
        CHECK(out[1] == 0x94fdccebu);
        CHECK(out[2] == 0x5001e420u);
        CHECK(out[3] == 0x24126ea1u);
    }
}

TEST_CASE("streams are reproducible and distinct") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool same_c = true, same_d = true;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        same_c = same_c && va == c.next_u64();
        same_d = same_d && va == d.next_u64();
    }
    CHECK_FALSE(same_c);
    CHECK_FALSE(same_d);
}

TEST_CASE("uniform01 lies in (0, 1]") {
    RngStream rng(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("normal draws pass a KS test against the standard normal") {
    RngStream rng(2024, 0);
    std::vector<double> z(100000);
    rng.fill_normals(z);
    CHECK(oracle::ks_passes(z, oracle::normal_cdf, 0.01));
    CHECK(oracle::mean(z) == doctest::Approx(0.0).epsilon(0.02));
    CHECK(oracle::variance(z) == doctest::Approx(1.0).epsilon(0.02));
}
