#include "doctest.h"

#include <cmath>
#include <random>

#include "tracksar/adc_model.hpp"

using namespace tracksar;

namespace {
AdcConfig ideal_config() {
    AdcConfig c;
    c.bits = 8;
    c.vref = 1.0;
    c.unit_cap = 15e-15;
    c.cap_mismatch_sigma = 0.0;
    return c;
}
}  // namespace

TEST_CASE("ideal capacitor array weights") {
    std::mt19937_64 rng(1);
    CapArray arr = make_cap_array(ideal_config(), rng);
    REQUIRE(arr.caps.size() == 8);
    // Compare in unit-capacitor multiples: at farad magnitudes Approx's
    // default tolerance is effectively absolute and would accept anything.
    for (int i = 0; i < 8; ++i) {
        CHECK(arr.caps[i] / 15e-15 == doctest::Approx(1 << i).epsilon(1e-12));
    }
    CHECK(arr.dummy_cap / 15e-15 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(arr.total_cap / 15e-15 == doctest::Approx(256.0).epsilon(1e-12));
}

TEST_CASE("dac voltage equals code/2^bits with ideal weights") {
    std::mt19937_64 rng(1);
    CapArray arr = make_cap_array(ideal_config(), rng);
    CHECK(dac_voltage(arr, 0) == 0.0);
    CHECK(dac_voltage(arr, 128) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dac_voltage(arr, 255) == doctest::Approx(255.0 / 256.0).epsilon(1e-12));
    CHECK(dac_voltage(arr, 1) == doctest::Approx(1.0 / 256.0).epsilon(1e-12));
    // Independent oracle: sum the selected weights by hand for a mixed code.
    int code = 0b10110101;
    double num = 0.0;
    for (int i = 0; i < 8; ++i) {
        if (code & (1 << i)) num += arr.caps[i];
    }
    CHECK(dac_voltage(arr, code) ==
          doctest::Approx(num / arr.total_cap).epsilon(1e-14));
    CHECK_THROWS(dac_voltage(arr, -1));
    CHECK_THROWS(dac_voltage(arr, 256));
}

TEST_CASE("input sampling clamps to the reference range") {
    std::mt19937_64 rng(1);
    CapArray arr = make_cap_array(ideal_config(), rng);
    sample_input(arr, 0.3);
    CHECK(arr.held_input == 0.3);
    CHECK_FALSE(arr.input_clamped);
    sample_input(arr, -0.1);
    CHECK(arr.held_input == 0.0);
    CHECK(arr.input_clamped);
    sample_input(arr, 1.2);
    CHECK(arr.held_input == 1.0);
    CHECK(arr.input_clamped);
    sample_input(arr, 0.9);
    CHECK_FALSE(arr.input_clamped);
    CHECK_THROWS(sample_input(arr, std::nan("")));
}

TEST_CASE("comparator is strict: ties resolve low") {
    std::mt19937_64 rng(7);
    CHECK_FALSE(compare(0.5, 0.5, 0.0, 0.0, rng));
    CHECK(compare(0.5 + 1e-12, 0.5, 0.0, 0.0, rng));
    CHECK_FALSE(compare(0.5 - 1e-12, 0.5, 0.0, 0.0, rng));

    Comparator cmp;
    CHECK_FALSE(cmp(0.25, 0.25));
    CHECK(cmp(0.26, 0.25));
}

TEST_CASE("comparator offset shifts the threshold") {
    std::mt19937_64 rng(7);
    // Positive offset: input must exceed vdac + offset.
    CHECK_FALSE(compare(0.505, 0.5, 0.0, 0.01, rng));
    CHECK(compare(0.515, 0.5, 0.0, 0.01, rng));
    CHECK(compare(0.495, 0.5, 0.0, -0.01, rng));
}

TEST_CASE("comparator noise statistics") {
    std::mt19937_64 rng(42);
    Comparator cmp;
    cmp.noise_sigma = 1e-3;
    cmp.rng = &rng;

    SUBCASE("at the trip point, decisions split about evenly") {
        int ones = 0;
        const int trials = 20000;
        for (int i = 0; i < trials; ++i) ones += cmp(0.5, 0.5) ? 1 : 0;
        double frac = double(ones) / trials;
        CHECK(frac > 0.47);
        CHECK(frac < 0.53);
    }
    SUBCASE("three sigma above the trip point, decisions are nearly sure") {
        int ones = 0;
        const int trials = 5000;
        for (int i = 0; i < trials; ++i) ones += cmp(0.5 + 3e-3, 0.5) ? 1 : 0;
        CHECK(double(ones) / trials > 0.98);
    }
    SUBCASE("noise without a generator is an error") {
        Comparator bad;
        bad.noise_sigma = 1e-3;
        CHECK_THROWS(bad(0.5, 0.4));
    }
}

TEST_CASE("capacitor mismatch statistics") {
    AdcConfig c = ideal_config();
    c.cap_mismatch_sigma = 0.002;

    SUBCASE("per-bit deviation scales as sigma/sqrt(weight)") {
        // 6-sigma bound per cap; ~2e-9 failure odds per draw make this a
        // deterministic check in practice.
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            std::mt19937_64 rng(seed);
            CapArray arr = make_cap_array(c, rng);
            for (int i = 0; i < 8; ++i) {
                double nominal = (1 << i) * c.unit_cap;
                double rel = std::abs(arr.caps[i] / nominal - 1.0);
                CHECK(rel < 6.0 * 0.002 / std::sqrt(double(1 << i)));
                CHECK(arr.caps[i] > 0.0);
            }
        }
    }
    SUBCASE("same seed reproduces the array, different seed does not") {
        std::mt19937_64 a(9), b(9), d(10);
        CapArray arr_a = make_cap_array(c, a);
        CapArray arr_b = make_cap_array(c, b);
        CapArray arr_d = make_cap_array(c, d);
        CHECK(arr_a.caps == arr_b.caps);
        CHECK(arr_a.caps != arr_d.caps);
    }
    SUBCASE("sigma zero draws nothing and stays exactly nominal") {
        AdcConfig ideal = ideal_config();
        std::mt19937_64 rng(3);
        CapArray arr = make_cap_array(ideal, rng);
        for (int i = 0; i < 8; ++i) {
            CHECK(arr.caps[i] == (1 << i) * ideal.unit_cap);
        }
    }
}

TEST_CASE("configuration validation") {
    std::mt19937_64 rng(1);
    AdcConfig c = ideal_config();
    c.bits = 3;
    CHECK_THROWS(make_cap_array(c, rng));
    c = ideal_config();
    c.vref = 0.0;
    CHECK_THROWS(make_cap_array(c, rng));
    c = ideal_config();
    c.unit_cap = -1e-15;
    CHECK_THROWS(make_cap_array(c, rng));
    c = ideal_config();
    c.cap_mismatch_sigma = -0.1;
    CHECK_THROWS(make_cap_array(c, rng));
}
