#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "tracksar/signals.hpp"

using namespace tracksar;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string write_temp(const char* name, const char* text) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << text;
    out.close();
    return path;
}
}  // namespace

TEST_CASE("sine generator produces the sampled cosine") {
    Waveform w = gen_sine(0.5, 1000.0, 64000.0, 0.0, 0.5, 128);
    REQUIRE(w.samples.size() == 128);
    CHECK(w.sample_rate == 64000.0);
    CHECK(w.samples[0] == doctest::Approx(1.0));
    for (std::size_t n = 0; n < w.samples.size(); ++n) {
        double expect = 0.5 + 0.5 * std::cos(2.0 * kPi * 1000.0 * n / 64000.0);
        CHECK(w.samples[n] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("sine generator validation") {
    CHECK_THROWS(gen_sine(-0.1, 1000.0, 64000.0, 0.0, 0.5, 16));
    CHECK_THROWS(gen_sine(0.5, -1.0, 64000.0, 0.0, 0.5, 16));
    CHECK_THROWS(gen_sine(0.5, 32000.0, 64000.0, 0.0, 0.5, 16));  // at Nyquist
    CHECK_THROWS(gen_sine(0.5, 1000.0, 0.0, 0.0, 0.5, 16));
    CHECK_THROWS(gen_sine(0.5, 1000.0, 64000.0, 0.0, 0.5, 0));
    CHECK_THROWS(gen_sine(std::nan(""), 1000.0, 64000.0, 0.0, 0.5, 16));
}

TEST_CASE("coherent sine spans an integer number of periods") {
    Waveform w = gen_sine_coherent(0.5, 0.5, 1e6, 4096, 31);
    REQUIRE(w.samples.size() == 4096);
    // Integer cycles: the sequence repeats exactly when wrapped.
    double f = 31.0 * 1e6 / 4096.0;
    for (std::size_t n = 0; n < 64; ++n) {
        double expect = 0.5 + 0.5 * std::cos(2.0 * kPi * f * n / 1e6);
        CHECK(w.samples[n] == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK_THROWS(gen_sine_coherent(0.5, 0.5, 1e6, 4096, 30));    // even
    CHECK_THROWS(gen_sine_coherent(0.5, 0.5, 1e6, 4096, 2049));  // >= N/2
}

TEST_CASE("cycle counts for slow-signal operation") {
    // Tone frequency must stay at or below fs / (2 * osr); the cycle count is
    // the largest odd J <= N/(2*osr) that is coprime with N.
    CHECK(coherent_cycles_for_osr(4096, 64) == 31);
    CHECK(coherent_cycles_for_osr(4096, 32) == 63);
    CHECK(coherent_cycles_for_osr(4096, 256) == 7);
    CHECK(coherent_cycles_for_osr(4096, 2048) == 1);
    CHECK_THROWS(coherent_cycles_for_osr(4096, 4096));

    for (int osr : {2, 4, 8, 16, 32, 64, 128, 256}) {
        int j = coherent_cycles_for_osr(4096, osr);
        CHECK(j % 2 == 1);
        CHECK(std::gcd(j, 4096) == 1);
        CHECK(j * 2 * osr <= 4096);
    }
}

TEST_CASE("ramp endpoints are exact") {
    Waveform w = gen_ramp(0.0, 1.0, 1001);
    REQUIRE(w.samples.size() == 1001);
    CHECK(w.samples.front() == 0.0);
    CHECK(w.samples.back() == 1.0);
    CHECK(w.samples[500] == doctest::Approx(0.5).epsilon(1e-12));
    for (std::size_t n = 1; n < w.samples.size(); ++n) {
        CHECK(w.samples[n] > w.samples[n - 1]);
    }

    Waveform down = gen_ramp(1.0, 0.0, 11);
    CHECK(down.samples.front() == 1.0);
    CHECK(down.samples.back() == 0.0);
    CHECK_THROWS(gen_ramp(0.0, 1.0, 1));
}

TEST_CASE("csv ingest") {
    SUBCASE("plain column of voltages") {
        auto path = write_temp("tracksar_sig1.csv", "0.1\n0.2\n0.3\n");
        Waveform w = from_csv(path, 1e6);
        REQUIRE(w.samples.size() == 3);
        CHECK(w.samples[1] == doctest::Approx(0.2));
        CHECK(w.sample_rate == 1e6);
        std::remove(path.c_str());
    }
    SUBCASE("header line and blank lines are skipped") {
        auto path = write_temp("tracksar_sig2.csv", "vin\n0.25\n\n0.75\n");
        Waveform w = from_csv(path, 1e6);
        REQUIRE(w.samples.size() == 2);
        CHECK(w.samples[0] == doctest::Approx(0.25));
        CHECK(w.samples[1] == doctest::Approx(0.75));
        std::remove(path.c_str());
    }
    SUBCASE("windows line endings") {
        auto path = write_temp("tracksar_sig3.csv", "0.5\r\n0.6\r\n");
        Waveform w = from_csv(path, 1e6);
        REQUIRE(w.samples.size() == 2);
        CHECK(w.samples[1] == doctest::Approx(0.6));
        std::remove(path.c_str());
    }
    SUBCASE("garbage rows are reported with their line number") {
        auto path = write_temp("tracksar_sig4.csv", "0.5\nnot-a-number\n");
        CHECK_THROWS_WITH_AS(from_csv(path, 1e6),
                             doctest::Contains("line 2"), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("empty file is an error") {
        auto path = write_temp("tracksar_sig5.csv", "");
        CHECK_THROWS(from_csv(path, 1e6));
        std::remove(path.c_str());
    }
    SUBCASE("missing file is an error") {
        CHECK_THROWS(from_csv("/tmp/tracksar_does_not_exist.csv", 1e6));
    }
}
