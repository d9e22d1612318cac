#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "tracksar/config_io.hpp"

using namespace tracksar;

namespace {
std::string write_temp(const char* name, const char* text) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << text;
    out.close();
    return path;
}
}  // namespace

TEST_CASE("single entries land in the right fields") {
    AdcConfig c;
    apply_config_entry(c, "bits", "10");
    CHECK(c.bits == 10);
    apply_config_entry(c, "vref", "1.2");
    CHECK(c.vref == 1.2);
    apply_config_entry(c, "unit_cap", "2e-14");
    CHECK(c.unit_cap == 2e-14);
    apply_config_entry(c, "max_sample_rate", "2e6");
    CHECK(c.max_sample_rate == 2e6);
    apply_config_entry(c, "mode", "tracking");
    CHECK(c.mode == Mode::Tracking);
    apply_config_entry(c, "osr", "128");
    CHECK(c.osr == 128);
    apply_config_entry(c, "comparator_noise_sigma", "0.001");
    CHECK(c.comparator_noise_sigma == 0.001);
    apply_config_entry(c, "comparator_offset", "-0.002");
    CHECK(c.comparator_offset == -0.002);
    apply_config_entry(c, "cap_mismatch_sigma", "0.002");
    CHECK(c.cap_mismatch_sigma == 0.002);
    apply_config_entry(c, "rng_seed", "99");
    CHECK(c.rng_seed == 99);

    apply_config_entry(c, "step_policy", "eq13");
    CHECK(c.step_policy.kind == StepPolicyKind::Eq13PowerOfTwo);
    apply_config_entry(c, "step_policy", "coverage");
    CHECK(c.step_policy.kind == StepPolicyKind::CoveragePowerOfTwo);
    apply_config_entry(c, "step_policy", "16");
    CHECK(c.step_policy.kind == StepPolicyKind::Explicit);
    CHECK(c.step_policy.explicit_value == 16);
}

TEST_CASE("bad entries are rejected with the offending key") {
    AdcConfig c;
    CHECK_THROWS_WITH_AS(apply_config_entry(c, "bits", "eight"),
                         doctest::Contains("'bits'"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(apply_config_entry(c, "vref", "1.0.0"),
                         doctest::Contains("'vref'"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(apply_config_entry(c, "mode", "turbo"),
                         doctest::Contains("regular|tracking"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(apply_config_entry(c, "flux", "1"),
                         doctest::Contains("unknown key"),
                         std::invalid_argument);
    CHECK_THROWS(apply_config_entry(c, "step_policy", "sometimes"));
}

TEST_CASE("a config file loads with comments and spacing") {
    auto path = write_temp("tracksar_cfg1.conf",
                           "# converter setup\n"
                           "bits = 8\n"
                           "mode = tracking   # slow-signal mode\n"
                           "\n"
                           "osr = 64\n"
                           "step_policy = coverage\n"
                           "rng_seed = 7\n");
    AdcConfig c = load_config_file(path);
    CHECK(c.bits == 8);
    CHECK(c.mode == Mode::Tracking);
    CHECK(c.osr == 64);
    CHECK(c.step_policy.kind == StepPolicyKind::CoveragePowerOfTwo);
    CHECK(c.rng_seed == 7);
    std::remove(path.c_str());
}

TEST_CASE("file errors carry the path and line number") {
    SUBCASE("missing equals sign") {
        auto path = write_temp("tracksar_cfg2.conf", "bits = 8\nosr 64\n");
        CHECK_THROWS_WITH_AS(load_config_file(path),
                             doctest::Contains("line 2"), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("bad value") {
        auto path = write_temp("tracksar_cfg3.conf", "\n\nvref = plenty\n");
        CHECK_THROWS_WITH_AS(load_config_file(path),
                             doctest::Contains("line 3"), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("missing file") {
        CHECK_THROWS(load_config_file("/tmp/tracksar_no_such.conf"));
    }
}

TEST_CASE("display names round-trip the enums") {
    CHECK(mode_name(Mode::Regular) == "regular");
    CHECK(mode_name(Mode::Tracking) == "tracking");
    CHECK(policy_name(StepPolicy::eq13()) == "eq13");
    CHECK(policy_name(StepPolicy::coverage()) == "coverage");
    CHECK(policy_name(StepPolicy::explicit_step(8)) == "8");
    CHECK(accounting_name(ChargeAccounting::DrawnOnly) == "drawn_only");
    CHECK(accounting_name(ChargeAccounting::NetCharge) == "net_charge");
}
