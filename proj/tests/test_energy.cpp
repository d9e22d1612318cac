#include "doctest.h"

#include <cmath>
#include <random>

#include "tracksar/energy.hpp"
#include "tracksar/engine.hpp"

using namespace tracksar;

namespace {

AdcConfig base_config(Mode mode) {
    AdcConfig c;
    c.bits = 8;
    c.vref = 1.0;
    c.unit_cap = 15e-15;
    c.mode = mode;
    c.osr = 64;
    return c;
}

CapArray ideal_array() {
    std::mt19937_64 rng(1);
    return make_cap_array(base_config(Mode::Regular), rng);
}

constexpr double kCu = 15e-15;

}  // namespace

TEST_CASE("reference draw for canonical transitions") {
    CapArray arr = ideal_array();
    auto drawn = [&](int from, int to, double vin) {
        return dac_transition_energy(arr, from, to, vin,
                                     ChargeAccounting::DrawnOnly);
    };
    // Hand-computed charge flows at vin = 0, compared in unit-cap charges
    // (kCu*vref^2) so the tolerances are relative, not absolute joules.
    // Derivation for the MSB: with the input at ground, connecting the MSB
    // moves its bottom plate to vref while the top plate settles at vref/2,
    // so the reference supplies C7*vref/2 = 64 Cu.
    CHECK(drawn(0, 128, 0.0) / kCu ==
          doctest::Approx(64.0).epsilon(1e-12));  // 0.96 pJ
    // Stepping down from the MSB re-charges the top plate through C6 and
    // costs more than the step up did: 80 Cu.
    CHECK(drawn(128, 64, 0.0) / kCu == doctest::Approx(80.0).epsilon(1e-12));
    // Dropping the MSB for the six lower bits: 127.496 Cu.
    CHECK(drawn(128, 127, 0.0) / kCu ==
          doctest::Approx(127.49609375).epsilon(1e-12));
    CHECK(drawn(127, 128, 0.0) / kCu ==
          doctest::Approx(127.5).epsilon(1e-12));
    // No movement, no draw; and a decrement to ground draws nothing.
    CHECK(drawn(100, 100, 0.25) == 0.0);
    CHECK(drawn(1, 0, 0.0) == 0.0);

    CHECK_THROWS(drawn(-1, 0, 0.0));
    CHECK_THROWS(drawn(0, 256, 0.0));
    CHECK_THROWS(drawn(0, 1, std::nan("")));
}

TEST_CASE("reference draw is never negative") {
    CapArray arr = ideal_array();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> code(0, 255);
    std::uniform_real_distribution<double> vin(0.0, 1.0);
    for (int t = 0; t < 2000; ++t) {
        double e = dac_transition_energy(arr, code(rng), code(rng), vin(rng),
                                         ChargeAccounting::DrawnOnly);
        CHECK(e >= 0.0);
    }
}

TEST_CASE("an MSB crossing outweighs any non-crossing single-code step") {
    CapArray arr = ideal_array();
    double crossing = dac_transition_energy(arr, 128, 127, 0.0,
                                            ChargeAccounting::DrawnOnly);
    for (int c = 0; c < 255; ++c) {
        if (c == 127) continue;  // the crossing pair itself
        double up = dac_transition_energy(arr, c, c + 1, 0.0,
                                          ChargeAccounting::DrawnOnly);
        double down = dac_transition_energy(arr, c + 1, c, 0.0,
                                            ChargeAccounting::DrawnOnly);
        CHECK(crossing > up);
        CHECK(crossing > down);
    }
}

TEST_CASE("net-charge accounting is a state function") {
    CapArray arr = ideal_array();
    auto net = [&](int from, int to, double vin) {
        return dac_transition_energy(arr, from, to, vin,
                                     ChargeAccounting::NetCharge);
    };
    SUBCASE("out-and-back cancels exactly") {
        for (auto [a, b] : {std::pair{0, 128}, {37, 216}, {254, 255}, {128, 64}}) {
            double out = net(a, b, 0.3);
            double back = net(b, a, 0.3);
            CHECK(out + back == 0.0);
        }
    }
    SUBCASE("longer closed walks cancel to rounding") {
        int walk[] = {10, 200, 55, 255, 0, 128, 10};
        double sum = 0.0;
        for (int i = 0; i + 1 < 7; ++i) {
            sum += net(walk[i], walk[i + 1], 0.7);
        }
        CHECK(std::fabs(sum) < 1e-24);  // femto-fractions of the pJ scale
    }
    SUBCASE("path independence") {
        double direct = net(20, 220, 0.5);
        double via = net(20, 97, 0.5) + net(97, 220, 0.5);
        CHECK(direct / 1e-15 == doctest::Approx(via / 1e-15).epsilon(1e-9));
    }
}

TEST_CASE("full-conversion energy, hand-tallied oracles") {
    EnergyModelParams params;  // 50 fJ/decision, 100 fJ/cycle, drawn-only

    SUBCASE("regular conversion of half an LSB above ground") {
        // The first comparison sends the code up, everything after walks it
        // back down: 0,128,64,32,16,8,4,2,1,(final)->0. Summing each event
        // by hand: 64 + 80 + 36 + 17 + 8.25 + 4.0625 + 2.015625 + 1.00390625
        // = 212.33203125 unit-cap charges. (At exactly 0 V every decision is
        // low, the code never leaves 0 and the DAC draws nothing.)
        Engine eng(base_config(Mode::Regular));
        ConversionRecord rec = eng.convert_sample(1.0 / 512.0, 0);
        REQUIRE(rec.code == 0);
        REQUIRE_FALSE(rec.overload);
        ConversionEnergy e =
            conversion_energy(rec.trace, eng.cap_array(), params);
        CHECK(e.dac / kCu == doctest::Approx(212.33203125).epsilon(1e-9));
        CHECK(e.comparator / 1e-15 == doctest::Approx(9 * 50.0).epsilon(1e-12));
        CHECK(e.logic / 1e-15 == doctest::Approx(9 * 100.0).epsilon(1e-12));
        CHECK(e.total() / 1e-12 ==
              doctest::Approx((e.dac + 1.35e-12) / 1e-12).epsilon(1e-12));

        SUBCASE("exactly at ground the DAC never switches") {
            Engine ground(base_config(Mode::Regular));
            ConversionRecord still = ground.convert_sample(0.0, 0);
            REQUIRE(still.code == 0);
            ConversionEnergy ge =
                conversion_energy(still.trace, ground.cap_array(), params);
            CHECK(ge.dac == 0.0);
            CHECK(ge.comparator / 1e-15 == doctest::Approx(9 * 50.0));
        }
    }
    SUBCASE("windowed conversion three codes up") {
        // Start 100, step 8, target 103.25 LSB: codes 100,108,104,102,103.
        // Per-event draws: 4.625, 1.625, 6.796875, 0.59765625 unit charges.
        CapArray arr = ideal_array();
        EngineState st;
        st.mode = Mode::Tracking;
        st.initial_step = 8;
        st.current_code = 100;
        st.acquired = true;
        double vin = 103.25 / 256.0;
        CycleTrace t = convert(st, arr, vin,
                               [](double a, double b) { return a > b; });
        REQUIRE(st.current_code == 103);
        ConversionEnergy e = conversion_energy(t, arr, params);
        CHECK(e.dac / kCu == doctest::Approx(13.64453125).epsilon(1e-9));
        CHECK(e.comparator / 1e-15 == doctest::Approx(5 * 50.0).epsilon(1e-12));
        CHECK(e.logic / 1e-15 == doctest::Approx(5 * 100.0).epsilon(1e-12));
    }
    SUBCASE("the correction look never adds switching energy") {
        // An all-down walk ends with the correction pulling the code to -1's
        // saturation point; its entry has step 0 and is skipped by design.
        CapArray arr = ideal_array();
        EngineState st;
        st.mode = Mode::Tracking;
        st.initial_step = 2;
        st.current_code = 1;
        st.acquired = true;
        CycleTrace t = convert(st, arr, 0.0,
                               [](double a, double b) { return a > b; });
        REQUIRE(t.final_correction_applied);
        ConversionEnergy with_correction = conversion_energy(t, arr, params);
        t.entries.pop_back();  // strip the correction look
        t.cycles -= 1;
        ConversionEnergy without = conversion_energy(t, arr, params);
        CHECK(with_correction.dac == without.dac);
    }
}

TEST_CASE("per-run energy report") {
    Engine eng(base_config(Mode::Regular));
    Waveform w;
    w.sample_rate = 1e6;
    for (int k = 0; k < 100; ++k) w.samples.push_back(0.3 + 0.002 * k);
    auto records = eng.run(w);

    EnergyModelParams params;
    EnergyReport rep = build_energy_report(records, eng.cap_array(), params);
    REQUIRE(rep.per_conversion.size() == 100);
    CHECK(rep.samples == 100);
    double dac = 0.0, cmp = 0.0, logic = 0.0;
    for (const auto& e : rep.per_conversion) {
        dac += e.dac;
        cmp += e.comparator;
        logic += e.logic;
    }
    CHECK(rep.dac_total == dac);
    CHECK(rep.comparator_total == cmp);
    CHECK(rep.logic_total == logic);
    CHECK(rep.total / 1e-12 ==
          doctest::Approx((dac + cmp + logic) / 1e-12).epsilon(1e-12));
    CHECK(rep.per_sample_avg / 1e-12 ==
          doctest::Approx(rep.total / 100.0 / 1e-12));
    CHECK_FALSE(rep.units_note.empty());
    // Every regular conversion burns the same comparator/logic budget.
    CHECK(rep.comparator_total / 1e-15 == doctest::Approx(100 * 9 * 50.0));
    CHECK(rep.logic_total / 1e-15 == doctest::Approx(100 * 9 * 100.0));
}

TEST_CASE("energy sweep across oversampling ratios") {
    AdcConfig base = base_config(Mode::Tracking);
    EnergyModelParams params;
    SweepTable table = sweep_energy_vs_osr(base, {32, 64, 256},
                                           SweepPolicyMode::Table2, params);
    REQUIRE(table.rows.size() == 3);

    CHECK(table.rows[0].osr == 32);
    CHECK(table.rows[0].initial_step == 32);
    CHECK(table.rows[0].cycles == 7);
    CHECK(table.rows[1].osr == 64);
    CHECK(table.rows[1].initial_step == 8);
    CHECK(table.rows[1].cycles == 5);
    CHECK(table.rows[2].osr == 256);
    CHECK(table.rows[2].initial_step == 4);
    CHECK(table.rows[2].cycles == 4);

    for (const auto& row : table.rows) {
        CHECK(row.policy == "table2");
        CHECK(row.tracking_total > 0.0);
        CHECK(row.regular_total > 0.0);
        CHECK(row.ratio == doctest::Approx(row.tracking_total /
                                           row.regular_total));
        // Short windowed searches must undercut the full conversions.
        CHECK(row.ratio < 1.0);
        CHECK(row.tracking_total / 1e-12 ==
              doctest::Approx((row.tracking_dac + row.tracking_cmp +
                               row.tracking_logic) /
                              1e-12));
    }
    // Slower signals allow smaller steps and thus cheaper samples.
    CHECK(table.rows[1].tracking_total < table.rows[0].tracking_total);
    CHECK(table.rows[2].tracking_total < table.rows[1].tracking_total);

    SUBCASE("policy variants pick their documented steps") {
        SweepTable cov = sweep_energy_vs_osr(base, {32, 64},
                                             SweepPolicyMode::Coverage, params);
        CHECK(cov.rows[0].initial_step == 16);
        CHECK(cov.rows[1].initial_step == 8);
        SweepTable eq = sweep_energy_vs_osr(base, {32, 64},
                                            SweepPolicyMode::Eq13, params);
        CHECK(eq.rows[0].initial_step == 32);
        CHECK(eq.rows[1].initial_step == 16);
    }
    SUBCASE("empty ratio list is rejected") {
        CHECK_THROWS(sweep_energy_vs_osr(base, {}, SweepPolicyMode::Coverage,
                                         params));
    }
}
