#include "tracksar/reports.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "tracksar/config_io.hpp"

namespace tracksar {

namespace {

using ordered_json = nlohmann::ordered_json;

// Fixed-notation float formatting keeps the CSV diffable run to run.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ordered_json config_json(const AdcConfig& config) {
    ordered_json j;
    j["bits"] = config.bits;
    j["vref"] = config.vref;
    j["unit_cap"] = config.unit_cap;
    j["max_sample_rate"] = config.max_sample_rate;
    j["mode"] = mode_name(config.mode);
    j["osr"] = config.osr;
    j["step_policy"] = policy_name(config.step_policy);
    j["comparator_noise_sigma"] = config.comparator_noise_sigma;
    j["comparator_offset"] = config.comparator_offset;
    j["cap_mismatch_sigma"] = config.cap_mismatch_sigma;
    j["rng_seed"] = config.rng_seed;
    return j;
}

ordered_json trace_json(const CycleTrace& trace) {
    ordered_json entries = ordered_json::array();
    for (const auto& e : trace.entries) {
        ordered_json entry;
        entry["step"] = e.step;
        entry["code_before"] = e.code_before;
        entry["dac_volts"] = e.dac_volts;
        entry["decision"] = e.decision;
        entry["code_after"] = e.code_after;
        entries.push_back(entry);
    }
    ordered_json j;
    j["entries"] = entries;
    j["final_correction_applied"] = trace.final_correction_applied;
    j["input_clamped"] = trace.input_clamped;
    if (trace.reset_from.has_value()) j["reset_from"] = *trace.reset_from;
    return j;
}

}  // namespace

void write_records_csv(std::ostream& out,
                       const std::vector<ConversionRecord>& records) {
    out << "sample_index,vin,code,cycles,overload\n";
    for (const auto& r : records) {
        out << r.sample_index << ',' << fmt(r.vin) << ',' << r.code << ','
            << r.cycles << ',' << (r.overload ? 1 : 0) << '\n';
    }
}

void write_records_json(std::ostream& out,
                        const std::vector<ConversionRecord>& records,
                        const AdcConfig& config, bool include_traces) {
    ordered_json j;
    j["config"] = config_json(config);
    ordered_json recs = ordered_json::array();
    for (const auto& r : records) {
        ordered_json rec;
        rec["sample_index"] = r.sample_index;
        rec["vin"] = r.vin;
        rec["code"] = r.code;
        rec["cycles"] = r.cycles;
        rec["overload"] = r.overload;
        if (include_traces) rec["trace"] = trace_json(r.trace);
        recs.push_back(rec);
    }
    j["records"] = recs;
    out << j.dump(2) << '\n';
}

void write_energy_csv(std::ostream& out, const EnergyReport& report) {
    out << "sample_index,dac_j,comparator_j,logic_j,total_j\n";
    for (std::size_t i = 0; i < report.per_conversion.size(); ++i) {
        const auto& e = report.per_conversion[i];
        out << i << ',' << fmt(e.dac) << ',' << fmt(e.comparator) << ','
            << fmt(e.logic) << ',' << fmt(e.total()) << '\n';
    }
}

void write_energy_json(std::ostream& out, const EnergyReport& report,
                       const AdcConfig& config) {
    ordered_json j;
    j["config"] = config_json(config);
    j["accounting"] = accounting_name(report.params.accounting);
    j["comparator_energy_j"] = report.params.comparator_energy;
    j["logic_energy_j"] = report.params.logic_energy;
    j["samples"] = report.samples;
    j["dac_total_j"] = report.dac_total;
    j["comparator_total_j"] = report.comparator_total;
    j["logic_total_j"] = report.logic_total;
    j["total_j"] = report.total;
    j["per_sample_avg_j"] = report.per_sample_avg;
    j["units_note"] = report.units_note;
    out << j.dump(2) << '\n';
}

void write_spectrum_csv(std::ostream& out, const SpectrumReport& report) {
    out << "freq_hz,psd_db\n";
    for (std::size_t k = 0; k < report.psd_db.size(); ++k) {
        out << fmt(report.freq_bins[k]) << ',' << fmt(report.psd_db[k]) << '\n';
    }
}

void write_spectrum_json(std::ostream& out, const SpectrumReport& report,
                         const AdcConfig& config) {
    ordered_json j;
    j["config"] = config_json(config);
    j["window"] = report.window == Window::Hann ? "hann" : "rectangular";
    j["fft_size"] = report.fft_size;
    j["sample_rate"] = report.sample_rate;
    j["carrier_bin"] = report.carrier_bin;
    j["carrier_freq_hz"] = report.carrier_freq;
    j["sndr_db"] = report.sndr_db;
    j["sfdr_db"] = report.sfdr_db;
    j["thd_db"] = report.thd_db;
    j["enob_bits"] = report.enob_bits;
    j["fom_j_per_conv"] = report.fom_j_per_conv;
    j["freq_hz"] = report.freq_bins;
    j["psd_db"] = report.psd_db;
    out << j.dump(2) << '\n';
}

void write_linearity_csv(std::ostream& out, const LinearityReport& report) {
    out << "code,dnl_lsb,inl_lsb\n";
    for (std::size_t c = 0; c < report.dnl_lsb.size(); ++c) {
        out << c << ',' << fmt(report.dnl_lsb[c]) << ','
            << fmt(report.inl_lsb[c]) << '\n';
    }
}

void write_linearity_json(std::ostream& out, const LinearityReport& report,
                          const AdcConfig& config) {
    ordered_json j;
    j["config"] = config_json(config);
    j["max_abs_dnl_lsb"] = report.max_abs_dnl;
    j["max_abs_inl_lsb"] = report.max_abs_inl;
    j["dnl_lsb"] = report.dnl_lsb;
    j["inl_lsb"] = report.inl_lsb;
    out << j.dump(2) << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
    out << "osr,policy,initial_step,cycles,dac_pj,cmp_pj,logic_pj,total_pj\n";
    for (const auto& r : table.rows) {
        out << r.osr << ',' << r.policy << ',' << r.initial_step << ','
            << r.cycles << ',' << fmt(r.tracking_dac * 1e12) << ','
            << fmt(r.tracking_cmp * 1e12) << ',' << fmt(r.tracking_logic * 1e12)
            << ',' << fmt(r.tracking_total * 1e12) << '\n';
    }
}

void write_sweep_json(std::ostream& out, const SweepTable& table,
                      const AdcConfig& config) {
    ordered_json j;
    j["config"] = config_json(config);
    j["units_note"] = table.units_note;
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows) {
        ordered_json row;
        row["osr"] = r.osr;
        row["policy"] = r.policy;
        row["initial_step"] = r.initial_step;
        row["cycles"] = r.cycles;
        row["tracking_dac_pj"] = r.tracking_dac * 1e12;
        row["tracking_cmp_pj"] = r.tracking_cmp * 1e12;
        row["tracking_logic_pj"] = r.tracking_logic * 1e12;
        row["tracking_total_pj"] = r.tracking_total * 1e12;
        row["regular_total_pj"] = r.regular_total * 1e12;
        row["ratio"] = r.ratio;
        rows.push_back(row);
    }
    j["rows"] = rows;
    out << j.dump(2) << '\n';
}

std::string config_echo_json(const AdcConfig& config) {
    return config_json(config).dump(2);
}

void write_file(const std::string& path, const std::string& contents) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
        // A failure here surfaces as the ofstream error below.
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("reports: cannot write '" + path + "'");
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("reports: write failed for '" + path + "'");
    }
}

}  // namespace tracksar
