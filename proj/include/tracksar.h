/* C interface to the tracksar converter simulator.
 *
 * Ownership: functions returning a pointer hand the caller an opaque handle
 * that must be released with the matching _destroy call; NULL signals
 * failure. Functions returning tracksar_status report failure through the
 * code and leave outputs untouched. Either way the thread-local message from
 * tracksar_last_error() describes the most recent failure on this thread.
 * Strings returned as const char* stay owned by their handle and are valid
 * until the next call on that handle.
 */
#ifndef TRACKSAR_H
#define TRACKSAR_H

#include <stddef.h>

#if defined(_WIN32)
#define TRACKSAR_API __declspec(dllexport)
#else
#define TRACKSAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tracksar_status {
    TRACKSAR_OK = 0,
    TRACKSAR_ERR_INVALID_ARGUMENT = 1,
    TRACKSAR_ERR_RUNTIME = 2,
    TRACKSAR_ERR_NULL_POINTER = 3,
} tracksar_status;

TRACKSAR_API const char* tracksar_last_error(void);

/* ---- step-size planning --------------------------------------------- */

/* Largest sample-to-sample swing, in codes, of a full-scale sinusoid at
 * the given oversampling ratio. */
TRACKSAR_API tracksar_status tracksar_max_delta_codes(int osr, int bits,
                                                      int* out_codes);

/* Exact (A*sin(pi/M)) and small-angle (A*pi/M) swing bounds in volts. */
TRACKSAR_API tracksar_status tracksar_max_delta_volts(double amplitude, int osr,
                                                      double* out_exact,
                                                      double* out_approx);

/* policy: "eq13", "coverage", or a power-of-two integer literal. */
TRACKSAR_API tracksar_status tracksar_initial_step(int osr, int bits,
                                                   const char* policy,
                                                   int* out_step);

/* Comparator decisions per conversion for a given starting step. */
TRACKSAR_API tracksar_status tracksar_cycles_for(int initial_step,
                                                 int* out_cycles);

/* ---- converter configuration ----------------------------------------- */

typedef struct tracksar_config tracksar_config;

TRACKSAR_API tracksar_config* tracksar_config_create(void);
TRACKSAR_API tracksar_config* tracksar_config_load(const char* path);
/* Keys: bits, vref, unit_cap, max_sample_rate, mode (regular|tracking),
 * osr, step_policy (eq13|coverage|<power of two>), comparator_noise_sigma,
 * comparator_offset, cap_mismatch_sigma, rng_seed. Syntax errors are
 * rejected here; value ranges are enforced when the converter is built,
 * i.e. by tracksar_simulate and friends. */
TRACKSAR_API tracksar_status tracksar_config_set(tracksar_config* config,
                                                 const char* key,
                                                 const char* value);
/* JSON echo of every resolved field; owned by the handle. */
TRACKSAR_API const char* tracksar_config_echo(tracksar_config* config);
TRACKSAR_API void tracksar_config_destroy(tracksar_config* config);

/* ---- stimulus waveforms ----------------------------------------------- */

typedef struct tracksar_waveform tracksar_waveform;

/* Integer number of cycles in the record keeps the tone coherent; cycles
 * must be odd and coprime with count. */
TRACKSAR_API tracksar_waveform* tracksar_waveform_sine(double amplitude,
                                                       double offset,
                                                       double sample_rate,
                                                       size_t count,
                                                       int cycles);
TRACKSAR_API tracksar_waveform* tracksar_waveform_ramp(double v_start,
                                                       double v_end,
                                                       size_t count);
/* One voltage per line; a single header line is tolerated. */
TRACKSAR_API tracksar_waveform* tracksar_waveform_from_csv(const char* path,
                                                           double sample_rate);
TRACKSAR_API size_t tracksar_waveform_size(const tracksar_waveform* waveform);
TRACKSAR_API tracksar_status tracksar_waveform_sample(
    const tracksar_waveform* waveform, size_t index, double* out_volts);
TRACKSAR_API void tracksar_waveform_destroy(tracksar_waveform* waveform);

/* ---- conversion runs --------------------------------------------------- */

typedef struct tracksar_result tracksar_result;

/* Converts the whole waveform under the given configuration. */
TRACKSAR_API tracksar_result* tracksar_simulate(
    const tracksar_config* config, const tracksar_waveform* waveform);
TRACKSAR_API size_t tracksar_result_size(const tracksar_result* result);
TRACKSAR_API tracksar_status tracksar_result_code(const tracksar_result* result,
                                                  size_t index, int* out_code);
TRACKSAR_API tracksar_status tracksar_result_cycles(
    const tracksar_result* result, size_t index, int* out_cycles);
TRACKSAR_API tracksar_status tracksar_result_overload(
    const tracksar_result* result, size_t index, int* out_flag);
/* format: "csv" or "json"; include_traces adds per-cycle detail to JSON. */
TRACKSAR_API tracksar_status tracksar_result_write(
    const tracksar_result* result, const char* path, const char* format,
    int include_traces);
TRACKSAR_API void tracksar_result_destroy(tracksar_result* result);

/* ---- experiments -------------------------------------------------------- */

typedef struct tracksar_experiment tracksar_experiment;

TRACKSAR_API tracksar_experiment* tracksar_experiment_create(void);
/* Canned recipes: table2-osr32, table2-osr64, table2-osr256, fig2. */
TRACKSAR_API tracksar_experiment* tracksar_experiment_preset(const char* name);
/* Converter keys, same set as tracksar_config_set. */
TRACKSAR_API tracksar_status tracksar_experiment_set_config(
    tracksar_experiment* experiment, const char* key, const char* value);
/* Load a key=value config file into the experiment's converter settings. */
TRACKSAR_API tracksar_status tracksar_experiment_load_config(
    tracksar_experiment* experiment, const char* path);
/* Experiment keys:
 *   stimulus        sine | ramp | csv
 *   sine.amplitude, sine.offset, sine.count, sine.cycles (0 = derive)
 *   ramp.start, ramp.end, ramp.count
 *   csv.path
 *   analyses        comma list of trace,energy,spectrum,linearity
 *   window          rectangular | hann
 *   fft_size        power of two
 *   out_dir, format (csv|json), name, include_traces (0|1)
 */
TRACKSAR_API tracksar_status tracksar_experiment_set(
    tracksar_experiment* experiment, const char* key, const char* value);
TRACKSAR_API tracksar_status tracksar_experiment_run(
    tracksar_experiment* experiment);
/* One-line run summary; valid after a successful run. */
TRACKSAR_API const char* tracksar_experiment_summary(
    tracksar_experiment* experiment);
/* Newline-joined list of report files written by the last run. */
TRACKSAR_API const char* tracksar_experiment_files(
    tracksar_experiment* experiment);
TRACKSAR_API void tracksar_experiment_destroy(tracksar_experiment* experiment);

/* ---- energy sweeps ------------------------------------------------------ */

typedef struct tracksar_sweep tracksar_sweep;

typedef struct tracksar_sweep_row {
    int osr;
    int initial_step;
    int cycles;
    double tracking_dac_j;
    double tracking_cmp_j;
    double tracking_logic_j;
    double tracking_total_j;
    double regular_total_j;
    double ratio; /* tracking_total / regular_total */
    char policy[16];
} tracksar_sweep_row;

/* policy_mode: "eq13", "coverage", or "table2" (fixed 32/8/4 steps at the
 * reference ratios). Rows run concurrently; order follows osr_list. */
TRACKSAR_API tracksar_sweep* tracksar_sweep_run(const tracksar_config* config,
                                                const int* osr_list,
                                                size_t osr_count,
                                                const char* policy_mode);
TRACKSAR_API size_t tracksar_sweep_rows(const tracksar_sweep* sweep);
TRACKSAR_API tracksar_status tracksar_sweep_row_get(const tracksar_sweep* sweep,
                                                    size_t index,
                                                    tracksar_sweep_row* out_row);
TRACKSAR_API tracksar_status tracksar_sweep_write(const tracksar_sweep* sweep,
                                                  const char* path,
                                                  const char* format);
TRACKSAR_API void tracksar_sweep_destroy(tracksar_sweep* sweep);

#ifdef __cplusplus
}
#endif

#endif /* TRACKSAR_H */
