#pragma once

#include "iqsim/channel.hpp"
#include "iqsim/estimation.hpp"
#include "iqsim/metrics.hpp"
#include "iqsim/waveforms.hpp"

#include <cstdint>
#include <string>

namespace iqsim {

inline constexpr const char* kVersion = "0.1.0";

enum class Recipe { Fig3, Fig4 };

/// Full sweep description. snr_db entries may be +infinity (noise disabled).
struct SimConfig {
    std::vector<double> snr_db{35.0};
    std::vector<double> sir_in_db{0.0};
    std::vector<int> frames{1};
    int trials = 2000;
    std::uint64_t seed = 1;
    FrameConfig frame{};
    ChannelConfig channel{};
    double gain_imbalance_db = 1.0;
    double theta_deg = 2.0;
    int segments = 1;
    std::vector<EstimationMethod> methods{EstimationMethod::SubspaceProduct,
                                          EstimationMethod::Blind};
    int threads = 1;

    void validate() const;
};

/// One sweep cell: a parameter point evaluated for one method.
struct Cell {
    EstimationMethod method = EstimationMethod::SubspaceProduct;
    double snr_db = 0.0;
    double sir_in_db = 0.0;
    int frames = 1;
};

struct CellSummary {
    double median_db = 0.0;
    double p10_db = 0.0;
    double p90_db = 0.0;
    double nmse_median = 0.0;
    double clamp_rate = 0.0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    bool all_failed = false;
};

struct CellResult {
    Cell cell;
    CdfCurve cdf;                   // built from capped samples
    std::vector<double> samples_db; // raw per-trial output SIR
    CellSummary summary;
};

struct RunResult {
    SimConfig config;
    std::vector<CellResult> cells;
    std::string version = kVersion;
};

/// Per-method outcome of a single Monte Carlo trial.
struct TrialOutcome {
    SirSample sample{};
    double nmse = 0.0;
    bool nmse_absolute = false;
    bool clamped = false;
    bool failed = false;
    std::string error;
};

/// Hash of an operating point, stored in each SirSample for traceability.
std::uint64_t cell_fingerprint(double snr_db, double sir_in_db, int frames);

/// Concatenation of the data periods of the first `frames` frames, with the
/// ground-truth decomposition sliced accordingly.
ObservationPair data_periods(const ObservationPair& obs, const FrameConfig& cfg, int frames);

/// Generate one trial (frames, fading, interference, noise at the given
/// operating point), run every configured estimator, compensate and score.
/// A failing estimator yields a failed outcome; it never aborts the trial.
std::vector<TrialOutcome> run_trial(const SimConfig& cfg, double snr_db, double sir_in_db,
                                    int frames, std::uint64_t trial_seed);

/// Cartesian sweep over snr x sir x frames with `trials` trials per cell.
/// Per-trial seeds are derived from (seed, cell index, trial index), so the
/// result is independent of execution order and thread count.
RunResult run_sweep(const SimConfig& cfg);

/// CSV columns: method,snr_db,sir_in_db,frames,sir_db,cdf_prob; one row per
/// CDF point, numbers printed with round-trip precision.
void export_csv(const RunResult& result, const std::string& path);

/// JSON mirror of the CSV plus summaries, raw samples and provenance.
void export_json(const RunResult& result, const std::string& path);

/// format is "csv" or "json".
void export_result(const RunResult& result, const std::string& path, const std::string& format);

/// Preset sweeps reproducing the two reference experiments.
SimConfig make_recipe(Recipe recipe, std::uint64_t seed, int trials = 2000);

/// Human-readable per-cell summary table.
std::string summary_table(const RunResult& result);

} // namespace iqsim
