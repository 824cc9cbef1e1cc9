#include "iqsim/harness.hpp"

#include "iqsim/errors.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

namespace iqsim {

namespace {

// Stream-purpose tags for per-trial generator substreams.
enum : std::uint64_t { kStreamData = 1, kStreamFadeS = 2, kStreamNoiseS = 3, kStreamInterf = 4 };

double deg2rad(double deg) { return deg * M_PI / 180.0; }

double noise_variance_for(double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0.0)
        return 0.0;
    return std::pow(10.0, -snr_db / 10.0);
}

// Round-trip-exact number formatting shared by the CSV writer.
std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::uint64_t cell_fingerprint(double snr_db, double sir_in_db, int frames) {
    std::uint64_t h = splitmix64(0x69717369u); // arbitrary tag
    auto mix = [&h](std::uint64_t v) { h = splitmix64(h ^ v); };
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(double));
    std::memcpy(&bits, &snr_db, sizeof(bits));
    mix(bits);
    std::memcpy(&bits, &sir_in_db, sizeof(bits));
    mix(bits);
    mix(static_cast<std::uint64_t>(frames));
    return h;
}

void SimConfig::validate() const {
    if (trials < 1)
        throw Error("SimConfig: trials must be >= 1");
    if (snr_db.empty() || sir_in_db.empty() || frames.empty())
        throw Error("SimConfig: snr_db, sir_in_db and frames lists must be non-empty");
    for (int f : frames)
        if (f < 1)
            throw Error("SimConfig: frame counts must be >= 1");
    if (threads < 1)
        throw Error("SimConfig: threads must be >= 1");
    frame.validate();
    channel.validate();
    SegmentationPlan::for_pilot(frame.pilot_len, segments); // throws if invalid
}

ObservationPair data_periods(const ObservationPair& obs, const FrameConfig& cfg, int frames) {
    const std::size_t frame_len = static_cast<std::size_t>(cfg.frame_len());
    const std::size_t pilot_len = static_cast<std::size_t>(cfg.pilot_len);
    const std::size_t data_len = static_cast<std::size_t>(cfg.data_len);
    if (obs.size() < static_cast<std::size_t>(frames) * frame_len)
        throw DimensionError("data_periods: observation shorter than requested frames");
    ObservationPair out;
    out.sir_in_db = obs.sir_in_db;
    out.snr_db = obs.snr_db;
    const std::size_t total = static_cast<std::size_t>(frames) * data_len;
    auto reserve_all = [total](ComplexVector& v) { v.reserve(total); };
    reserve_all(out.d);
    reserve_all(out.g);
    reserve_all(out.truth_s_in_d);
    reserve_all(out.truth_i_in_d);
    reserve_all(out.truth_s_in_g);
    reserve_all(out.truth_i_in_g);
    for (int f = 0; f < frames; ++f) {
        const std::size_t lo = static_cast<std::size_t>(f) * frame_len + pilot_len;
        const std::size_t hi = lo + data_len;
        auto append = [lo, hi](ComplexVector& dst, const ComplexVector& src) {
            dst.insert(dst.end(), src.begin() + static_cast<std::ptrdiff_t>(lo),
                       src.begin() + static_cast<std::ptrdiff_t>(hi));
        };
        append(out.d, obs.d);
        append(out.g, obs.g);
        append(out.truth_s_in_d, obs.truth_s_in_d);
        append(out.truth_i_in_d, obs.truth_i_in_d);
        append(out.truth_s_in_g, obs.truth_s_in_g);
        append(out.truth_i_in_g, obs.truth_i_in_g);
    }
    return out;
}

std::vector<TrialOutcome> run_trial(const SimConfig& cfg, double snr_db, double sir_in_db,
                                    int frames, std::uint64_t trial_seed) {
    const IqiParams params = iqi_params(cfg.gain_imbalance_db, deg2rad(cfg.theta_deg));
    const SegmentationPlan plan = SegmentationPlan::for_pilot(cfg.frame.pilot_len, cfg.segments);
    const std::size_t frame_len = static_cast<std::size_t>(cfg.frame.frame_len());
    const std::size_t total = static_cast<std::size_t>(frames) * frame_len;
    const double n0 = noise_variance_for(snr_db);

    Rng rng_data(derive_seed(trial_seed, kStreamData));
    Rng rng_fade(derive_seed(trial_seed, kStreamFadeS));
    Rng rng_noise(derive_seed(trial_seed, kStreamNoiseS));
    Rng rng_interf(derive_seed(trial_seed, kStreamInterf));

    ComplexVector tx;
    tx.reserve(total);
    for (int f = 0; f < frames; ++f) {
        const Frame frame = build_frame(cfg.frame, rng_data);
        tx.insert(tx.end(), frame.samples.begin(), frame.samples.end());
    }

    const FadingProcess fading = jakes_fading(cfg.channel, total, rng_fade);
    const ComplexVector noise = awgn(total, n0, rng_noise);
    ComplexVector s(total);
    for (std::size_t k = 0; k < total; ++k)
        s[k] = fading.coefficients[k] * tx[k] + noise[k];

    const ComplexVector interf =
        make_interference(total, sir_in_db, 1.0, cfg.channel, rng_interf, n0);

    ObservationPair obs = mix_baseband(s, interf, params);
    obs.sir_in_db = sir_in_db;
    obs.snr_db = snr_db;
    const ObservationPair data_obs = data_periods(obs, cfg.frame, frames);

    std::vector<TrialOutcome> outcomes;
    outcomes.reserve(cfg.methods.size());
    const std::uint64_t fingerprint = cell_fingerprint(snr_db, sir_in_db, frames);
    for (EstimationMethod method : cfg.methods) {
        TrialOutcome out;
        out.sample.method = method;
        out.sample.config_fingerprint = fingerprint;
        try {
            IqiEstimate est;
            switch (method) {
            case EstimationMethod::SubspaceProduct:
            case EstimationMethod::SubspaceLse:
                est = run_subspace_estimator(obs, cfg.frame, plan, frames, method);
                break;
            case EstimationMethod::Blind:
                est = estimate_blind(obs.d, obs.g);
                break;
            case EstimationMethod::Uncompensated:
                est = identity_estimate();
                break;
            }
            out.sample.output_sir_db = output_sir_empirical(data_obs, est);
            const NmseResult nmse = estimator_nmse(est, params);
            out.nmse = nmse.value;
            out.nmse_absolute = nmse.absolute;
            out.clamped = est.clamped;
        } catch (const Error& e) {
            out.failed = true;
            out.error = e.what();
        }
        outcomes.push_back(std::move(out));
    }
    return outcomes;
}

RunResult run_sweep(const SimConfig& cfg) {
    cfg.validate();

    struct ParamCell {
        double snr_db;
        double sir_in_db;
        int frames;
        std::size_t index;
    };
    std::vector<ParamCell> points;
    std::size_t idx = 0;
    for (double snr : cfg.snr_db)
        for (double sir : cfg.sir_in_db)
            for (int f : cfg.frames)
                points.push_back({snr, sir, f, idx++});

    const std::size_t n_trials = static_cast<std::size_t>(cfg.trials);
    // outcomes[point][trial] -> per-method results, filled independently of
    // execution order so the sweep is deterministic under any thread count.
    std::vector<std::vector<std::vector<TrialOutcome>>> outcomes(
        points.size(), std::vector<std::vector<TrialOutcome>>(n_trials));

    const std::size_t total_jobs = points.size() * n_trials;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= total_jobs)
                return;
            const std::size_t p = job / n_trials;
            const std::size_t t = job % n_trials;
            const ParamCell& pc = points[p];
            const std::uint64_t trial_seed = derive_seed(cfg.seed, pc.index, t);
            outcomes[p][t] = run_trial(cfg, pc.snr_db, pc.sir_in_db, pc.frames, trial_seed);
            for (TrialOutcome& out : outcomes[p][t])
                out.sample.trial = t;
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_threads =
        std::min<std::size_t>(static_cast<std::size_t>(std::min<unsigned>(
                                  static_cast<unsigned>(cfg.threads), hw)),
                              std::max<std::size_t>(total_jobs, 1));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t k = 0; k < n_threads; ++k)
            pool.emplace_back(worker);
        for (std::thread& th : pool)
            th.join();
    }

    RunResult result;
    result.config = cfg;
    for (const ParamCell& pc : points) {
        for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
            CellResult cell;
            cell.cell = Cell{cfg.methods[m], pc.snr_db, pc.sir_in_db, pc.frames};
            std::vector<double> capped;
            std::vector<double> nmse_values;
            std::size_t clamped = 0, failures = 0;
            for (std::size_t t = 0; t < n_trials; ++t) {
                const TrialOutcome& out = outcomes[pc.index][t][m];
                if (out.failed) {
                    ++failures;
                    continue;
                }
                cell.samples_db.push_back(out.sample.output_sir_db);
                capped.push_back(cap_sir_db(out.sample.output_sir_db));
                nmse_values.push_back(out.nmse);
                if (out.clamped)
                    ++clamped;
            }
            CellSummary& s = cell.summary;
            s.trials = n_trials;
            s.failures = failures;
            s.all_failed = cell.samples_db.empty();
            if (!s.all_failed) {
                cell.cdf = build_cdf(capped);
                s.median_db = quantile(cell.samples_db, 0.5);
                s.p10_db = quantile(cell.samples_db, 0.1);
                s.p90_db = quantile(cell.samples_db, 0.9);
                s.nmse_median = quantile(nmse_values, 0.5);
                s.clamp_rate =
                    static_cast<double>(clamped) / static_cast<double>(n_trials - failures);
            }
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

void export_csv(const RunResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ExportError("export_csv: cannot open '" + path + "' for writing");
    out << "method,snr_db,sir_in_db,frames,sir_db,cdf_prob\n";
    for (const CellResult& cell : result.cells) {
        const std::string prefix = std::string(method_name(cell.cell.method)) + "," +
                                   fmt_double(cell.cell.snr_db) + "," +
                                   fmt_double(cell.cell.sir_in_db) + "," +
                                   std::to_string(cell.cell.frames) + ",";
        for (std::size_t k = 0; k < cell.cdf.values.size(); ++k)
            out << prefix << fmt_double(cell.cdf.values[k]) << ","
                << fmt_double(cell.cdf.probabilities[k]) << "\n";
    }
    if (!out)
        throw ExportError("export_csv: write failed for '" + path + "'");
}

namespace {

nlohmann::ordered_json snr_list_json(const std::vector<double>& values) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (double v : values) {
        if (std::isfinite(v))
            arr.push_back(v);
        else
            arr.push_back(v > 0 ? "inf" : "-inf");
    }
    return arr;
}

} // namespace

void export_json(const RunResult& result, const std::string& path) {
    using json = nlohmann::ordered_json;
    json j;
    json cfg;
    cfg["seed"] = result.config.seed;
    cfg["trials"] = result.config.trials;
    cfg["snr_db"] = snr_list_json(result.config.snr_db);
    cfg["sir_in_db"] = result.config.sir_in_db;
    cfg["frames"] = result.config.frames;
    cfg["gain_imbalance_db"] = result.config.gain_imbalance_db;
    cfg["theta_deg"] = result.config.theta_deg;
    cfg["pilot_len"] = result.config.frame.pilot_len;
    cfg["data_len"] = result.config.frame.data_len;
    cfg["zc_root"] = result.config.frame.zc_root;
    cfg["segments"] = result.config.segments;
    cfg["doppler_hz"] = result.config.channel.doppler_hz;
    cfg["sample_time_s"] = result.config.channel.sample_time_s;
    cfg["oscillators"] = result.config.channel.oscillators;
    json methods = json::array();
    for (EstimationMethod m : result.config.methods)
        methods.push_back(method_name(m));
    cfg["methods"] = methods;
    j["provenance"] = {{"version", result.version}, {"config", cfg}};

    json cells = json::array();
    for (const CellResult& cell : result.cells) {
        json c;
        c["method"] = method_name(cell.cell.method);
        if (std::isfinite(cell.cell.snr_db))
            c["snr_db"] = cell.cell.snr_db;
        else
            c["snr_db"] = "inf";
        c["sir_in_db"] = cell.cell.sir_in_db;
        c["frames"] = cell.cell.frames;
        c["cdf"] = {{"sir_db", cell.cdf.values}, {"prob", cell.cdf.probabilities}};
        c["samples_db"] = cell.samples_db; // non-finite values serialize as null
        json s;
        s["median_db"] = cell.summary.median_db;
        s["p10_db"] = cell.summary.p10_db;
        s["p90_db"] = cell.summary.p90_db;
        s["nmse_median"] = cell.summary.nmse_median;
        s["clamp_rate"] = cell.summary.clamp_rate;
        s["trials"] = cell.summary.trials;
        s["failures"] = cell.summary.failures;
        s["all_failed"] = cell.summary.all_failed;
        c["summary"] = s;
        cells.push_back(std::move(c));
    }
    j["cells"] = cells;

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ExportError("export_json: cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
    if (!out)
        throw ExportError("export_json: write failed for '" + path + "'");
}

void export_result(const RunResult& result, const std::string& path, const std::string& format) {
    if (format == "csv")
        export_csv(result, path);
    else if (format == "json")
        export_json(result, path);
    else
        throw ExportError("export_result: unknown format '" + format + "'");
}

SimConfig make_recipe(Recipe recipe, std::uint64_t seed, int trials) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.frame = FrameConfig{8, 48, 1, 1};
    cfg.channel = ChannelConfig{100.0, 2e-6, 16, true};
    cfg.gain_imbalance_db = 1.0;
    cfg.theta_deg = 2.0;
    cfg.segments = 1;
    cfg.methods = {EstimationMethod::SubspaceProduct, EstimationMethod::Blind};
    switch (recipe) {
    case Recipe::Fig3:
        cfg.snr_db = {35.0};
        cfg.sir_in_db = {0.0, -10.0};
        cfg.frames = {1, 10};
        break;
    case Recipe::Fig4:
        cfg.snr_db = {15.0, 25.0, 35.0};
        cfg.sir_in_db = {-10.0};
        cfg.frames = {10};
        break;
    }
    return cfg;
}

std::string summary_table(const RunResult& result) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-18s %8s %9s %7s %9s %9s %9s %11s %7s %6s\n", "method",
                  "snr_db", "sir_in_db", "frames", "median_db", "p10_db", "p90_db", "nmse_med",
                  "clamp%", "fail");
    out << line;
    for (const CellResult& cell : result.cells) {
        if (cell.summary.all_failed) {
            std::snprintf(line, sizeof(line), "%-18s %8.4g %9.4g %7d %s (failures: %zu)\n",
                          method_name(cell.cell.method), cell.cell.snr_db, cell.cell.sir_in_db,
                          cell.cell.frames, "ALL TRIALS FAILED", cell.summary.failures);
        } else {
            std::snprintf(line, sizeof(line),
                          "%-18s %8.4g %9.4g %7d %9.2f %9.2f %9.2f %11.3e %7.2f %6zu\n",
                          method_name(cell.cell.method), cell.cell.snr_db, cell.cell.sir_in_db,
                          cell.cell.frames, cell.summary.median_db, cell.summary.p10_db,
                          cell.summary.p90_db, cell.summary.nmse_median,
                          100.0 * cell.summary.clamp_rate, cell.summary.failures);
        }
        out << line;
    }
    return out.str();
}

} // namespace iqsim
