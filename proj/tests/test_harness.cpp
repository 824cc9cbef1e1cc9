#include "iqsim/harness.hpp"

#include "iqsim/errors.hpp"

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace iqsim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name) : path("iqsim_test_" + name) {}
    ~TempPath() { std::remove(path.c_str()); }
};

SimConfig small_config() {
    SimConfig cfg;
    cfg.trials = 25;
    cfg.seed = 99;
    cfg.snr_db = {35.0};
    cfg.sir_in_db = {0.0};
    cfg.frames = {1};
    return cfg;
}

} // namespace

TEST_CASE("data_periods slices out the data spans") {
    const FrameConfig frame{4, 3, 1, 1};
    ObservationPair obs;
    const std::size_t total = 14; // two frames of 7
    for (std::size_t k = 0; k < total; ++k) {
        const Complex v{static_cast<double>(k), 0.0};
        obs.d.push_back(v);
        obs.g.push_back(v + Complex{0.0, 1.0});
        obs.truth_s_in_d.push_back(v);
        obs.truth_i_in_d.push_back(Complex{});
        obs.truth_s_in_g.push_back(Complex{});
        obs.truth_i_in_g.push_back(v);
    }
    const ObservationPair data = data_periods(obs, frame, 2);
    REQUIRE(data.size() == 6);
    // data spans are samples 4..6 and 11..13
    const double want[6] = {4, 5, 6, 11, 12, 13};
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(data.d[k].real() == want[k]);
    CHECK_THROWS_AS(data_periods(obs, frame, 3), DimensionError);
}

TEST_CASE("run_trial is deterministic in (config, seed)") {
    const SimConfig cfg = small_config();
    const auto a = run_trial(cfg, 35.0, 0.0, 1, 1234);
    const auto b = run_trial(cfg, 35.0, 0.0, 1, 1234);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].sample.output_sir_db == b[k].sample.output_sir_db);
        CHECK(a[k].nmse == b[k].nmse);
    }
    const auto c = run_trial(cfg, 35.0, 0.0, 1, 1235);
    CHECK(a[0].sample.output_sir_db != c[0].sample.output_sir_db);
}

TEST_CASE("uncompensated trials measure SIR_in + IRR under ergodic fading") {
    // fast fading (F_D T_s = 0.3) over ~10^4 samples keeps the realized
    // power ratio close to the configured one
    SimConfig cfg;
    cfg.methods = {EstimationMethod::Uncompensated};
    cfg.channel = ChannelConfig{150000.0, 2e-6, 16, true};
    cfg.snr_db = {35.0};
    const auto out = run_trial(cfg, 35.0, 0.0, 180, 777);
    REQUIRE(out.size() == 1);
    CHECK_FALSE(out[0].failed);
    CHECK(std::abs(out[0].sample.output_sir_db - 24.42) < 0.2);
}

TEST_CASE("noise-free static-channel trial reaches the SIR cap") {
    // SNR = +inf disables noise; zero Doppler keeps the training period
    // coherent, so a single frame estimates the imbalance exactly
    SimConfig cfg;
    cfg.methods = {EstimationMethod::SubspaceProduct};
    cfg.channel = ChannelConfig{0.0, 2e-6, 16, true};
    const double inf = std::numeric_limits<double>::infinity();
    const auto out = run_trial(cfg, inf, 0.0, 1, 4242);
    REQUIRE(out.size() == 1);
    CHECK_FALSE(out[0].failed);
    CHECK(out[0].sample.output_sir_db >= kSirCapDb);
}

TEST_CASE("run_sweep shapes and determinism") {
    SUBCASE("single trial gives a one-step CDF") {
        SimConfig cfg = small_config();
        cfg.trials = 1;
        const RunResult r = run_sweep(cfg);
        REQUIRE(r.cells.size() == cfg.methods.size());
        CHECK(r.cells[0].cdf.values.size() == 1);
        CHECK(r.cells[0].cdf.probabilities[0] == 1.0);
    }
    SUBCASE("fig3 recipe spans 8 cells") {
        SimConfig cfg = make_recipe(Recipe::Fig3, 3, 4);
        const RunResult r = run_sweep(cfg);
        CHECK(r.cells.size() == 8); // 2 sir x 2 frames x 2 methods
    }
    SUBCASE("fig4 recipe spans 6 cells") {
        SimConfig cfg = make_recipe(Recipe::Fig4, 3, 4);
        const RunResult r = run_sweep(cfg);
        CHECK(r.cells.size() == 6); // 3 snr x 2 methods
    }
    SUBCASE("thread count does not change the result") {
        SimConfig cfg = small_config();
        cfg.sir_in_db = {0.0, -10.0};
        cfg.threads = 1;
        const RunResult a = run_sweep(cfg);
        cfg.threads = 4;
        const RunResult b = run_sweep(cfg);
        REQUIRE(a.cells.size() == b.cells.size());
        for (std::size_t c = 0; c < a.cells.size(); ++c) {
            REQUIRE(a.cells[c].samples_db.size() == b.cells[c].samples_db.size());
            for (std::size_t k = 0; k < a.cells[c].samples_db.size(); ++k)
                CHECK(a.cells[c].samples_db[k] == b.cells[c].samples_db[k]);
        }
    }
}

TEST_CASE("csv export") {
    SUBCASE("deterministic byte-identical exports") {
        const SimConfig cfg = small_config();
        TempPath a("det_a.csv"), b("det_b.csv");
        export_csv(run_sweep(cfg), a.path);
        export_csv(run_sweep(cfg), b.path);
        CHECK(slurp(a.path) == slurp(b.path));
    }
    SUBCASE("round trip recovers identical curve values") {
        const SimConfig cfg = small_config();
        const RunResult r = run_sweep(cfg);
        TempPath p("rt.csv");
        export_csv(r, p.path);
        std::ifstream in(p.path);
        std::string line;
        REQUIRE(std::getline(in, line));
        CHECK(line == "method,snr_db,sir_in_db,frames,sir_db,cdf_prob");
        std::size_t cell_idx = 0, point_idx = 0;
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string field;
            std::vector<std::string> fields;
            while (std::getline(row, field, ','))
                fields.push_back(field);
            REQUIRE(fields.size() == 6);
            if (point_idx >= r.cells[cell_idx].cdf.values.size()) {
                ++cell_idx;
                point_idx = 0;
            }
            REQUIRE(cell_idx < r.cells.size());
            CHECK(std::stod(fields[4]) == r.cells[cell_idx].cdf.values[point_idx]);
            CHECK(std::stod(fields[5]) == r.cells[cell_idx].cdf.probabilities[point_idx]);
            ++point_idx;
        }
        CHECK(cell_idx == r.cells.size() - 1);
        CHECK(point_idx == r.cells.back().cdf.values.size());
    }
    SUBCASE("empty methods list gives a header-only csv") {
        SimConfig cfg = small_config();
        cfg.methods.clear();
        TempPath p("empty.csv");
        export_csv(run_sweep(cfg), p.path);
        CHECK(slurp(p.path) == "method,snr_db,sir_in_db,frames,sir_db,cdf_prob\n");
    }
    SUBCASE("unwritable path surfaces the path in the error") {
        const RunResult r = run_sweep(small_config());
        try {
            export_csv(r, "/nonexistent-dir/out.csv");
            FAIL("expected ExportError");
        } catch (const ExportError& e) {
            CHECK(std::string(e.what()).find("/nonexistent-dir/out.csv") != std::string::npos);
        }
    }
}

TEST_CASE("json export carries curves, summaries and provenance") {
    SimConfig cfg = small_config();
    cfg.methods = {EstimationMethod::SubspaceProduct, EstimationMethod::Blind,
                   EstimationMethod::Uncompensated};
    const RunResult r = run_sweep(cfg);
    TempPath p("out.json");
    export_json(r, p.path);
    const nlohmann::json j = nlohmann::json::parse(slurp(p.path));
    CHECK(j["provenance"]["version"] == kVersion);
    CHECK(j["provenance"]["config"]["seed"] == 99);
    REQUIRE(j["cells"].size() == 3);
    for (const auto& cell : j["cells"]) {
        CHECK(cell["cdf"]["sir_db"].size() == 25);
        CHECK(cell["samples_db"].size() == 25);
        CHECK(cell["summary"]["trials"] == 25);
    }
    // groups are distinct (method, snr, sir_in, frames) combinations
    CHECK(j["cells"][0]["method"] != j["cells"][1]["method"]);
}

TEST_CASE("summary table lists every cell") {
    SimConfig cfg = small_config();
    cfg.methods = {EstimationMethod::SubspaceProduct, EstimationMethod::Blind};
    const RunResult r = run_sweep(cfg);
    const std::string table = summary_table(r);
    CHECK(table.find("subspace-product") != std::string::npos);
    CHECK(table.find("blind") != std::string::npos);
}

TEST_CASE("a cell whose trials all fail is annotated, not fatal") {
    // infinitely strong interference saturates every stream; the estimators
    // reject the non-finite samples trial by trial and the sweep completes
    SimConfig cfg = small_config();
    cfg.sir_in_db = {-std::numeric_limits<double>::infinity()};
    cfg.trials = 5;
    cfg.methods = {EstimationMethod::SubspaceProduct, EstimationMethod::Blind,
                   EstimationMethod::Uncompensated};
    const RunResult r = run_sweep(cfg);
    REQUIRE(r.cells.size() == 3);
    for (const CellResult& cell : r.cells) {
        CHECK(cell.summary.all_failed);
        CHECK(cell.summary.failures == 5);
        CHECK(cell.samples_db.empty());
    }
    CHECK(summary_table(r).find("ALL TRIALS FAILED") != std::string::npos);
}

TEST_CASE("SimConfig validation") {
    SimConfig cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = small_config();
    cfg.snr_db.clear();
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = small_config();
    cfg.segments = 3; // does not divide pilot_len = 8
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = small_config();
    cfg.frames = {0};
    CHECK_THROWS_AS(cfg.validate(), Error);
}
