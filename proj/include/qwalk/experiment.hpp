#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk {

enum class Mode { Evolve, Snapshot, Sweep, AnalyticCompare, Identities, Fig1, Fig2, Fig3 };

std::string_view to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view name);

struct ScheduleSpec {
    enum class Kind { Constant, PowerLaw, Linear, Table };
    Kind kind = Kind::PowerLaw;
    // theta, alpha or gamma depending on kind.
    double value = 0.0;
    // Table kind: inline angles, or a one-column CSV file.
    std::vector<double> angles;
    std::string table_path;

    CoinSchedule build() const;
    friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

struct InitialCondition {
    Site site = 0;
    Amplitude upper{0.70710678118654752, 0.0};
    Amplitude lower{0.0, 0.70710678118654752};

    WalkerState build() const { return WalkerState::localized(site, upper, lower); }
    friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

struct ExperimentConfig {
    Mode mode = Mode::Evolve;
    ScheduleSpec schedule;
    // Exponent list for sweep / snapshot / fig modes; empty means the mode default.
    std::vector<double> alphas;
    // Unset means the mode default (1e4, or 1e5 for fig2).
    std::optional<std::int64_t> n_max;
    std::int64_t n0 = 10;
    std::int64_t record_every = 10;
    std::int64_t snapshot_step = 5000;
    int smooth_window = 101;
    std::int64_t max_sites = 2'000'000;
    InitialCondition initial;
    std::filesystem::path out = "qwalk-out";

    std::int64_t effective_n_max() const;
    /// Lower edge of exponent fits: max(1000, 10 n0).
    std::int64_t fit_floor() const;
    /// Throws ConfigError naming the offending field.
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Pretty-printed JSON document holding every field.
std::string serialize_config(const ExperimentConfig& config);
/// Parses JSON text. Syntax errors report line and column; unknown keys and
/// wrong types are ConfigErrors naming the JSON path. Absent keys keep their
/// defaults.
ExperimentConfig parse_config(std::string_view text, std::string_view origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Outcome of a run. `passed` is false when a numerical acceptance check of
/// the mode failed (exit code 2 at the CLI).
struct RunReport {
    bool passed = true;
    std::vector<std::string> lines;
    std::vector<std::filesystem::path> files;
};

RunReport run_evolve(const ExperimentConfig& config);
RunReport run_snapshot(const ExperimentConfig& config);
/// Power-law sweep over alphas (default 0, 0.1, ..., 0.9): one series per
/// alpha, `fits.csv` and `summary.csv` with fitted vs predicted exponents.
RunReport run_fig1(const ExperimentConfig& config);
/// alpha = 1 log fit on the smoothed series and alpha = 2 localization verdict.
RunReport run_fig2(const ExperimentConfig& config);
/// Snapshots at `snapshot_step` for alphas (default 0, 0.3, 1, 2).
RunReport run_fig3(const ExperimentConfig& config);
/// Discrete sigma against sqrt(A t*^2 + B t* + C) seeded at n0.
RunReport run_analytic_compare(const ExperimentConfig& config);

using ProductSumFn = std::function<double(int power, int nu, double t)>;

struct IdentityCase {
    int power;
    int nu;
    double t;
    double direct;
    double closed_form;
    double abs_error;
};

struct IdentityReport {
    std::vector<IdentityCase> cases;
    double max_abs_error = 0.0;
};

/// Every (power, nu) with power in {0,1,2}, |nu| <= 4, for each t.
IdentityReport bessel_identity_suite(const std::vector<double>& ts, const ProductSumFn& direct);
IdentityReport bessel_identity_suite(const std::vector<double>& ts);

RunReport run_identities(const ExperimentConfig& config, const ProductSumFn& direct);
RunReport run_identities(const ExperimentConfig& config);

RunReport run(const ExperimentConfig& config);

/// Worker count for concurrent sweeps: QWALK_THREADS if set and positive,
/// otherwise the hardware concurrency.
unsigned sweep_threads();

/// Calls `task(i)` for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace qwalk
