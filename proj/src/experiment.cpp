#include "qwalk/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qwalk/analytic.hpp"
#include "qwalk/bessel.hpp"
#include "qwalk/csv.hpp"
#include "qwalk/error.hpp"
#include "qwalk/evolution.hpp"

namespace qwalk {

using nlohmann::json;

namespace {

constexpr double kSupportThreshold = 1e-6;
constexpr double kCompareTolerance = 0.03;
constexpr double kIdentityTolerance = 1e-10;

struct ModeName {
    Mode mode;
    std::string_view name;
};

constexpr ModeName kModes[] = {
    {Mode::Evolve, "evolve"},
    {Mode::Snapshot, "snapshot"},
    {Mode::Sweep, "sweep"},
    {Mode::AnalyticCompare, "analytic-compare"},
    {Mode::Identities, "identities"},
    {Mode::Fig1, "fig1"},
    {Mode::Fig2, "fig2"},
    {Mode::Fig3, "fig3"},
};

struct KindName {
    ScheduleSpec::Kind kind;
    std::string_view name;
    std::string_view parameter;
};

constexpr KindName kKinds[] = {
    {ScheduleSpec::Kind::Constant, "constant", "theta"},
    {ScheduleSpec::Kind::PowerLaw, "powerlaw", "alpha"},
    {ScheduleSpec::Kind::Linear, "linear", "gamma"},
    {ScheduleSpec::Kind::Table, "table", ""},
};

const KindName& kind_entry(ScheduleSpec::Kind kind) {
    for (const auto& k : kKinds) {
        if (k.kind == kind) return k;
    }
    throw ConfigError("unknown schedule kind");
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

double read_number(const json& node, const std::string& path) {
    if (!node.is_number()) fail(path, "expected a number, got " + std::string(node.type_name()));
    const double v = node.get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
}

std::int64_t read_integer(const json& node, const std::string& path) {
    if (!node.is_number_integer()) {
        fail(path, "expected an integer, got " + std::string(node.type_name()));
    }
    return node.get<std::int64_t>();
}

Amplitude read_amplitude(const json& node, const std::string& path) {
    if (node.is_number()) return {read_number(node, path), 0.0};
    if (node.is_array() && node.size() == 2) {
        return {read_number(node[0], path + "[0]"), read_number(node[1], path + "[1]")};
    }
    fail(path, "expected a real number or a [re, im] pair");
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(path + "." + key, "unknown key");
        }
    }
}

ScheduleSpec read_schedule(const json& node, const std::string& path) {
    if (!node.is_object()) fail(path, "expected an object");
    if (!node.contains("kind") || !node["kind"].is_string()) fail(path + ".kind", "missing string");
    const auto name = node["kind"].get<std::string>();
    ScheduleSpec spec;
    const KindName* entry = nullptr;
    for (const auto& k : kKinds) {
        if (k.name == name) entry = &k;
    }
    if (entry == nullptr) {
        fail(path + ".kind", "unknown schedule kind '" + name +
                                 "' (constant, powerlaw, linear, table)");
    }
    spec.kind = entry->kind;
    if (spec.kind == ScheduleSpec::Kind::Table) {
        reject_unknown(node, path, {"kind", "angles", "path"});
        if (node.contains("angles")) {
            const auto& arr = node["angles"];
            if (!arr.is_array()) fail(path + ".angles", "expected an array");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                spec.angles.push_back(read_number(arr[i], path + ".angles[" + std::to_string(i) + "]"));
            }
        }
        if (node.contains("path")) {
            if (!node["path"].is_string()) fail(path + ".path", "expected a string");
            spec.table_path = node["path"].get<std::string>();
        }
        return spec;
    }
    const std::string param(entry->parameter);
    reject_unknown(node, path, {"kind", param});
    if (!node.contains(param)) fail(path + "." + param, "missing");
    spec.value = read_number(node[param], path + "." + param);
    return spec;
}

std::filesystem::path ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

template <class Writer>
std::filesystem::path write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    writer(out);
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
    return path;
}

std::string alpha_tag(double alpha) {
    return "alpha_" + csv::shortest(alpha);
}

EvolveOptions evolve_options(const ExperimentConfig& config) {
    EvolveOptions opts;
    opts.record_every = config.record_every;
    opts.max_sites = static_cast<std::size_t>(config.max_sites);
    return opts;
}

// Fit window [lo, n_max]. Runs too short for the default floor fall back to
// the last decade so that a (weaker) fit is still reported.
std::pair<std::int64_t, std::int64_t> fit_window(const ExperimentConfig& config,
                                                 std::int64_t n_max) {
    std::int64_t lo = config.fit_floor();
    if (lo >= n_max) lo = std::max<std::int64_t>(1, n_max / 10);
    return {lo, n_max};
}

std::vector<double> default_alphas(Mode mode) {
    if (mode == Mode::Fig3) return {0.0, 0.3, 1.0, 2.0};
    std::vector<double> out;
    for (int i = 0; i < 10; ++i) out.push_back(i / 10.0);
    return out;
}

std::string fmt_fixed(double v, int digits = 4) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << v;
    return s.str();
}

}  // namespace

std::string_view to_string(Mode mode) noexcept {
    for (const auto& m : kModes) {
        if (m.mode == mode) return m.name;
    }
    return "unknown";
}

Mode parse_mode(std::string_view name) {
    for (const auto& m : kModes) {
        if (m.name == name) return m.mode;
    }
    throw ConfigError("unknown mode '" + std::string(name) +
                      "' (evolve, snapshot, sweep, analytic-compare, identities, fig1, fig2, fig3)");
}

CoinSchedule ScheduleSpec::build() const {
    switch (kind) {
        case Kind::Constant: return CoinSchedule::constant(value);
        case Kind::PowerLaw: return CoinSchedule::power_law(value);
        case Kind::Linear: return CoinSchedule::linear(value);
        case Kind::Table:
            if (!table_path.empty()) return CoinSchedule::table_from_csv(table_path);
            return CoinSchedule::table(angles);
    }
    throw ConfigError("unknown schedule kind");
}

std::int64_t ExperimentConfig::effective_n_max() const {
    if (n_max) return *n_max;
    return mode == Mode::Fig2 ? 100'000 : 10'000;
}

std::int64_t ExperimentConfig::fit_floor() const {
    return std::max<std::int64_t>(1000, 10 * n0);
}

void ExperimentConfig::validate() const {
    if (n0 < 1) fail("n0", "must be >= 1");
    if (effective_n_max() < n0) {
        fail("n_max", "must be >= n0 (n_max = " + std::to_string(effective_n_max()) +
                          ", n0 = " + std::to_string(n0) + ")");
    }
    if (record_every < 1) fail("record_every", "must be >= 1");
    if (snapshot_step < 1) fail("snapshot_step", "must be >= 1");
    if (smooth_window < 1 || smooth_window % 2 == 0) fail("smooth_window", "must be odd and >= 1");
    if (max_sites < 3) fail("max_sites", "must be >= 3");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] >= 0.0) || !std::isfinite(alphas[i])) {
            fail("alphas[" + std::to_string(i) + "]", "must be finite and >= 0");
        }
    }
    const double norm = std::norm(initial.upper) + std::norm(initial.lower);
    if (!(std::abs(norm - 1.0) <= 1e-12)) {
        fail("initial", "|a|^2 + |b|^2 = " + csv::format(norm) + ", expected 1");
    }
    switch (schedule.kind) {
        case ScheduleSpec::Kind::PowerLaw:
            if (!(schedule.value >= 0.0)) fail("schedule.alpha", "must be >= 0");
            break;
        case ScheduleSpec::Kind::Table:
            if (schedule.angles.empty() && schedule.table_path.empty()) {
                fail("schedule", "table schedule needs 'angles' or 'path'");
            }
            break;
        default:
            break;
    }
}

std::string serialize_config(const ExperimentConfig& config) {
    json doc;
    doc["mode"] = std::string(to_string(config.mode));
    json sched;
    const auto& entry = kind_entry(config.schedule.kind);
    sched["kind"] = std::string(entry.name);
    if (config.schedule.kind == ScheduleSpec::Kind::Table) {
        if (!config.schedule.angles.empty()) sched["angles"] = config.schedule.angles;
        if (!config.schedule.table_path.empty()) sched["path"] = config.schedule.table_path;
    } else {
        sched[std::string(entry.parameter)] = config.schedule.value;
    }
    doc["schedule"] = sched;
    doc["alphas"] = config.alphas;
    if (config.n_max) doc["n_max"] = *config.n_max;
    doc["n0"] = config.n0;
    doc["record_every"] = config.record_every;
    doc["snapshot_step"] = config.snapshot_step;
    doc["smooth_window"] = config.smooth_window;
    doc["max_sites"] = config.max_sites;
    doc["initial"] = {
        {"site", config.initial.site},
        {"a", {config.initial.upper.real(), config.initial.upper.imag()}},
        {"b", {config.initial.lower.real(), config.initial.lower.imag()}},
    };
    doc["out"] = config.out.string();
    return doc.dump(2) + "\n";
}

ExperimentConfig parse_config(std::string_view text, std::string_view origin) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // Translate the byte offset into a line and column.
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(std::string(origin) + ":" + std::to_string(line) + ":" +
                          std::to_string(col) + ": JSON syntax error: " + e.what());
    }
    if (!doc.is_object()) fail(std::string(origin), "top level must be a JSON object");

    const std::string root = "config";
    reject_unknown(doc, root,
                   {"mode", "schedule", "alphas", "n_max", "n0", "record_every", "snapshot_step",
                    "smooth_window", "max_sites", "initial", "out"});
    ExperimentConfig cfg;
    if (doc.contains("mode")) {
        if (!doc["mode"].is_string()) fail(root + ".mode", "expected a string");
        try {
            cfg.mode = parse_mode(doc["mode"].get<std::string>());
        } catch (const ConfigError& e) {
            fail(root + ".mode", e.what());
        }
    }
    if (doc.contains("schedule")) cfg.schedule = read_schedule(doc["schedule"], root + ".schedule");
    if (doc.contains("alphas")) {
        const auto& arr = doc["alphas"];
        if (!arr.is_array()) fail(root + ".alphas", "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            cfg.alphas.push_back(read_number(arr[i], root + ".alphas[" + std::to_string(i) + "]"));
        }
    }
    if (doc.contains("n_max")) cfg.n_max = read_integer(doc["n_max"], root + ".n_max");
    if (doc.contains("n0")) cfg.n0 = read_integer(doc["n0"], root + ".n0");
    if (doc.contains("record_every")) {
        cfg.record_every = read_integer(doc["record_every"], root + ".record_every");
    }
    if (doc.contains("snapshot_step")) {
        cfg.snapshot_step = read_integer(doc["snapshot_step"], root + ".snapshot_step");
    }
    if (doc.contains("smooth_window")) {
        cfg.smooth_window =
            static_cast<int>(read_integer(doc["smooth_window"], root + ".smooth_window"));
    }
    if (doc.contains("max_sites")) cfg.max_sites = read_integer(doc["max_sites"], root + ".max_sites");
    if (doc.contains("initial")) {
        const auto& init = doc["initial"];
        const std::string path = root + ".initial";
        if (!init.is_object()) fail(path, "expected an object");
        reject_unknown(init, path, {"site", "a", "b"});
        if (init.contains("site")) cfg.initial.site = read_integer(init["site"], path + ".site");
        if (init.contains("a")) cfg.initial.upper = read_amplitude(init["a"], path + ".a");
        if (init.contains("b")) cfg.initial.lower = read_amplitude(init["b"], path + ".b");
    }
    if (doc.contains("out")) {
        if (!doc["out"].is_string()) fail(root + ".out", "expected a string");
        cfg.out = doc["out"].get<std::string>();
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

unsigned sweep_threads() {
    if (const char* env = std::getenv("QWALK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task) {
    if (count == 0) return;
    const auto workers = static_cast<std::size_t>(std::max(1u, threads));
    if (workers == 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

RunReport run_evolve(const ExperimentConfig& config) {
    config.validate();
    const auto dir = ensure_dir(config.out);
    const auto schedule = config.schedule.build();
    const auto n_max = config.effective_n_max();
    const auto result = evolve(config.initial.build(), schedule, n_max, evolve_options(config));

    RunReport report;
    report.files.push_back(write_file(dir / "series.csv",
                                      [&](std::ostream& o) { result.series.write_csv(o); }));
    const auto& last = result.series.records.back();
    report.lines.push_back("schedule " + schedule.descriptor() + ", n = " +
                           std::to_string(last.step) + ", sigma = " + csv::format(last.sigma) +
                           ", m1 = " + csv::format(last.m1));
    report.lines.push_back("norm drift " +
                           csv::format(std::abs(result.final_state.norm() - 1.0)));

    const auto [lo, hi] = fit_window(config, n_max);
    try {
        const auto fit = fit_power_law(result.series, lo, hi);
        const double alpha = config.schedule.kind == ScheduleSpec::Kind::PowerLaw
                                 ? config.schedule.value
                                 : std::numeric_limits<double>::quiet_NaN();
        report.files.push_back(write_file(dir / "fit.csv", [&](std::ostream& o) {
            write_fit_header(o);
            write_fit_row(o, alpha, fit);
        }));
        std::string line = "power-law fit over [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]: exponent " + fmt_fixed(fit.exponent) +
                           ", R^2 " + fmt_fixed(fit.r_squared, 6);
        if (config.schedule.kind == ScheduleSpec::Kind::PowerLaw) {
            const auto p = predict_regime(alpha);
            line += ", predicted " + std::string(to_string(p.regime));
            if (p.law == GrowthLaw::Power) line += " (exponent " + fmt_fixed(p.exponent) + ")";
        }
        report.lines.push_back(line);
    } catch (const InsufficientData& e) {
        report.lines.push_back(std::string("no exponent fit: ") + e.what());
    }
    return report;
}

RunReport run_fig1(const ExperimentConfig& config) {
    config.validate();
    const auto dir = ensure_dir(config.out);
    const auto alphas = config.alphas.empty() ? default_alphas(Mode::Fig1) : config.alphas;
    const auto n_max = config.effective_n_max();
    const auto [lo, hi] = fit_window(config, n_max);

    std::vector<std::optional<FitResult>> fits(alphas.size());
    std::vector<std::string> notes(alphas.size());
    RunReport report;
    std::vector<std::filesystem::path> series_files(alphas.size());
    parallel_for(alphas.size(), sweep_threads(), [&](std::size_t i) {
        const auto schedule = CoinSchedule::power_law(alphas[i]);
        const auto result = evolve(config.initial.build(), schedule, n_max, evolve_options(config));
        series_files[i] = write_file(dir / ("series_" + alpha_tag(alphas[i]) + ".csv"),
                                     [&](std::ostream& o) { result.series.write_csv(o); });
        try {
            fits[i] = fit_power_law(result.series, lo, hi);
        } catch (const InsufficientData& e) {
            notes[i] = e.what();
        }
    });
    report.files = series_files;

    report.files.push_back(write_file(dir / "fits.csv", [&](std::ostream& o) {
        write_fit_header(o);
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (fits[i]) write_fit_row(o, alphas[i], *fits[i]);
        }
    }));
    report.files.push_back(write_file(dir / "summary.csv", [&](std::ostream& o) {
        o << "alpha,regime,predicted_exponent,exponent,deviation,r_squared\n";
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            const auto p = predict_regime(alphas[i]);
            o << csv::format(alphas[i]) << ',' << to_string(p.regime) << ',';
            o << (p.law == GrowthLaw::Power ? csv::format(p.exponent) : "") << ',';
            if (fits[i]) {
                o << csv::format(fits[i]->exponent) << ','
                  << (p.law == GrowthLaw::Power ? csv::format(fits[i]->exponent - p.exponent) : "")
                  << ',' << csv::format(fits[i]->r_squared);
            } else {
                o << ",,";
            }
            o << '\n';
        }
    }));
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const auto p = predict_regime(alphas[i]);
        std::string line = "alpha " + csv::shortest(alphas[i]) + " (" +
                           std::string(to_string(p.regime)) + "): ";
        if (fits[i]) {
            line += "exponent " + fmt_fixed(fits[i]->exponent);
            if (p.law == GrowthLaw::Power) line += " vs predicted " + fmt_fixed(p.exponent);
        } else {
            line += "no fit (" + notes[i] + ")";
        }
        report.lines.push_back(line);
    }
    return report;
}

RunReport run_fig2(const ExperimentConfig& config) {
    config.validate();
    const auto dir = ensure_dir(config.out);
    const auto n_max = config.effective_n_max();
    const auto [lo, hi] = fit_window(config, n_max);
    const auto opts = evolve_options(config);

    const auto log_run = evolve(config.initial.build(), CoinSchedule::power_law(1.0), n_max, opts);
    const auto bounded_run =
        evolve(config.initial.build(), CoinSchedule::power_law(2.0), n_max, opts);
    const auto smoothed = smooth(log_run.series, config.smooth_window);

    RunReport report;
    report.files.push_back(write_file(dir / "series_alpha_1.csv",
                                      [&](std::ostream& o) { log_run.series.write_csv(o); }));
    report.files.push_back(write_file(dir / "series_alpha_1_smoothed.csv",
                                      [&](std::ostream& o) { smoothed.write_csv(o); }));
    report.files.push_back(write_file(dir / "series_alpha_2.csv",
                                      [&](std::ostream& o) { bounded_run.series.write_csv(o); }));

    std::optional<FitResult> fit;
    std::optional<LocalizationVerdict> verdict;
    try {
        fit = fit_logarithmic(smoothed, lo, hi);
        report.lines.push_back("alpha 1: sigma vs ln n over [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "] (smoothed, window " +
                               std::to_string(config.smooth_window) + "): slope " +
                               fmt_fixed(fit->exponent) + ", R^2 " +
                               fmt_fixed(fit->r_squared, 6));
    } catch (const InsufficientData& e) {
        report.lines.push_back(std::string("alpha 1: no log fit: ") + e.what());
    }
    try {
        verdict = detect_localization(bounded_run.series, lo);
        report.lines.push_back(
            "alpha 2: " + std::string(verdict->is_localized ? "localized" : "not localized") +
            ", sigma mean " + fmt_fixed(verdict->sigma_mean) + ", relative range " +
            csv::format(verdict->relative_range));
    } catch (const InsufficientData& e) {
        report.lines.push_back(std::string("alpha 2: no verdict: ") + e.what());
    }

    report.files.push_back(write_file(dir / "summary.csv", [&](std::ostream& o) {
        o << "alpha,analysis,slope,intercept,r_squared,is_localized,sigma_mean,sigma_range,"
             "relative_range\n";
        o << "1,log_fit,";
        if (fit) {
            o << csv::format(fit->exponent) << ',' << csv::format(fit->prefactor) << ','
              << csv::format(fit->r_squared);
        } else {
            o << ",,";
        }
        o << ",,,,\n";
        o << "2,localization,,,,";
        if (verdict) {
            o << (verdict->is_localized ? "true" : "false") << ','
              << csv::format(verdict->sigma_mean) << ',' << csv::format(verdict->sigma_range)
              << ',' << csv::format(verdict->relative_range);
        } else {
            o << ",,,";
        }
        o << '\n';
    }));
    return report;
}

namespace {

RunReport run_snapshots(const ExperimentConfig& config, const std::vector<double>& alphas) {
    const auto dir = ensure_dir(config.out);
    const auto n = config.snapshot_step;

    struct Job {
        std::string tag;
        CoinSchedule schedule;
    };
    std::vector<Job> jobs;
    if (alphas.empty()) {
        jobs.push_back({"schedule", config.schedule.build()});
    } else {
        for (double a : alphas) jobs.push_back({alpha_tag(a), CoinSchedule::power_law(a)});
    }

    struct Outcome {
        Site edge = -1;
        MomentRecord moments;
        std::filesystem::path file;
    };
    std::vector<Outcome> outcomes(jobs.size());
    parallel_for(jobs.size(), sweep_threads(), [&](std::size_t i) {
        const auto dist =
            snapshot_distribution(config.initial.build(), jobs[i].schedule, n, evolve_options(config));
        outcomes[i].edge = dist.support_edge(kSupportThreshold);
        outcomes[i].moments = moments(dist);
        outcomes[i].file = write_file(dir / ("snapshot_" + jobs[i].tag + ".csv"),
                                      [&](std::ostream& o) { dist.write_csv(o); });
    });

    RunReport report;
    for (const auto& out : outcomes) report.files.push_back(out.file);
    report.files.push_back(write_file(dir / "snapshot_summary.csv", [&](std::ostream& o) {
        o << "schedule,n,support_edge,m1,sigma\n";
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            o << jobs[i].schedule.descriptor() << ',' << n << ',' << outcomes[i].edge << ','
              << csv::format(outcomes[i].moments.m1) << ','
              << csv::format(outcomes[i].moments.sigma) << '\n';
        }
    }));
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        report.lines.push_back(jobs[i].schedule.descriptor() + " at n = " + std::to_string(n) +
                               ": support edge (P > 1e-6) " + std::to_string(outcomes[i].edge) +
                               ", sigma " + fmt_fixed(outcomes[i].moments.sigma));
    }
    return report;
}

}  // namespace

RunReport run_snapshot(const ExperimentConfig& config) {
    config.validate();
    return run_snapshots(config, config.alphas);
}

RunReport run_fig3(const ExperimentConfig& config) {
    config.validate();
    return run_snapshots(config, config.alphas.empty() ? default_alphas(Mode::Fig3) : config.alphas);
}

RunReport run_analytic_compare(const ExperimentConfig& config) {
    config.validate();
    double alpha = 0.0;
    if (!config.alphas.empty()) {
        alpha = config.alphas.front();
    } else if (config.schedule.kind == ScheduleSpec::Kind::PowerLaw) {
        alpha = config.schedule.value;
    } else {
        throw ConfigError("schedule: analytic-compare needs a power-law schedule or an alpha");
    }
    const auto dir = ensure_dir(config.out);
    const auto schedule = CoinSchedule::power_law(alpha);
    const auto n_max = config.effective_n_max();
    auto opts = evolve_options(config);

    // Seed the continuum model from the discrete state at n0.
    auto seeded = evolve(config.initial.build(), schedule, config.n0, opts);
    const AnalyticModel model(seeded.final_state, alpha);
    const auto coeffs = sigma_coefficients(model);
    auto run = evolve(std::move(seeded.final_state), schedule, n_max, opts);
    if (run.series.records.empty() || run.series.records.front().step != config.n0) {
        run.series.records.insert(run.series.records.begin(), moments(probability(model.seed())));
    }

    MomentSeries analytic{{}, "analytic(" + schedule.descriptor() + ")"};
    for (const auto& r : run.series.records) {
        const double s = coeffs.sigma(model.effective_time(r.step));
        analytic.records.push_back({r.step, 0.0, s * s, s});
    }

    RunReport report;
    report.files.push_back(write_file(dir / "compare.csv", [&](std::ostream& o) {
        o << "n,sigma_discrete,sigma_analytic,ratio\n";
        for (std::size_t i = 0; i < run.series.records.size(); ++i) {
            const double d = run.series.records[i].sigma;
            const double a = analytic.records[i].sigma;
            o << run.series.records[i].step << ',' << csv::format(d) << ',' << csv::format(a)
              << ',' << csv::format(a > 0.0 ? d / a : std::numeric_limits<double>::quiet_NaN())
              << '\n';
        }
    }));

    report.lines.push_back("alpha " + csv::shortest(alpha) + ", n0 = " +
                           std::to_string(config.n0) + ": A = " + csv::format(coeffs.a) +
                           ", B = " + csv::format(coeffs.b) + ", C = " + csv::format(coeffs.c));
    const auto [lo, hi] = fit_window(config, n_max);
    std::optional<FitResult> fd;
    std::optional<FitResult> fa;
    try {
        fd = fit_power_law(run.series, lo, hi);
        fa = fit_power_law(analytic, lo, hi);
    } catch (const InsufficientData& e) {
        report.lines.push_back(std::string("exponents not compared: ") + e.what());
    }
    report.files.push_back(write_file(dir / "compare_summary.csv", [&](std::ostream& o) {
        o << "alpha,n0,A,B,C,n_lo,n_hi,exponent_discrete,exponent_analytic,difference\n";
        o << csv::format(alpha) << ',' << config.n0 << ',' << csv::format(coeffs.a) << ','
          << csv::format(coeffs.b) << ',' << csv::format(coeffs.c) << ',' << lo << ',' << hi
          << ',';
        if (fd && fa) {
            o << csv::format(fd->exponent) << ',' << csv::format(fa->exponent) << ','
              << csv::format(fa->exponent - fd->exponent);
        } else {
            o << ",,";
        }
        o << '\n';
    }));
    if (fd && fa) {
        const double diff = std::abs(fa->exponent - fd->exponent);
        report.passed = diff <= kCompareTolerance;
        report.lines.push_back("exponents over [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]: discrete " + fmt_fixed(fd->exponent) +
                               ", analytic " + fmt_fixed(fa->exponent) + ", |difference| " +
                               fmt_fixed(diff) + (report.passed ? " <= " : " > ") +
                               fmt_fixed(kCompareTolerance, 2));
    }
    return report;
}

IdentityReport bessel_identity_suite(const std::vector<double>& ts, const ProductSumFn& direct) {
    IdentityReport report;
    for (double t : ts) {
        for (int power = 0; power <= 2; ++power) {
            for (int nu = -4; nu <= 4; ++nu) {
                IdentityCase c{power, nu, t, direct(power, nu, t),
                               bessel::product_sum_closed_form(power, nu, t), 0.0};
                c.abs_error = std::abs(c.direct - c.closed_form);
                if (std::isnan(c.abs_error)) c.abs_error = std::numeric_limits<double>::infinity();
                report.max_abs_error = std::max(report.max_abs_error, c.abs_error);
                report.cases.push_back(c);
            }
        }
    }
    return report;
}

IdentityReport bessel_identity_suite(const std::vector<double>& ts) {
    return bessel_identity_suite(ts, &bessel::product_sum);
}

RunReport run_identities(const ExperimentConfig& config, const ProductSumFn& direct) {
    const auto dir = ensure_dir(config.out);
    const std::vector<double> ts = {0.0, 0.5, 1.0, 5.0, 20.0, 100.0};
    const auto suite = bessel_identity_suite(ts, direct);

    RunReport report;
    report.files.push_back(write_file(dir / "identities.csv", [&](std::ostream& o) {
        o << "power,nu,t,direct,closed_form,abs_error\n";
        for (const auto& c : suite.cases) {
            o << c.power << ',' << c.nu << ',' << csv::format(c.t) << ',' << csv::format(c.direct)
              << ',' << csv::format(c.closed_form) << ',' << csv::format(c.abs_error) << '\n';
        }
    }));
    for (int power = 0; power <= 2; ++power) {
        double worst = 0.0;
        for (const auto& c : suite.cases) {
            if (c.power == power) worst = std::max(worst, c.abs_error);
        }
        report.lines.push_back("sum mu^" + std::to_string(power) +
                               " J_mu J_(mu-nu): max abs error " + csv::format(worst));
    }
    report.passed = suite.max_abs_error < kIdentityTolerance;
    report.lines.push_back("max abs error " + csv::format(suite.max_abs_error) +
                           (report.passed ? " < 1e-10" : " >= 1e-10"));
    return report;
}

RunReport run_identities(const ExperimentConfig& config) {
    return run_identities(config, &bessel::product_sum);
}

RunReport run(const ExperimentConfig& config) {
    switch (config.mode) {
        case Mode::Evolve: return run_evolve(config);
        case Mode::Snapshot: return run_snapshot(config);
        case Mode::Sweep:
        case Mode::Fig1: return run_fig1(config);
        case Mode::Fig2: return run_fig2(config);
        case Mode::Fig3: return run_fig3(config);
        case Mode::AnalyticCompare: return run_analytic_compare(config);
        case Mode::Identities: return run_identities(config);
    }
    throw ConfigError("unknown mode");
}

}  // namespace qwalk
