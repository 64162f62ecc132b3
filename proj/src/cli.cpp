#include "lagcorr/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lagcorr/correlation.hpp"
#include "lagcorr/csv_io.hpp"
#include "lagcorr/diagnostics.hpp"
#include "lagcorr/errors.hpp"
#include "lagcorr/marketdata.hpp"
#include "lagcorr/report.hpp"
#include "lagcorr/synth.hpp"
#include "lagcorr/tails.hpp"

namespace lagcorr::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kVersion = "1.0.0";

enum class Format { csv, json, text };

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    if (name == "text") return Format::text;
    throw ValidationError("unknown format '" + name + "' (expected csv, json or text)");
}

/// Everything a subcommand needs from the command line.
struct RunConfig {
    std::vector<std::string> inputs;
    std::vector<std::string> instruments;
    std::string calendar;
    std::string out_dir;
    std::string format = "csv";
    long long interval_seconds = 3600;
    long long max_gap_seconds = 0;
    std::string window;
    double threshold = kDefaultSignificanceThreshold;
    std::uint64_t seed = 0;

    // Subcommand parameters.
    std::string pair;
    int max_lag = 12;
    int lag = 1;
    std::string windows = "yearly";
    std::string bucket = "month";
    std::string volume_bucket = "year";
    std::size_t min_rows = kDefaultMinBucketRows;
    std::string instrument;
    std::string side = "both";
    std::size_t bins = kDefaultTailBins;
    std::string range;
    std::string fit_range;

    // synth
    std::string kind = "var";
    std::size_t dimension = 5;
    std::size_t rows = 15000;
    std::vector<double> phi;
    std::vector<double> sigma;
    double sigma_scale = 0.002;
    std::string emit = "bars";
    std::size_t roll_every = 0;
    std::size_t ticks_per_bar = 4;
    std::string start = "2009-02-01T01:00:00Z";
    std::string family = "student_t";
    double tail_parameter = 4.0;
    double scale = 1.0;
    std::size_t count = 15000;
};

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto p = text.find(sep, start);
        out.emplace_back(text.substr(start, p == std::string_view::npos ? text.npos : p - start));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    return out;
}

std::pair<std::string, std::string> parse_pair(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2 || parts[0].empty() || parts[1].empty())
        throw ValidationError("--pair expects two instruments 'X1,X2', got '" + text + "'");
    return {parts[0], parts[1]};
}

double parse_number(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(std::string("bad number for ") + what + ": '" + text + "'");
    }
}

std::optional<MagnitudeRange> parse_range(const std::string& text, const char* what) {
    if (text.empty()) return std::nullopt;
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw ValidationError(std::string(what) + " expects 'lo,hi'");
    return MagnitudeRange{parse_number(parts[0], what), parse_number(parts[1], what)};
}

TimeRange parse_time_range(const std::string& text, char sep) {
    const auto parts = split(text, sep);
    if (parts.size() != 2) throw ValidationError("time range expects 'start" + std::string(1, sep) + "end'");
    TimeRange r;
    if (!parts[0].empty()) r.start = parse_timestamp(parts[0]);
    if (!parts[1].empty()) r.end = parse_timestamp(parts[1]);
    if (!(r.start < r.end)) throw ValidationError("time range start must precede its end");
    return r;
}

/// Writes either to stdout or to files under --out.
class Output {
public:
    Output(const RunConfig& cfg, std::ostream& stdout_stream) : dir_(cfg.out_dir), stdout_(stdout_stream) {
        if (!dir_.empty()) fs::create_directories(dir_);
    }

    [[nodiscard]] bool to_directory() const noexcept { return !dir_.empty(); }
    [[nodiscard]] const fs::path& dir() const noexcept { return dir_; }

    void write(const std::string& file_name, const std::function<void(std::ostream&)>& body) {
        if (dir_.empty()) {
            body(stdout_);
            return;
        }
        const fs::path path = dir_ / file_name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write '" + path.string() + "'");
        body(f);
        written_.push_back(file_name);
    }

    /// Sidecar provenance next to the data files; skipped for stdout output.
    void provenance(const std::string& command, const RunConfig& cfg, const json& extra) {
        if (dir_.empty()) return;
        json doc = {{"tool", "lagcorr"},
                    {"version", std::string(kVersion)},
                    {"command", command},
                    {"inputs", cfg.inputs},
                    {"calendar", cfg.calendar},
                    {"outputs", written_}};
        for (const auto& [k, v] : extra.items()) doc[k] = v;
        std::ofstream f(dir_ / "provenance.json", std::ios::binary);
        f << doc.dump(2) << '\n';
    }

private:
    fs::path dir_;
    std::ostream& stdout_;
    std::vector<std::string> written_;
};

// ---- loading ----------------------------------------------------------------

struct LoadedReturns {
    std::vector<Bar> bars;
    std::vector<ReturnSeries> series;  ///< ordered by --instruments or first appearance
    std::size_t rollover_flagged = 0;
};

LoadedReturns load_returns(const RunConfig& cfg) {
    if (cfg.inputs.empty()) throw ValidationError("no --input bar files given");
    LoadedReturns data;
    for (const auto& path : cfg.inputs) {
        auto bars = io::read_bars(path);
        std::move(bars.begin(), bars.end(), std::back_inserter(data.bars));
    }
    std::vector<RolloverSwitch> calendar;
    if (!cfg.calendar.empty()) calendar = io::read_calendar(cfg.calendar);
    const auto returns = compute_returns(data.bars, calendar);
    for (const auto& r : returns) data.rollover_flagged += r.rollover_affected ? 1 : 0;
    auto series = group_by_instrument(returns);
    if (cfg.max_gap_seconds > 0) series = drop_long_gaps(series, std::chrono::seconds{cfg.max_gap_seconds});

    if (cfg.instruments.empty()) {
        data.series = std::move(series);
    } else {
        for (const auto& id : cfg.instruments) {
            const auto it = std::find_if(series.begin(), series.end(),
                                         [&](const ReturnSeries& s) { return s.instrument_id == id; });
            if (it == series.end()) throw ValidationError("instrument '" + id + "' has no returns in the inputs");
            data.series.push_back(*it);
        }
    }
    if (data.series.empty()) throw ValidationError("inputs contain no returns");
    return data;
}

TimeRange config_window(const RunConfig& cfg) {
    return cfg.window.empty() ? TimeRange::unbounded() : parse_time_range(cfg.window, ',');
}

AlignResult load_panel(const RunConfig& cfg) {
    const auto data = load_returns(cfg);
    return align_panel(data.series, config_window(cfg));
}

json panel_provenance(const AlignResult& a) {
    return {{"panel_hash", a.panel.hash()},
            {"panel_rows", a.panel.rows()},
            {"dropped_timestamps", a.dropped_timestamps},
            {"instruments", a.panel.instrument_ids()}};
}

std::string file_ext(Format f) { return f == Format::json ? "json" : f == Format::text ? "txt" : "csv"; }

// ---- subcommands ------------------------------------------------------------

int cmd_ingest(const RunConfig& cfg, std::ostream& out) {
    if (cfg.inputs.empty()) throw ValidationError("no --input tick files given");
    if (cfg.interval_seconds <= 0) throw ValidationError("--interval must be positive");
    std::vector<Tick> ticks;
    for (const auto& path : cfg.inputs) {
        auto t = io::read_ticks(path);
        std::move(t.begin(), t.end(), std::back_inserter(ticks));
    }
    std::vector<RolloverSwitch> calendar;
    if (!cfg.calendar.empty()) calendar = io::read_calendar(cfg.calendar);

    const auto bars = aggregate_ticks(ticks, std::chrono::seconds{cfg.interval_seconds});
    const auto returns = compute_returns(bars, calendar);
    const auto series = group_by_instrument(returns);

    std::vector<std::string> instruments;
    for (const auto& b : bars) {
        if (std::find(instruments.begin(), instruments.end(), b.instrument_id) == instruments.end())
            instruments.push_back(b.instrument_id);
    }

    Output sink(cfg, out);
    json per_instrument = json::array();
    for (const auto& id : instruments) {
        std::vector<Bar> mine;
        std::copy_if(bars.begin(), bars.end(), std::back_inserter(mine),
                     [&](const Bar& b) { return b.instrument_id == id; });
        std::size_t tick_count = 0, flagged = 0, nret = 0;
        for (const auto& b : mine) tick_count += static_cast<std::size_t>(b.tick_count);
        for (const auto& r : returns) {
            if (r.instrument_id != id) continue;
            ++nret;
            flagged += r.rollover_affected ? 1 : 0;
        }
        if (sink.to_directory()) sink.write(id + ".bars.csv", [&](std::ostream& o) { io::write_bars(o, mine); });
        per_instrument.push_back(
            {{"instrument", id}, {"ticks", tick_count}, {"bars", mine.size()}, {"returns", nret}, {"rollover_flagged", flagged}});
    }

    json preview = {{"panel_rows", 0}, {"dropped_timestamps", 0}};
    if (!series.empty()) {
        try {
            const auto aligned = align_panel(series);
            preview = {{"panel_rows", aligned.panel.rows()}, {"dropped_timestamps", aligned.dropped_timestamps}};
        } catch (const EmptyPanelError&) {
        }
    }
    const json summary = {{"instruments", per_instrument}, {"alignment_preview", preview}};

    if (!sink.to_directory()) {
        // Bars go to stdout; the summary is only reported alongside files.
        io::write_bars(out, bars);
        return kSuccess;
    }
    sink.write("ingest_summary.json", [&](std::ostream& o) { o << summary.dump(2) << '\n'; });
    sink.provenance("ingest", cfg, {{"interval_seconds", cfg.interval_seconds}});
    if (parse_format(cfg.format) == Format::json) {
        out << summary.dump(2) << '\n';
    } else {
        for (const auto& e : per_instrument) {
            out << e["instrument"].get<std::string>() << ": " << e["bars"] << " bars, " << e["returns"]
                << " returns, " << e["rollover_flagged"] << " rollover-affected\n";
        }
        out << "alignment preview: " << preview["panel_rows"] << " rows, " << preview["dropped_timestamps"]
            << " timestamps dropped\n";
    }
    return kSuccess;
}

int cmd_corr(const RunConfig& cfg, std::ostream& out) {
    const auto [a, b] = parse_pair(cfg.pair);
    if (cfg.max_lag < 1) throw ValidationError("--max-lag must be at least 1");
    const auto fmt = parse_format(cfg.format);
    const auto aligned = load_panel(cfg);
    const auto& panel = aligned.panel;
    const auto f = correlation_function(panel, panel.column_index(a), panel.column_index(b), cfg.max_lag);
    Output sink(cfg, out);
    sink.write("corr_" + a + "_" + b + "." + file_ext(fmt == Format::text ? Format::csv : fmt), [&](std::ostream& o) {
        if (fmt == Format::json) report::write_json(o, f);
        else report::write_csv(o, f);
    });
    sink.provenance("corr", cfg, panel_provenance(aligned));
    return kSuccess;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
    if (cfg.threshold < 0) throw ValidationError("--threshold must be non-negative");
    if (cfg.lag < 1) throw ValidationError("--lag must be at least 1");
    const auto fmt = parse_format(cfg.format);
    const auto aligned = load_panel(cfg);
    const auto entries = leader_follower_table(aligned.panel, cfg.lag, cfg.threshold);
    Output sink(cfg, out);
    const auto& ids = aligned.panel.instrument_ids();
    if (fmt == Format::json) {
        sink.write("table.json", [&](std::ostream& o) { report::write_json(o, entries); });
    } else if (sink.to_directory()) {
        sink.write("table.txt", [&](std::ostream& o) { report::write_table_text(o, ids, entries); });
        sink.write("table.csv", [&](std::ostream& o) { report::write_csv(o, entries); });
    } else if (fmt == Format::text) {
        report::write_table_text(out, ids, entries);
    } else {
        report::write_csv(out, entries);
    }
    json extra = panel_provenance(aligned);
    extra["threshold"] = cfg.threshold;
    sink.provenance("table", cfg, extra);
    return kSuccess;
}

std::vector<TimeRange> resolve_windows(const std::string& spec, const AlignedPanel& panel) {
    if (spec == "yearly") return yearly_windows(panel);
    if (spec == "monthly") return monthly_windows(panel);
    std::vector<TimeRange> out;
    for (const auto& part : split(spec, ';')) {
        if (!part.empty()) out.push_back(parse_time_range(part, '/'));
    }
    if (out.empty()) throw ValidationError("--windows gave no windows");
    return out;
}

int cmd_history(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto [a, b] = parse_pair(cfg.pair);
    const auto fmt = parse_format(cfg.format);
    const auto aligned = load_panel(cfg);
    const auto& panel = aligned.panel;
    const auto windows = resolve_windows(cfg.windows, panel);
    const auto history =
        windowed_coefficient_history(panel, panel.column_index(a), panel.column_index(b), cfg.lag, windows);
    for (const auto& w : history.warnings) err << "warning: " << w.reason << '\n';
    std::optional<ConstancyFit> fit;
    if (history.values.size() >= 2) fit = fit_constant(history);
    else err << "warning: fewer than two windows with data; no constancy fit\n";
    Output sink(cfg, out);
    const ConstancyFit* fp = fit ? &*fit : nullptr;
    sink.write("history_" + a + "_" + b + "." + file_ext(fmt == Format::text ? Format::csv : fmt),
               [&](std::ostream& o) {
                   if (fmt == Format::json) report::write_json(o, history, fp);
                   else report::write_csv(o, history, fp);
               });
    sink.provenance("history", cfg, panel_provenance(aligned));
    return kSuccess;
}

int cmd_cbpi(const RunConfig& cfg, std::ostream& out) {
    const auto fmt = parse_format(cfg.format);
    const auto period = parse_period(cfg.bucket);
    const auto aligned = load_panel(cfg);
    const auto reports = cbpi_history(aligned.panel, period, cfg.min_rows, cfg.lag);
    if (reports.empty()) throw InsufficientDataError("no bucket holds enough rows for a CBPI");
    Output sink(cfg, out);
    sink.write(std::string("cbpi.") + (fmt == Format::json ? "json" : "csv"), [&](std::ostream& o) {
        if (fmt == Format::json) report::write_json(o, reports);
        else report::write_csv(o, reports);
    });
    sink.provenance("cbpi", cfg, panel_provenance(aligned));
    return kSuccess;
}

int cmd_tails(const RunConfig& cfg, std::ostream& out) {
    if (cfg.instrument.empty()) throw ValidationError("--instrument is required");
    const auto fmt = parse_format(cfg.format);
    const auto data = load_returns(cfg);
    const auto window = config_window(cfg);
    const auto it = std::find_if(data.series.begin(), data.series.end(),
                                 [&](const ReturnSeries& s) { return s.instrument_id == cfg.instrument; });
    if (it == data.series.end()) throw ValidationError("instrument '" + cfg.instrument + "' not in the inputs");
    std::vector<double> values;
    for (const auto& o : it->observations) {
        if (!o.rollover_affected && window.contains(o.timestamp)) values.push_back(o.log_return);
    }
    std::vector<TailSide> sides;
    if (cfg.side == "both") sides = {TailSide::negative, TailSide::positive};
    else sides = {parse_side(cfg.side)};
    const auto range = parse_range(cfg.range, "--range");
    const auto fit_range = parse_range(cfg.fit_range, "--fit-range");

    std::vector<report::TailResult> results;
    for (auto side : sides) {
        report::TailResult r{cfg.instrument, tail_histogram(values, side, cfg.bins, range), std::nullopt, {}};
        try {
            r.fit = fit_power_law(r.histogram, fit_range);
        } catch (const UnderdeterminedFitError& e) {
            if (sides.size() == 1) throw;
            r.fit_error = e.what();
        }
        results.push_back(std::move(r));
    }
    Output sink(cfg, out);
    sink.write("tails_" + cfg.instrument + "." + (fmt == Format::json ? "json" : "csv"), [&](std::ostream& o) {
        if (fmt == Format::json) report::write_json(o, results);
        else report::write_csv(o, results);
    });
    sink.provenance("tails", cfg, {{"sample_count", values.size()}});
    return kSuccess;
}

int cmd_volume(const RunConfig& cfg, std::ostream& out) {
    const auto fmt = parse_format(cfg.format);
    if (cfg.inputs.empty()) throw ValidationError("no --input bar files given");
    std::vector<Bar> bars;
    for (const auto& path : cfg.inputs) {
        auto b = io::read_bars(path);
        std::move(b.begin(), b.end(), std::back_inserter(bars));
    }
    const auto buckets = volume_profile(bars, parse_period(cfg.volume_bucket));
    Output sink(cfg, out);
    sink.write(std::string("volume.") + (fmt == Format::json ? "json" : "csv"), [&](std::ostream& o) {
        if (fmt == Format::json) report::write_json(o, buckets);
        else report::write_csv(o, buckets);
    });
    sink.provenance("volume", cfg, {});
    return kSuccess;
}

Eigen::MatrixXd square_matrix(const std::vector<double>& values, std::size_t n, const char* what) {
    if (values.size() != n * n)
        throw ValidationError(std::string(what) + " needs " + std::to_string(n * n) + " row-major entries");
    Eigen::MatrixXd m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * n + c];
    }
    return m;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
    Output sink(cfg, out);
    if (cfg.kind == "tail") {
        TailModel model{parse_tail_family(cfg.family), cfg.tail_parameter, cfg.scale, cfg.seed};
        const auto sample = generate_tail_sample(model, cfg.count);
        sink.write("tail_sample.csv", [&](std::ostream& o) {
            o << "value\n";
            for (double x : sample) o << io::format_double(x) << '\n';
        });
        sink.provenance("synth", cfg, {{"kind", "tail"}, {"family", cfg.family}, {"seed", cfg.seed}});
        return kSuccess;
    }
    if (cfg.kind != "var") throw ValidationError("--kind must be var or tail");

    const std::size_t n = cfg.dimension;
    if (n < 1) throw ValidationError("--n must be at least 1");
    VarModel model;
    model.phi = cfg.phi.empty() ? Eigen::MatrixXd::Zero(n, n) : square_matrix(cfg.phi, n, "--phi");
    model.sigma = cfg.sigma.empty() ? Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n) * cfg.sigma_scale * cfg.sigma_scale)
                                    : square_matrix(cfg.sigma, n, "--sigma");
    model.seed = cfg.seed;
    PanelLayout layout;
    layout.instrument_ids = cfg.instruments;
    layout.start = parse_timestamp(cfg.start);
    layout.step = std::chrono::seconds{cfg.interval_seconds};
    const auto panel = generate_var(model, cfg.rows, layout);

    EmissionOptions opts;
    opts.interval = layout.step;
    opts.roll_every = cfg.roll_every;
    opts.ticks_per_bar = cfg.ticks_per_bar;
    opts.seed = cfg.seed;

    if (cfg.emit == "panel") {
        sink.write("panel.csv", [&](std::ostream& o) {
            o << "timestamp";
            for (const auto& id : panel.instrument_ids()) o << ',' << id;
            o << '\n';
            for (std::size_t t = 0; t < panel.rows(); ++t) {
                o << format_timestamp(panel.timestamps()[t]);
                for (std::size_t c = 0; c < panel.cols(); ++c) o << ',' << io::format_double(panel.column(c)[t]);
                o << '\n';
            }
        });
    } else {
        const auto market = emit_market(panel, opts);
        if (cfg.emit == "ticks") {
            sink.write("ticks.csv", [&](std::ostream& o) { io::write_ticks(o, market.ticks); });
        } else if (cfg.emit == "bars") {
            sink.write("bars.csv", [&](std::ostream& o) { io::write_bars(o, market.bars); });
        } else {
            throw ValidationError("--emit must be ticks, bars or panel");
        }
        if (sink.to_directory() && !market.calendar.empty())
            sink.write("calendar.csv", [&](std::ostream& o) { io::write_calendar(o, market.calendar); });
    }
    const auto pop = population_lag1_correlations(model);
    json pop_rows = json::array();
    for (Eigen::Index r = 0; r < pop.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < pop.cols(); ++c) row.push_back(pop(r, c));
        pop_rows.push_back(row);
    }
    sink.provenance("synth", cfg,
                    {{"kind", "var"}, {"seed", cfg.seed}, {"panel_hash", panel.hash()}, {"population_lag1", pop_rows}});
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Lagged two-point correlation diagnostics for futures bar data", "lagcorr"};
    app.set_config("--config", "", "Flat key=value config file (flags override it)");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--input,-i", cfg.inputs, "Input files (tick CSV for ingest, bar CSV otherwise)");
    app.add_option("--out,-o", cfg.out_dir, "Output directory (stdout when omitted)");
    app.add_option("--format,-f", cfg.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
    app.add_option("--interval", cfg.interval_seconds, "Bar interval in seconds")->capture_default_str();
    app.add_option("--threshold", cfg.threshold, "Significance threshold in standard errors")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed for synth")->capture_default_str();
    app.add_option("--calendar", cfg.calendar, "Rollover calendar CSV");
    app.add_option("--instruments", cfg.instruments, "Instrument order/subset")->delimiter(',');
    app.add_option("--window", cfg.window, "Analysis window 'start,end' (ISO-8601, either side may be empty)");
    app.add_option("--max-gap", cfg.max_gap_seconds, "Drop returns spanning more than this many seconds (0 keeps all)");

    auto* ingest = app.add_subcommand("ingest", "Aggregate ticks to bars and flag rollover returns");

    auto* corr = app.add_subcommand("corr", "Correlation function C(t_d | x1, x2) over -L..L");
    corr->add_option("--pair", cfg.pair, "x1,x2 with t_d = t(x1) - t(x2)")->required();
    corr->add_option("--max-lag", cfg.max_lag, "Largest |lag| in bars")->capture_default_str();

    auto* table = app.add_subcommand("table", "Leader-follower significance matrix");
    table->add_option("--lag", cfg.lag)->capture_default_str();

    auto* history = app.add_subcommand("history", "Windowed coefficient history with constancy fit");
    history->add_option("--pair", cfg.pair, "x1,x2 with t_d = t(x1) - t(x2)")->required();
    history->add_option("--lag", cfg.lag)->capture_default_str();
    history->add_option("--windows", cfg.windows, "yearly, monthly, or 'start/end;start/end'")->capture_default_str();

    auto* cbpi_cmd = app.add_subcommand("cbpi", "Correlation-based predictability index per calendar bucket");
    cbpi_cmd->add_option("--bucket", cfg.bucket, "month, year or all")->capture_default_str();
    cbpi_cmd->add_option("--min-rows", cfg.min_rows, "Rows below which a bucket is low-statistics")->capture_default_str();
    cbpi_cmd->add_option("--lag", cfg.lag)->capture_default_str();

    auto* tails = app.add_subcommand("tails", "Tail density histogram and power-law fit");
    tails->add_option("--instrument", cfg.instrument)->required();
    tails->add_option("--side", cfg.side, "positive, negative or both")->capture_default_str();
    tails->add_option("--bins", cfg.bins)->capture_default_str();
    tails->add_option("--range", cfg.range, "Histogram |return| range 'lo,hi'");
    tails->add_option("--fit-range", cfg.fit_range, "Fit |return| range 'lo,hi'");

    auto* volume = app.add_subcommand("volume", "Mean per-bar volume per calendar bucket");
    volume->add_option("--bucket", cfg.volume_bucket, "year, month or all")->capture_default_str();

    auto* synth = app.add_subcommand("synth", "Generate synthetic data with known properties");
    synth->add_option("--kind", cfg.kind, "var or tail")->capture_default_str();
    synth->add_option("--n", cfg.dimension, "VAR dimension")->capture_default_str();
    synth->add_option("--rows", cfg.rows, "Panel length")->capture_default_str();
    synth->add_option("--phi", cfg.phi, "Row-major lag-1 coefficients")->delimiter(',');
    synth->add_option("--sigma", cfg.sigma, "Row-major innovation covariance")->delimiter(',');
    synth->add_option("--sigma-scale", cfg.sigma_scale, "Innovation std when --sigma is omitted")->capture_default_str();
    synth->add_option("--emit", cfg.emit, "ticks, bars or panel")->capture_default_str();
    synth->add_option("--roll-every", cfg.roll_every, "Bars per contract (0: never roll)")->capture_default_str();
    synth->add_option("--ticks-per-bar", cfg.ticks_per_bar)->capture_default_str();
    synth->add_option("--start", cfg.start, "Timestamp of the first return")->capture_default_str();
    synth->add_option("--family", cfg.family, "gaussian, student_t or pareto")->capture_default_str();
    synth->add_option("--tail-param", cfg.tail_parameter, "nu for student_t, density exponent for pareto")
        ->capture_default_str();
    synth->add_option("--scale", cfg.scale)->capture_default_str();
    synth->add_option("--count", cfg.count, "Tail sample size")->capture_default_str();

    std::vector<std::string> reversed;
    if (args.size() > 1) reversed.assign(args.rbegin(), args.rend() - 1);
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(cfg, out);
        if (corr->parsed()) return cmd_corr(cfg, out);
        if (table->parsed()) return cmd_table(cfg, out);
        if (history->parsed()) return cmd_history(cfg, out, err);
        if (cbpi_cmd->parsed()) return cmd_cbpi(cfg, out);
        if (tails->parsed()) return cmd_tails(cfg, out);
        if (volume->parsed()) return cmd_volume(cfg, out);
        if (synth->parsed()) return cmd_synth(cfg, out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const StatisticalError& e) {
        err << "statistical error: " << e.what() << '\n';
        return kDegenerate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}

}  // namespace lagcorr::cli
