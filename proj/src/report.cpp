#include "lagcorr/report.hpp"

#include <cstdio>
#include <iomanip>
#include <map>
#include <ostream>

#include <json.hpp>

#include "lagcorr/csv_io.hpp"

namespace lagcorr::report {

namespace {

using nlohmann::json;
using io::format_double;

json window_json(const TimeRange& w) {
    return {{"start", w.start == Timestamp::min() ? json(nullptr) : json(format_timestamp(w.start))},
            {"end", w.end == Timestamp::max() ? json(nullptr) : json(format_timestamp(w.end))}};
}

std::string bound(Timestamp t) {
    if (t == Timestamp::min() || t == Timestamp::max()) return "";
    return format_timestamp(t);
}

}  // namespace

std::string three_significant(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---- correlation function ---------------------------------------------------

void write_csv(std::ostream& out, const CorrelationFunction& f) {
    out << kCorrelationHeader << '\n';
    for (const auto& l : f.lags) {
        out << l.lag << ',' << format_double(l.raw_value) << ',' << format_double(l.normalized_value) << ','
            << format_double(l.std_error) << ',' << l.pair_count << '\n';
    }
}

void write_json(std::ostream& out, const CorrelationFunction& f) {
    json lags = json::array();
    for (const auto& l : f.lags) {
        lags.push_back({{"lag", l.lag},
                        {"raw", l.raw_value},
                        {"normalized", l.normalized_value},
                        {"std_error", l.std_error},
                        {"pair_count", l.pair_count}});
    }
    const json doc = {{"x1", f.leader_id},
                      {"x2", f.follower_id},
                      {"window", window_json(f.window)},
                      {"panel_hash", f.panel_hash},
                      {"lags", lags}};
    out << doc.dump(2) << '\n';
}

// ---- leader-follower --------------------------------------------------------

void write_csv(std::ostream& out, std::span<const LeaderFollowerEntry> entries) {
    out << "leader,follower,lag,coefficient,std_error,significance,zero_lag_coefficient,sign_type\n";
    for (const auto& e : entries) {
        out << e.leader_id << ',' << e.follower_id << ',' << e.lag << ',' << format_double(e.coefficient) << ','
            << format_double(e.std_error) << ',' << format_double(e.significance) << ','
            << format_double(e.zero_lag_coefficient) << ',' << to_string(e.sign_type) << '\n';
    }
}

void write_json(std::ostream& out, std::span<const LeaderFollowerEntry> entries) {
    json arr = json::array();
    for (const auto& e : entries) {
        arr.push_back({{"leader", e.leader_id},
                       {"follower", e.follower_id},
                       {"lag", e.lag},
                       {"coefficient", e.coefficient},
                       {"std_error", e.std_error},
                       {"significance", e.significance},
                       {"zero_lag_coefficient", e.zero_lag_coefficient},
                       {"sign_type", std::string(to_string(e.sign_type))}});
    }
    out << json{{"entries", arr}}.dump(2) << '\n';
}

void write_table_text(std::ostream& out, std::span<const std::string> instruments,
                      std::span<const LeaderFollowerEntry> entries) {
    std::map<std::pair<std::string, std::string>, double> cells;
    for (const auto& e : entries) cells[{e.leader_id, e.follower_id}] = e.significance;

    std::size_t width = 8;
    for (const auto& id : instruments) width = std::max(width, id.size() + 2);
    const std::string corner = "leader\\follower";
    const std::size_t first = std::max(width, corner.size() + 2);

    out << std::left << std::setw(static_cast<int>(first)) << corner;
    for (const auto& f : instruments) out << std::right << std::setw(static_cast<int>(width)) << f;
    out << '\n';
    for (const auto& l : instruments) {
        out << std::left << std::setw(static_cast<int>(first)) << l;
        for (const auto& f : instruments) {
            const auto it = cells.find({l, f});
            const std::string cell = it == cells.end() ? "" : three_significant(it->second);
            out << std::right << std::setw(static_cast<int>(width)) << cell;
        }
        out << '\n';
    }
}

// ---- windowed history -------------------------------------------------------

void write_csv(std::ostream& out, const CoefficientHistory& history, const ConstancyFit* fit) {
    out << kHistoryHeader << '\n';
    for (const auto& v : history.values) {
        out << bound(v.window.start) << ',' << bound(v.window.end) << ',' << format_double(v.value) << ','
            << format_double(v.std_error) << ',' << v.rows << ',' << v.pair_count << '\n';
    }
    if (fit) {
        out << kFitFooterHeader << '\n';
        out << format_double(fit->p0) << ',' << format_double(fit->chi2) << ',' << fit->degrees_of_freedom << ','
            << format_double(fit->p_value) << '\n';
    }
}

void write_json(std::ostream& out, const CoefficientHistory& history, const ConstancyFit* fit) {
    json values = json::array();
    for (const auto& v : history.values) {
        values.push_back({{"window", window_json(v.window)},
                          {"value", v.value},
                          {"std_error", v.std_error},
                          {"rows", v.rows},
                          {"pair_count", v.pair_count}});
    }
    json warnings = json::array();
    for (const auto& w : history.warnings) warnings.push_back({{"window", window_json(w.window)}, {"reason", w.reason}});
    json doc = {{"x1", history.x1_id}, {"x2", history.x2_id}, {"lag", history.lag},
                {"values", values},    {"warnings", warnings}};
    if (fit) {
        doc["fit"] = {{"p0", fit->p0},
                      {"p0_error", fit->p0_error},
                      {"chi2", fit->chi2},
                      {"dof", fit->degrees_of_freedom},
                      {"p_value", fit->p_value}};
    } else {
        doc["fit"] = nullptr;
    }
    out << doc.dump(2) << '\n';
}

// ---- CBPI -------------------------------------------------------------------

void write_csv(std::ostream& out, std::span<const CbpiReport> reports) {
    out << kCbpiHeader << '\n';
    for (const auto& r : reports) {
        out << format_timestamp(r.bucket_start) << ',' << format_double(r.cbpi) << ',' << format_double(r.cbpi0) << ','
            << r.coefficient_count << ',' << (r.low_statistics ? "true" : "false") << '\n';
    }
}

void write_json(std::ostream& out, std::span<const CbpiReport> reports) {
    json arr = json::array();
    for (const auto& r : reports) {
        json comps = json::array();
        for (const auto& c : r.components) {
            comps.push_back({{"x1", c.x1_id},
                             {"x2", c.x2_id},
                             {"coefficient", c.coefficient},
                             {"abs_coefficient", c.abs_coefficient},
                             {"std_error", c.std_error}});
        }
        arr.push_back({{"bucket_start", format_timestamp(r.bucket_start)},
                       {"window", window_json(r.window)},
                       {"rows", r.rows},
                       {"cbpi", r.cbpi},
                       {"cbpi0", r.cbpi0},
                       {"mean_sigma", r.mean_sigma},
                       {"coefficient_count", r.coefficient_count},
                       {"low_statistics", r.low_statistics},
                       {"components", comps}});
    }
    out << json{{"buckets", arr}}.dump(2) << '\n';
}

// ---- tails ------------------------------------------------------------------

void write_csv(std::ostream& out, std::span<const TailResult> results) {
    out << "instrument,side,bin_lo,bin_hi,bin_center,count,density,density_error\n";
    for (const auto& r : results) {
        const auto& h = r.histogram;
        for (std::size_t k = 0; k < h.bins(); ++k) {
            out << r.instrument_id << ',' << to_string(h.side) << ',' << format_double(h.bin_edges[k]) << ','
                << format_double(h.bin_edges[k + 1]) << ',' << format_double(h.bin_center(k)) << ',' << h.counts[k]
                << ',' << format_double(h.densities[k]) << ',' << format_double(h.density_errors[k]) << '\n';
        }
    }
    out << "instrument,side,p0,p0_error,p1,p1_error,chi2,dof,fit_lo,fit_hi,max_moment\n";
    for (const auto& r : results) {
        if (!r.fit) continue;
        const auto& f = *r.fit;
        out << r.instrument_id << ',' << to_string(r.histogram.side) << ',' << format_double(f.p0) << ','
            << format_double(f.p0_error) << ',' << format_double(f.p1) << ',' << format_double(f.p1_error) << ','
            << format_double(f.chi2) << ',' << f.degrees_of_freedom << ',' << format_double(f.fit_range.lo) << ','
            << format_double(f.fit_range.hi) << ',' << max_convergent_moment(f).order << '\n';
    }
}

void write_json(std::ostream& out, std::span<const TailResult> results) {
    json arr = json::array();
    for (const auto& r : results) {
        const auto& h = r.histogram;
        json bins = json::array();
        for (std::size_t k = 0; k < h.bins(); ++k) {
            bins.push_back({{"lo", h.bin_edges[k]},
                            {"hi", h.bin_edges[k + 1]},
                            {"center", h.bin_center(k)},
                            {"count", h.counts[k]},
                            {"density", h.densities[k]},
                            {"density_error", h.density_errors[k]}});
        }
        json item = {{"instrument", r.instrument_id},
                     {"side", std::string(to_string(h.side))},
                     {"sample_count", h.sample_count},
                     {"bins", bins}};
        if (r.fit) {
            const auto& f = *r.fit;
            const auto m = max_convergent_moment(f);
            item["fit"] = {{"p0", f.p0},
                           {"p0_error", f.p0_error},
                           {"p1", f.p1},
                           {"p1_error", f.p1_error},
                           {"chi2", f.chi2},
                           {"dof", f.degrees_of_freedom},
                           {"fit_range", {f.fit_range.lo, f.fit_range.hi}},
                           {"max_convergent_moment", m.order},
                           {"moments_converge", m.convergent}};
        } else {
            item["fit"] = nullptr;
            item["fit_error"] = r.fit_error;
        }
        arr.push_back(std::move(item));
    }
    out << json{{"tails", arr}}.dump(2) << '\n';
}

// ---- volume -----------------------------------------------------------------

void write_csv(std::ostream& out, std::span<const VolumeBucket> buckets) {
    out << "instrument,period_start,mean_volume,bar_count\n";
    for (const auto& b : buckets) {
        out << b.instrument_id << ',' << format_timestamp(b.period_start) << ',' << format_double(b.mean_volume) << ','
            << b.bar_count << '\n';
    }
}

void write_json(std::ostream& out, std::span<const VolumeBucket> buckets) {
    json arr = json::array();
    for (const auto& b : buckets) {
        arr.push_back({{"instrument", b.instrument_id},
                       {"period_start", format_timestamp(b.period_start)},
                       {"mean_volume", b.mean_volume},
                       {"bar_count", b.bar_count}});
    }
    out << json{{"volume_profile", arr}}.dump(2) << '\n';
}

}  // namespace lagcorr::report
