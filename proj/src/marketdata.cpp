#include "lagcorr/marketdata.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <cstdio>
#include <map>
#include <set>
#include <unordered_map>

#include "lagcorr/errors.hpp"

namespace lagcorr {

namespace {

std::string describe(const Tick& t) {
    return t.instrument_id + "/" + t.contract_id + " @ " + format_timestamp(t.timestamp);
}

Timestamp floor_to(Timestamp t, Duration interval) {
    const auto n = t.time_since_epoch().count();
    const auto w = interval.count();
    auto q = n / w;
    if (n % w != 0 && n < 0) --q;
    return Timestamp{Duration{q * w}};
}

class Fnv1a {
public:
    void add(const void* data, std::size_t size) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t k = 0; k < size; ++k) {
            state_ ^= p[k];
            state_ *= 0x100000001b3ULL;
        }
    }
    template <class T>
    void add_value(const T& v) {
        add(&v, sizeof v);
    }
    [[nodiscard]] std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
        return buf;
    }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace

void validate(const Tick& tick) {
    if (!(tick.price > 0.0) || !std::isfinite(tick.price))
        throw ValidationError("non-positive price for tick " + describe(tick));
    if (tick.volume < 0) throw ValidationError("negative volume for tick " + describe(tick));
    if (tick.instrument_id.empty()) throw ValidationError("empty instrument id");
}

void validate(const Bar& bar) {
    const auto where = bar.instrument_id + "/" + bar.contract_id + " @ " + format_timestamp(bar.interval_start);
    for (double p : {bar.open, bar.high, bar.low, bar.close}) {
        if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("non-positive price in bar " + where);
    }
    if (!(bar.low <= std::min(bar.open, bar.close) && std::max(bar.open, bar.close) <= bar.high))
        throw ValidationError("inconsistent OHLC in bar " + where);
    if (bar.tick_count < 1) throw ValidationError("bar without ticks " + where);
    if (bar.volume < 0) throw ValidationError("negative volume in bar " + where);
    if (bar.interval_length <= Duration::zero()) throw ValidationError("non-positive interval in bar " + where);
    if (bar.instrument_id.empty()) throw ValidationError("empty instrument id in bar @ " + format_timestamp(bar.interval_start));
}

// ---- AlignedPanel -----------------------------------------------------------

AlignedPanel::AlignedPanel(std::vector<std::string> instrument_ids, std::vector<Timestamp> timestamps,
                           Eigen::MatrixXd returns, TimeRange source_window)
    : instrument_ids_(std::move(instrument_ids)),
      timestamps_(std::move(timestamps)),
      returns_(std::move(returns)),
      source_window_(source_window) {
    if (instrument_ids_.empty()) throw ValidationError("panel needs at least one instrument");
    if (timestamps_.empty()) throw EmptyPanelError("panel has no rows");
    if (static_cast<std::size_t>(returns_.rows()) != timestamps_.size() ||
        static_cast<std::size_t>(returns_.cols()) != instrument_ids_.size())
        throw ValidationError("panel matrix shape does not match ids/timestamps");
    for (std::size_t k = 1; k < timestamps_.size(); ++k) {
        if (!(timestamps_[k - 1] < timestamps_[k]))
            throw OrderingError("panel timestamps not strictly increasing at " + format_timestamp(timestamps_[k]));
    }
    {
        std::set<std::string_view> seen;
        for (const auto& id : instrument_ids_) {
            if (!seen.insert(id).second) throw ValidationError("duplicate instrument '" + id + "' in panel");
        }
    }
    if (!returns_.allFinite()) throw ValidationError("panel contains non-finite returns");

    Fnv1a h;
    for (const auto& id : instrument_ids_) {
        h.add(id.data(), id.size());
        h.add_value('\0');
    }
    for (auto t : timestamps_) h.add_value(t.time_since_epoch().count());
    h.add(returns_.data(), sizeof(double) * static_cast<std::size_t>(returns_.size()));
    hash_ = h.hex();
}

std::span<const double> AlignedPanel::column(std::size_t i) const {
    if (i >= cols()) throw ValidationError("column index " + std::to_string(i) + " out of range");
    return {returns_.col(static_cast<Eigen::Index>(i)).data(), rows()};
}

std::size_t AlignedPanel::column_index(std::string_view instrument_id) const {
    const auto it = std::find(instrument_ids_.begin(), instrument_ids_.end(), instrument_id);
    if (it == instrument_ids_.end())
        throw ValidationError("instrument '" + std::string(instrument_id) + "' not in panel");
    return static_cast<std::size_t>(it - instrument_ids_.begin());
}

std::size_t AlignedPanel::count_rows(TimeRange window) const {
    const auto lo = std::lower_bound(timestamps_.begin(), timestamps_.end(), window.start);
    const auto hi = std::lower_bound(timestamps_.begin(), timestamps_.end(), window.end);
    return static_cast<std::size_t>(hi - lo);
}

AlignedPanel AlignedPanel::slice(TimeRange window) const {
    const auto lo = std::lower_bound(timestamps_.begin(), timestamps_.end(), window.start);
    const auto hi = std::lower_bound(timestamps_.begin(), timestamps_.end(), window.end);
    if (lo == hi) throw EmptyPanelError("no panel rows in window");
    const auto first = static_cast<Eigen::Index>(lo - timestamps_.begin());
    const auto count = static_cast<Eigen::Index>(hi - lo);
    return AlignedPanel(instrument_ids_, std::vector<Timestamp>(lo, hi), returns_.middleRows(first, count), window);
}

AlignedPanel AlignedPanel::select(std::span<const std::size_t> columns) const {
    std::vector<std::string> ids;
    Eigen::MatrixXd m(returns_.rows(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (columns[k] >= cols()) throw ValidationError("column index out of range");
        ids.push_back(instrument_ids_[columns[k]]);
        m.col(static_cast<Eigen::Index>(k)) = returns_.col(static_cast<Eigen::Index>(columns[k]));
    }
    return AlignedPanel(std::move(ids), timestamps_, std::move(m), source_window_);
}

// ---- aggregation ------------------------------------------------------------

std::vector<Bar> aggregate_ticks(std::span<const Tick> ticks, Duration interval) {
    if (interval <= Duration::zero()) throw ValidationError("bar interval must be positive");

    struct Stream {
        std::vector<Bar> bars;
        const Tick* last = nullptr;
    };
    std::vector<Stream> streams;
    std::unordered_map<std::string, std::size_t> index;
    std::string key;
    const Tick* prev = nullptr;
    std::size_t current = 0;

    for (const Tick& tick : ticks) {
        validate(tick);
        if (!prev || prev->instrument_id != tick.instrument_id || prev->contract_id != tick.contract_id) {
            key.assign(tick.instrument_id).push_back('\x1f');
            key.append(tick.contract_id);
            auto [it, inserted] = index.try_emplace(key, streams.size());
            if (inserted) streams.emplace_back();
            current = it->second;
        }
        prev = &tick;
        Stream& s = streams[current];
        if (s.last && tick.timestamp < s.last->timestamp) {
            throw OrderingError("ticks out of order in " + tick.instrument_id + "/" + tick.contract_id + ": " +
                                format_timestamp(s.last->timestamp) + " followed by " +
                                format_timestamp(tick.timestamp));
        }
        s.last = &tick;

        const Timestamp start = floor_to(tick.timestamp, interval);
        if (s.bars.empty() || s.bars.back().interval_start != start) {
            Bar b;
            b.instrument_id = tick.instrument_id;
            b.contract_id = tick.contract_id;
            b.interval_start = start;
            b.interval_length = interval;
            b.open = b.high = b.low = b.close = tick.price;
            s.bars.push_back(std::move(b));
        }
        Bar& b = s.bars.back();
        b.high = std::max(b.high, tick.price);
        b.low = std::min(b.low, tick.price);
        b.close = tick.price;
        b.volume += tick.volume;
        ++b.tick_count;
    }

    std::vector<Bar> out;
    std::size_t total = 0;
    for (const auto& s : streams) total += s.bars.size();
    out.reserve(total);
    for (auto& s : streams) std::move(s.bars.begin(), s.bars.end(), std::back_inserter(out));
    std::stable_sort(out.begin(), out.end(), [](const Bar& a, const Bar& b) {
        if (a.instrument_id != b.instrument_id) return a.instrument_id < b.instrument_id;
        if (a.interval_start != b.interval_start) return a.interval_start < b.interval_start;
        return a.contract_id < b.contract_id;
    });
    return out;
}

// ---- returns ----------------------------------------------------------------

std::vector<ReturnObservation> compute_returns(std::span<const Bar> bars, std::span<const RolloverSwitch> calendar) {
    std::map<std::string, std::vector<Timestamp>, std::less<>> switches;
    for (const auto& s : calendar) switches[s.instrument_id].push_back(s.switch_time);
    for (auto& [id, v] : switches) std::sort(v.begin(), v.end());

    // Group by instrument, first-appearance order.
    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<const Bar*>> groups;
    for (const Bar& b : bars) {
        auto [it, inserted] = groups.try_emplace(b.instrument_id);
        if (inserted) order.push_back(b.instrument_id);
        it->second.push_back(&b);
    }

    std::vector<ReturnObservation> out;
    out.reserve(bars.size());
    for (const auto& id : order) {
        const auto& g = groups[id];
        const auto sw = switches.find(id);
        for (const Bar* b : g) {
            if (!(b->close > 0.0) || !std::isfinite(b->close))
                throw ValidationError("non-positive close in bar " + id + " @ " + format_timestamp(b->interval_start));
        }
        for (std::size_t k = 1; k < g.size(); ++k) {
            const Bar& a = *g[k - 1];
            const Bar& b = *g[k];
            if (!(a.interval_start < b.interval_start)) {
                throw OrderingError("bars out of order for " + id + ": " + format_timestamp(a.interval_start) +
                                    " followed by " + format_timestamp(b.interval_start));
            }
            ReturnObservation r;
            r.instrument_id = id;
            r.timestamp = b.close_time();
            r.delta_t = b.close_time() - a.close_time();
            r.log_return = std::log(b.close / a.close);
            bool rolled = a.contract_id != b.contract_id;
            if (!rolled && sw != switches.end()) {
                const auto it = std::upper_bound(sw->second.begin(), sw->second.end(), a.interval_start);
                rolled = it != sw->second.end() && *it < b.close_time();
            }
            r.rollover_affected = rolled;
            if (!std::isfinite(r.log_return)) throw ValidationError("non-finite return for " + id);
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<ReturnSeries> group_by_instrument(std::span<const ReturnObservation> observations) {
    std::vector<ReturnSeries> out;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& o : observations) {
        auto [it, inserted] = index.try_emplace(o.instrument_id, out.size());
        if (inserted) out.push_back({o.instrument_id, {}});
        out[it->second].observations.push_back(o);
    }
    return out;
}

std::vector<ReturnSeries> drop_long_gaps(std::span<const ReturnSeries> series, Duration max_delta_t) {
    std::vector<ReturnSeries> out;
    out.reserve(series.size());
    for (const auto& s : series) {
        ReturnSeries kept{s.instrument_id, {}};
        for (const auto& o : s.observations) {
            if (o.delta_t <= max_delta_t) kept.observations.push_back(o);
        }
        out.push_back(std::move(kept));
    }
    return out;
}

// ---- alignment --------------------------------------------------------------

AlignResult align_panel(std::span<const ReturnSeries> series, TimeRange window) {
    if (series.empty()) throw ValidationError("align_panel needs at least one series");

    const std::size_t n = series.size();
    std::vector<std::vector<const ReturnObservation*>> valid(n);
    std::vector<Timestamp> seen;
    for (std::size_t c = 0; c < n; ++c) {
        const auto& obs = series[c].observations;
        for (std::size_t k = 0; k < obs.size(); ++k) {
            if (k > 0 && !(obs[k - 1].timestamp < obs[k].timestamp)) {
                throw OrderingError("returns of " + series[c].instrument_id + " not strictly increasing at " +
                                    format_timestamp(obs[k].timestamp));
            }
            if (!window.contains(obs[k].timestamp)) continue;
            seen.push_back(obs[k].timestamp);
            if (!obs[k].rollover_affected) valid[c].push_back(&obs[k]);
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (valid[c].empty())
            throw EmptyPanelError("no valid returns for '" + series[c].instrument_id + "' in window; panel is empty");
    }

    // k-way intersection over sorted valid timestamps.
    std::vector<std::size_t> pos(n, 0);
    std::vector<Timestamp> rows;
    std::vector<std::vector<double>> values(n);
    for (;;) {
        Timestamp target = valid[0][pos[0]]->timestamp;
        for (std::size_t c = 1; c < n; ++c) target = std::max(target, valid[c][pos[c]]->timestamp);
        bool exhausted = false;
        bool all_equal = true;
        for (std::size_t c = 0; c < n && !exhausted; ++c) {
            while (pos[c] < valid[c].size() && valid[c][pos[c]]->timestamp < target) ++pos[c];
            if (pos[c] == valid[c].size()) exhausted = true;
            else if (valid[c][pos[c]]->timestamp != target) all_equal = false;
        }
        if (exhausted) break;
        if (all_equal) {
            rows.push_back(target);
            for (std::size_t c = 0; c < n; ++c) {
                values[c].push_back(valid[c][pos[c]]->log_return);
                ++pos[c];
            }
            bool done = false;
            for (std::size_t c = 0; c < n; ++c) done = done || pos[c] == valid[c].size();
            if (done) break;
        }
    }
    if (rows.empty()) throw EmptyPanelError("no timestamp has valid returns for all instruments; panel is empty");

    std::sort(seen.begin(), seen.end());
    const auto distinct = static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());

    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
    std::vector<std::string> ids;
    for (std::size_t c = 0; c < n; ++c) {
        ids.push_back(series[c].instrument_id);
        m.col(static_cast<Eigen::Index>(c)) =
            Eigen::Map<const Eigen::VectorXd>(values[c].data(), static_cast<Eigen::Index>(values[c].size()));
    }
    const std::size_t kept = rows.size();
    return {AlignedPanel(std::move(ids), std::move(rows), std::move(m), window), distinct - kept};
}

// ---- volume -----------------------------------------------------------------

std::vector<VolumeBucket> volume_profile(std::span<const Bar> bars, CalendarPeriod bucket) {
    struct Acc {
        long double sum = 0;
        std::size_t count = 0;
    };
    std::map<std::pair<std::string, Timestamp>, Acc> acc;
    std::map<std::string, Timestamp> first_start;
    for (const Bar& b : bars) {
        auto [it, inserted] = first_start.try_emplace(b.instrument_id, b.interval_start);
        if (!inserted) it->second = std::min(it->second, b.interval_start);
    }
    for (const Bar& b : bars) {
        const Timestamp key = bucket == CalendarPeriod::all ? first_start[b.instrument_id]
                                                             : period_floor(b.interval_start, bucket);
        auto& a = acc[{b.instrument_id, key}];
        a.sum += static_cast<long double>(b.volume);
        ++a.count;
    }
    std::vector<VolumeBucket> out;
    out.reserve(acc.size());
    for (const auto& [key, a] : acc) {
        out.push_back({key.first, key.second, static_cast<double>(a.sum / static_cast<long double>(a.count)), a.count});
    }
    return out;
}

}  // namespace lagcorr
