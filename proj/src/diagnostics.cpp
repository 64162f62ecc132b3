#include "lagcorr/diagnostics.hpp"

#include <cmath>
#include <numbers>

#include "lagcorr/correlation.hpp"
#include "lagcorr/errors.hpp"
#include "lagcorr/special.hpp"

namespace lagcorr {

std::string_view to_string(SignType t) noexcept { return t == SignType::tail ? "tail" : "oscillating"; }

std::vector<LeaderFollowerEntry> leader_follower_table(const AlignedPanel& panel, int lag, double threshold) {
    if (panel.cols() < 2) throw ValidationError("leader-follower table needs at least two instruments");
    if (lag < 1) throw ValidationError("leader-follower lag must be at least 1");
    const CorrelationEstimator est(panel);
    const auto& ids = panel.instrument_ids();
    std::vector<LeaderFollowerEntry> out;
    for (std::size_t leader = 0; leader < panel.cols(); ++leader) {
        for (std::size_t follower = 0; follower < panel.cols(); ++follower) {
            if (leader == follower) continue;
            // Follower datum `lag` bars after the leader's: t(follower) - t(leader) = lag.
            const LagCorrelation c = est.normalized(follower, leader, lag);
            const double sig = c.normalized_value / c.std_error;
            if (threshold > 0.0 && !(std::abs(sig) > threshold)) continue;
            LeaderFollowerEntry e;
            e.leader_id = ids[leader];
            e.follower_id = ids[follower];
            e.lag = lag;
            e.coefficient = c.normalized_value;
            e.std_error = c.std_error;
            e.significance = sig;
            e.zero_lag_coefficient = est.normalized(follower, leader, 0).normalized_value;
            e.sign_type = e.coefficient * e.zero_lag_coefficient > 0.0 ? SignType::tail : SignType::oscillating;
            out.push_back(std::move(e));
        }
    }
    return out;
}

CoefficientHistory windowed_coefficient_history(const AlignedPanel& panel, std::size_t i, std::size_t j, int lag,
                                                std::span<const TimeRange> windows) {
    CoefficientHistory h;
    h.x1_id = panel.instrument_ids().at(i);
    h.x2_id = panel.instrument_ids().at(j);
    h.lag = lag;
    const auto shift = static_cast<std::size_t>(std::abs(lag));
    for (const auto& w : windows) {
        const std::size_t rows = panel.count_rows(w);
        if (rows < 2 || rows <= shift) {
            h.warnings.push_back({w, "window holds " + std::to_string(rows) + " panel rows; omitted"});
            continue;
        }
        const AlignedPanel sub = panel.slice(w);
        const LagCorrelation c = normalized_correlation(sub, i, j, lag);
        h.values.push_back({w, c.normalized_value, c.std_error, rows, c.pair_count});
    }
    return h;
}

std::vector<TimeRange> yearly_windows(const AlignedPanel& panel) {
    return anniversary_windows(panel.timestamps().front(), panel.timestamps().back());
}

std::vector<TimeRange> monthly_windows(const AlignedPanel& panel) {
    return calendar_windows(panel.timestamps().front(), panel.timestamps().back(), CalendarPeriod::month);
}

ConstancyFit fit_constant(std::span<const double> values, std::span<const double> errors) {
    if (values.size() != errors.size()) throw ValidationError("values and errors differ in length");
    if (values.size() < 2) throw InsufficientDataError("constant fit needs at least two values");
    ConstancyFit f;
    f.values.assign(values.begin(), values.end());
    f.errors.assign(errors.begin(), errors.end());
    double sw = 0.0, swv = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!(errors[k] > 0.0) || !std::isfinite(errors[k]))
            throw ValidationError("constant fit error #" + std::to_string(k) + " is not positive");
        const double w = 1.0 / (errors[k] * errors[k]);
        sw += w;
        swv += w * values[k];
    }
    f.p0 = swv / sw;
    f.p0_error = 1.0 / std::sqrt(sw);
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double z = (values[k] - f.p0) / errors[k];
        f.chi2 += z * z;
    }
    f.degrees_of_freedom = static_cast<int>(values.size()) - 1;
    f.p_value = chi2_upper_tail(f.chi2, f.degrees_of_freedom);
    return f;
}

ConstancyFit fit_constant(const CoefficientHistory& history) {
    std::vector<double> v, e;
    for (const auto& w : history.values) {
        v.push_back(w.value);
        e.push_back(w.std_error);
    }
    return fit_constant(v, e);
}

CbpiReport cbpi(const AlignedPanel& panel, int lag) {
    if (lag < 1) throw ValidationError("CBPI lag must be at least 1");
    const CorrelationEstimator est(panel);
    const auto& ids = panel.instrument_ids();
    CbpiReport r;
    r.window = panel.source_window();
    r.bucket_start = panel.timestamps().front();
    r.rows = panel.rows();
    double sum_abs = 0.0;
    double sum_sigma = 0.0;
    for (std::size_t i = 0; i < panel.cols(); ++i) {
        for (std::size_t j = 0; j < panel.cols(); ++j) {
            const LagCorrelation c = est.normalized(i, j, lag);
            CbpiComponent comp{ids[i], ids[j], c.normalized_value, std::abs(c.normalized_value), c.std_error};
            sum_abs += comp.abs_coefficient;
            sum_sigma += comp.std_error;
            r.components.push_back(std::move(comp));
        }
    }
    r.coefficient_count = r.components.size();
    const auto n = static_cast<double>(r.coefficient_count);
    r.cbpi = sum_abs / n;
    r.mean_sigma = sum_sigma / n;
    r.cbpi0 = r.mean_sigma * std::sqrt(2.0 / std::numbers::pi);
    return r;
}

std::vector<CbpiReport> cbpi_history(const AlignedPanel& panel, CalendarPeriod bucket, std::size_t min_rows, int lag) {
    const auto windows = calendar_windows(panel.timestamps().front(), panel.timestamps().back(), bucket);
    std::vector<CbpiReport> out;
    for (const auto& w : windows) {
        const std::size_t rows = panel.count_rows(w);
        if (rows <= static_cast<std::size_t>(lag)) continue;
        CbpiReport r = cbpi(bucket == CalendarPeriod::all ? panel : panel.slice(w), lag);
        r.window = w;
        if (bucket != CalendarPeriod::all) r.bucket_start = w.start;
        r.low_statistics = rows < min_rows;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace lagcorr
