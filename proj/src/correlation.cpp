#include "lagcorr/correlation.hpp"

#include <cmath>
#include <cstdlib>

#include "lagcorr/errors.hpp"

namespace lagcorr {

const LagCorrelation& CorrelationFunction::at(int lag) const {
    for (const auto& l : lags) {
        if (l.lag == lag) return l;
    }
    throw ValidationError("lag " + std::to_string(lag) + " not present in correlation function");
}

double lagged_product_sum(std::span<const double> a, std::span<const double> b, std::size_t lag) {
    const std::size_t n = std::min(a.size() > lag ? a.size() - lag : 0, b.size());
    const double* pa = a.data() + lag;
    const double* pb = b.data();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        s0 += pa[k] * pb[k];
        s1 += pa[k + 1] * pb[k + 1];
        s2 += pa[k + 2] * pb[k + 2];
        s3 += pa[k + 3] * pb[k + 3];
    }
    for (; k < n; ++k) s0 += pa[k] * pb[k];
    return (s0 + s1) + (s2 + s3);
}

double second_moment(std::span<const double> x) {
    if (x.empty()) return 0.0;
    return lagged_product_sum(x, x, 0) / static_cast<double>(x.size());
}

CorrelationEstimator::CorrelationEstimator(const AlignedPanel& panel) : panel_(panel) {
    moments_.reserve(panel.cols());
    for (std::size_t c = 0; c < panel.cols(); ++c) moments_.push_back(second_moment(panel.column(c)));
}

RawCorrelation CorrelationEstimator::raw(std::size_t i, std::size_t j, int lag) const {
    const std::size_t rows = panel_.rows();
    const auto shift = static_cast<std::size_t>(std::abs(lag));
    if (shift >= rows) {
        throw InsufficientDataError("lag " + std::to_string(lag) + " needs more than " + std::to_string(shift) +
                                    " rows, panel has " + std::to_string(rows));
    }
    const auto xi = panel_.column(i);
    const auto xj = panel_.column(j);
    const double sum = lag >= 0 ? lagged_product_sum(xi, xj, shift) : lagged_product_sum(xj, xi, shift);
    const std::size_t pairs = rows - shift;
    return {sum / static_cast<double>(pairs), pairs};
}

LagCorrelation CorrelationEstimator::normalized(std::size_t i, std::size_t j, int lag) const {
    for (std::size_t c : {i, j}) {
        if (!(moments_.at(c) > 0.0)) {
            throw DegenerateSeriesError("instrument '" + panel_.instrument_ids()[c] +
                                        "' has zero variance (constant price) in the panel window");
        }
    }
    const RawCorrelation r = raw(i, j, lag);
    LagCorrelation out;
    out.lag = lag;
    out.raw_value = r.value;
    out.normalized_value = r.value / std::sqrt(moments_[i] * moments_[j]);
    out.pair_count = r.pair_count;
    out.std_error = 1.0 / std::sqrt(static_cast<double>(r.pair_count));
    return out;
}

RawCorrelation raw_correlation(const AlignedPanel& panel, std::size_t i, std::size_t j, int lag) {
    return CorrelationEstimator(panel).raw(i, j, lag);
}

LagCorrelation normalized_correlation(const AlignedPanel& panel, std::size_t i, std::size_t j, int lag) {
    return CorrelationEstimator(panel).normalized(i, j, lag);
}

CorrelationFunction correlation_function(const AlignedPanel& panel, std::size_t i, std::size_t j, int max_lag) {
    if (max_lag < 1) throw ValidationError("max lag must be at least 1");
    if (panel.rows() <= 2 * static_cast<std::size_t>(max_lag)) {
        throw InsufficientDataError("max lag " + std::to_string(max_lag) + " needs more than " +
                                    std::to_string(2 * max_lag) + " rows, panel has " + std::to_string(panel.rows()));
    }
    const CorrelationEstimator est(panel);
    CorrelationFunction f;
    f.leader_id = panel.instrument_ids().at(i);
    f.follower_id = panel.instrument_ids().at(j);
    f.window = panel.source_window();
    f.panel_hash = panel.hash();
    f.lags.reserve(static_cast<std::size_t>(2 * max_lag + 1));
    for (int lag = -max_lag; lag <= max_lag; ++lag) f.lags.push_back(est.normalized(i, j, lag));
    return f;
}

}  // namespace lagcorr
