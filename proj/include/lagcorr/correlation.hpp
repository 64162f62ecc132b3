#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lagcorr/marketdata.hpp"

namespace lagcorr {

/// Correlation of column i shifted by `lag` rows against column j:
/// lag = t(i) - t(j), so positive lags pair x_i with earlier x_j.
struct LagCorrelation {
    int lag = 0;
    double raw_value = 0.0;         ///< uncentered mean of x_i(t+lag) * x_j(t)
    double normalized_value = 0.0;  ///< raw_value / sqrt(E[x_i^2] E[x_j^2])
    double std_error = 0.0;         ///< 1/sqrt(pair_count), the iid null error
    std::size_t pair_count = 0;
};

struct CorrelationFunction {
    std::string leader_id;    ///< x_1, the shifted column
    std::string follower_id;  ///< x_2
    std::vector<LagCorrelation> lags;  ///< ordered -L..+L
    TimeRange window;
    std::string panel_hash;

    /// Throws ValidationError if the lag was not evaluated.
    [[nodiscard]] const LagCorrelation& at(int lag) const;
};

struct RawCorrelation {
    double value = 0.0;
    std::size_t pair_count = 0;
};

/// Sum over s of a[s + lag] * b[s] for lag >= 0. Summation order depends only
/// on s, so swapping the roles of a and b with a negated lag is bit-identical.
[[nodiscard]] double lagged_product_sum(std::span<const double> a, std::span<const double> b, std::size_t lag);

/// Uncentered second moment E[x^2].
[[nodiscard]] double second_moment(std::span<const double> x);

/// Evaluates lagged correlations on one panel, caching the per-column second
/// moments used as variances.
class CorrelationEstimator {
public:
    explicit CorrelationEstimator(const AlignedPanel& panel);

    [[nodiscard]] RawCorrelation raw(std::size_t i, std::size_t j, int lag) const;
    /// Throws DegenerateSeriesError when either column has zero second moment.
    [[nodiscard]] LagCorrelation normalized(std::size_t i, std::size_t j, int lag) const;
    [[nodiscard]] double variance(std::size_t i) const { return moments_.at(i); }
    [[nodiscard]] const AlignedPanel& panel() const noexcept { return panel_; }

private:
    const AlignedPanel& panel_;
    std::vector<double> moments_;
};

[[nodiscard]] RawCorrelation raw_correlation(const AlignedPanel& panel, std::size_t i, std::size_t j, int lag);
[[nodiscard]] LagCorrelation normalized_correlation(const AlignedPanel& panel, std::size_t i, std::size_t j, int lag);
/// Lags -max_lag..+max_lag; needs max_lag >= 1 and more than 2*max_lag rows.
[[nodiscard]] CorrelationFunction correlation_function(const AlignedPanel& panel, std::size_t i, std::size_t j,
                                                       int max_lag);

}  // namespace lagcorr
