#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lagcorr/marketdata.hpp"

namespace lagcorr {

/// Whether a lagged coefficient shares the sign of the zero-lag one (tail,
/// broadening the correlation peak) or opposes it (oscillating).
enum class SignType { tail, oscillating };

[[nodiscard]] std::string_view to_string(SignType t) noexcept;

struct LeaderFollowerEntry {
    std::string leader_id;
    std::string follower_id;
    int lag = 1;
    double coefficient = 0.0;   ///< C(lag | follower, leader)
    double std_error = 0.0;
    double significance = 0.0;  ///< coefficient / std_error
    double zero_lag_coefficient = 0.0;
    SignType sign_type = SignType::tail;
};

inline constexpr double kDefaultSignificanceThreshold = 3.0;

/// Every ordered pair (leader, follower) of distinct columns whose
/// lag-`lag` coefficient, with the follower's return `lag` bars after the
/// leader's, exceeds `threshold` standard errors in absolute value. A
/// non-positive threshold keeps all N(N-1) pairs. Ordered by leader column,
/// then follower column.
[[nodiscard]] std::vector<LeaderFollowerEntry> leader_follower_table(
    const AlignedPanel& panel, int lag = 1, double threshold = kDefaultSignificanceThreshold);

struct WindowValue {
    TimeRange window;
    double value = 0.0;
    double std_error = 0.0;
    std::size_t rows = 0;
    std::size_t pair_count = 0;
};

struct WindowWarning {
    TimeRange window;
    std::string reason;
};

struct CoefficientHistory {
    std::string x1_id;
    std::string x2_id;
    int lag = 1;
    std::vector<WindowValue> values;
    std::vector<WindowWarning> warnings;  ///< windows omitted for lack of rows
};

/// C(lag | x_i, x_j) evaluated separately on the rows of each window.
[[nodiscard]] CoefficientHistory windowed_coefficient_history(const AlignedPanel& panel, std::size_t i, std::size_t j,
                                                              int lag, std::span<const TimeRange> windows);

/// One-year windows anchored at the first panel row.
[[nodiscard]] std::vector<TimeRange> yearly_windows(const AlignedPanel& panel);
/// Disjoint calendar months covering the panel.
[[nodiscard]] std::vector<TimeRange> monthly_windows(const AlignedPanel& panel);

struct ConstancyFit {
    std::vector<double> values;
    std::vector<double> errors;
    double p0 = 0.0;
    double p0_error = 0.0;
    double chi2 = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 1.0;
};

/// Inverse-variance weighted constant with its chi-square goodness of fit.
/// Needs at least two values and strictly positive errors.
[[nodiscard]] ConstancyFit fit_constant(std::span<const double> values, std::span<const double> errors);
[[nodiscard]] ConstancyFit fit_constant(const CoefficientHistory& history);

struct CbpiComponent {
    std::string x1_id;
    std::string x2_id;
    double coefficient = 0.0;
    double abs_coefficient = 0.0;
    double std_error = 0.0;
};

struct CbpiReport {
    TimeRange window;
    Timestamp bucket_start;
    std::size_t rows = 0;
    double cbpi = 0.0;
    double cbpi0 = 0.0;
    double mean_sigma = 0.0;
    std::size_t coefficient_count = 0;
    std::vector<CbpiComponent> components;  ///< N^2 entries, row-major (x1, x2)
    bool low_statistics = false;
};

inline constexpr std::size_t kDefaultMinBucketRows = 50;

/// Mean of |C(lag | x_i, x_j)| over all N^2 ordered combinations, including
/// autocorrelations, with the half-normal null benchmark
/// cbpi0 = mean(std_error) * sqrt(2/pi).
[[nodiscard]] CbpiReport cbpi(const AlignedPanel& panel, int lag = 1);

/// One report per calendar bucket holding more than `lag` rows; buckets with
/// fewer than `min_rows` rows are flagged low_statistics.
[[nodiscard]] std::vector<CbpiReport> cbpi_history(const AlignedPanel& panel,
                                                   CalendarPeriod bucket = CalendarPeriod::month,
                                                   std::size_t min_rows = kDefaultMinBucketRows, int lag = 1);

}  // namespace lagcorr
