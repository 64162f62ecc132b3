#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lagcorr/time.hpp"

namespace lagcorr {

/// One trade print.
struct Tick {
    Timestamp timestamp;
    std::string instrument_id;
    std::string contract_id;
    double price = 0.0;
    std::int64_t volume = 0;
};

/// One aggregated OHLCV observation. `interval_start` labels the bar; the
/// close is taken at `interval_start + interval_length`.
struct Bar {
    std::string instrument_id;
    std::string contract_id;
    Timestamp interval_start;
    Duration interval_length = std::chrono::hours{1};
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    std::int64_t volume = 0;
    std::int64_t tick_count = 0;

    [[nodiscard]] Timestamp close_time() const noexcept { return interval_start + interval_length; }
};

/// Throws ValidationError when a tick or bar breaks its invariants.
void validate(const Tick& tick);
void validate(const Bar& bar);

struct RolloverSwitch {
    std::string instrument_id;
    Timestamp switch_time;
};

struct ReturnObservation {
    std::string instrument_id;
    Timestamp timestamp;  ///< close time of the later bar
    double log_return = 0.0;
    Duration delta_t{0};
    bool rollover_affected = false;
};

/// All return observations of one instrument in time order.
struct ReturnSeries {
    std::string instrument_id;
    std::vector<ReturnObservation> observations;
};

/// T x N matrix of simultaneous log-returns. Immutable once built: every row
/// holds a valid return for every instrument and timestamps strictly increase.
class AlignedPanel {
public:
    AlignedPanel(std::vector<std::string> instrument_ids, std::vector<Timestamp> timestamps,
                 Eigen::MatrixXd returns, TimeRange source_window = TimeRange::unbounded());

    [[nodiscard]] std::size_t rows() const noexcept { return timestamps_.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return instrument_ids_.size(); }
    [[nodiscard]] const std::vector<std::string>& instrument_ids() const noexcept { return instrument_ids_; }
    [[nodiscard]] const std::vector<Timestamp>& timestamps() const noexcept { return timestamps_; }
    [[nodiscard]] const Eigen::MatrixXd& returns() const noexcept { return returns_; }
    [[nodiscard]] const TimeRange& source_window() const noexcept { return source_window_; }

    [[nodiscard]] std::span<const double> column(std::size_t i) const;
    /// Throws ValidationError for unknown ids.
    [[nodiscard]] std::size_t column_index(std::string_view instrument_id) const;

    /// Rows whose timestamp falls in `window`; throws EmptyPanelError if none do.
    [[nodiscard]] AlignedPanel slice(TimeRange window) const;
    /// Number of rows whose timestamp falls in `window`.
    [[nodiscard]] std::size_t count_rows(TimeRange window) const;
    /// Column subset in the given order.
    [[nodiscard]] AlignedPanel select(std::span<const std::size_t> columns) const;

    /// FNV-1a digest of ids, timestamps and return bits, as 16 hex digits.
    [[nodiscard]] const std::string& hash() const noexcept { return hash_; }

private:
    std::vector<std::string> instrument_ids_;
    std::vector<Timestamp> timestamps_;
    Eigen::MatrixXd returns_;
    TimeRange source_window_;
    std::string hash_;
};

struct AlignResult {
    AlignedPanel panel;
    /// Timestamps seen in at least one series (inside the window) but not kept.
    std::size_t dropped_timestamps = 0;
};

/// One bar per (instrument, contract, interval) holding at least one tick.
/// Ticks must be time-ordered within each (instrument, contract) stream;
/// output is ordered by instrument, interval_start, contract.
[[nodiscard]] std::vector<Bar> aggregate_ticks(std::span<const Tick> ticks, Duration interval);

/// Close-to-close log-returns for every adjacent bar pair of each instrument.
/// A return is flagged `rollover_affected` when its bars carry different
/// contract ids or a calendar switch falls strictly inside
/// (start of the earlier bar, end of the later bar).
[[nodiscard]] std::vector<ReturnObservation> compute_returns(std::span<const Bar> bars,
                                                             std::span<const RolloverSwitch> calendar);

/// Splits observations by instrument, keeping first-appearance order.
[[nodiscard]] std::vector<ReturnSeries> group_by_instrument(std::span<const ReturnObservation> observations);

/// Removes observations whose delta_t exceeds `max_delta_t`.
[[nodiscard]] std::vector<ReturnSeries> drop_long_gaps(std::span<const ReturnSeries> series, Duration max_delta_t);

/// Keeps exactly the timestamps in `window` where every series has a
/// non-rollover return. Throws EmptyPanelError when nothing survives.
[[nodiscard]] AlignResult align_panel(std::span<const ReturnSeries> series,
                                      TimeRange window = TimeRange::unbounded());

struct VolumeBucket {
    std::string instrument_id;
    Timestamp period_start;
    double mean_volume = 0.0;
    std::size_t bar_count = 0;
};

/// Mean per-bar volume for each (instrument, calendar bucket), ordered by
/// instrument then bucket.
[[nodiscard]] std::vector<VolumeBucket> volume_profile(std::span<const Bar> bars,
                                                       CalendarPeriod bucket = CalendarPeriod::year);

}  // namespace lagcorr
