#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lagcorr {

/// All timestamps are UTC with millisecond precision.
using Duration = std::chrono::milliseconds;
using Timestamp = std::chrono::sys_time<Duration>;

/// Parses ISO-8601 `YYYY-MM-DDTHH:MM:SS[.fff][Z|+HH:MM|-HH:MM]` and converts to UTC.
/// A missing zone designator falls back to `default_offset` and is rejected
/// when none is given. Throws ParseError.
[[nodiscard]] Timestamp parse_timestamp(std::string_view text,
                                        std::optional<std::chrono::minutes> default_offset = std::nullopt);

/// Parses a UTC offset such as `Z`, `+03:00`, `-0500`.
[[nodiscard]] std::chrono::minutes parse_utc_offset(std::string_view text);

/// `YYYY-MM-DDTHH:MM:SSZ`, with `.fff` only when the milliseconds are non-zero.
[[nodiscard]] std::string format_timestamp(Timestamp t);

/// Half-open interval [start, end).
struct TimeRange {
    Timestamp start = Timestamp::min();
    Timestamp end = Timestamp::max();

    [[nodiscard]] bool contains(Timestamp t) const noexcept { return start <= t && t < end; }
    [[nodiscard]] static TimeRange unbounded() noexcept { return {}; }
    bool operator==(const TimeRange&) const = default;
};

enum class CalendarPeriod { month, year, all };

[[nodiscard]] CalendarPeriod parse_period(std::string_view name);
[[nodiscard]] std::string_view to_string(CalendarPeriod p) noexcept;

/// Start of the calendar bucket containing `t`. For `all` returns Timestamp::min().
[[nodiscard]] Timestamp period_floor(Timestamp t, CalendarPeriod p);

/// Adds whole calendar months, clamping the day to the target month's length.
[[nodiscard]] Timestamp add_months(Timestamp t, int months);

/// Disjoint calendar buckets (month/year) covering [first, last]; a single
/// unbounded range for `all`.
[[nodiscard]] std::vector<TimeRange> calendar_windows(Timestamp first, Timestamp last, CalendarPeriod p);

/// Consecutive one-year windows anchored at `first` (anniversaries), covering `last`.
[[nodiscard]] std::vector<TimeRange> anniversary_windows(Timestamp first, Timestamp last);

}  // namespace lagcorr
