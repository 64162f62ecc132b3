#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lagcorr/marketdata.hpp"

namespace lagcorr::io {

inline constexpr std::string_view kTickHeader = "timestamp,instrument,contract,price,volume";
inline constexpr std::string_view kBarHeader =
    "interval_start,interval_seconds,instrument,contract,open,high,low,close,volume,tick_count";
inline constexpr std::string_view kCalendarHeader = "instrument,switch_timestamp";

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_double(double v);

// Readers accept LF or CRLF line endings, ignore blank lines, and accept
// leading `#` comment lines before the header. A `# zone=+03:00` comment sets
// the offset applied to timestamps written without one. Errors are
// ParseError carrying the 1-based line number.

[[nodiscard]] std::vector<Tick> parse_ticks(std::string_view text);
[[nodiscard]] std::vector<Bar> parse_bars(std::string_view text);
[[nodiscard]] std::vector<RolloverSwitch> parse_calendar(std::string_view text);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);
[[nodiscard]] std::vector<Tick> read_ticks(const std::filesystem::path& path);
[[nodiscard]] std::vector<Bar> read_bars(const std::filesystem::path& path);
[[nodiscard]] std::vector<RolloverSwitch> read_calendar(const std::filesystem::path& path);

void write_ticks(std::ostream& out, std::span<const Tick> ticks);
void write_bars(std::ostream& out, std::span<const Bar> bars);
void write_calendar(std::ostream& out, std::span<const RolloverSwitch> calendar);

}  // namespace lagcorr::io
