#include "lagcorr/time.hpp"

#include <charconv>
#include <cstdio>

#include "lagcorr/errors.hpp"

namespace lagcorr {

namespace {

using namespace std::chrono;

int read_digits(std::string_view text, std::size_t pos, std::size_t count) {
    if (pos + count > text.size()) throw ParseError("truncated timestamp '" + std::string(text) + "'");
    int value = 0;
    for (std::size_t k = pos; k < pos + count; ++k) {
        const char c = text[k];
        if (c < '0' || c > '9') throw ParseError("bad digit in timestamp '" + std::string(text) + "'");
        value = value * 10 + (c - '0');
    }
    return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
    if (pos >= text.size() || text[pos] != c)
        throw ParseError("malformed timestamp '" + std::string(text) + "'");
}

}  // namespace

std::chrono::minutes parse_utc_offset(std::string_view text) {
    if (text == "Z" || text == "z" || text == "UTC") return minutes{0};
    if (text.size() < 3 || (text[0] != '+' && text[0] != '-'))
        throw ParseError("bad UTC offset '" + std::string(text) + "'");
    const int sign = text[0] == '+' ? 1 : -1;
    const int oh = read_digits(text, 1, 2);
    std::size_t mpos = 3;
    if (mpos < text.size() && text[mpos] == ':') ++mpos;
    const int om = mpos < text.size() ? read_digits(text, mpos, 2) : 0;
    if (mpos < text.size() && mpos + 2 != text.size()) throw ParseError("bad UTC offset '" + std::string(text) + "'");
    return minutes{sign * (oh * 60 + om)};
}

Timestamp parse_timestamp(std::string_view text, std::optional<minutes> default_offset) {
    const int y = read_digits(text, 0, 4);
    expect(text, 4, '-');
    const int mo = read_digits(text, 5, 2);
    expect(text, 7, '-');
    const int d = read_digits(text, 8, 2);
    if (text.size() <= 10 || (text[10] != 'T' && text[10] != ' '))
        throw ParseError("malformed timestamp '" + std::string(text) + "'");
    const int hh = read_digits(text, 11, 2);
    expect(text, 13, ':');
    const int mm = read_digits(text, 14, 2);
    expect(text, 16, ':');
    const int ss = read_digits(text, 17, 2);
    std::size_t pos = 19;

    int millis = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (digits < 3) millis = millis * 10 + (text[pos] - '0');
            ++digits;
            ++pos;
        }
        if (digits == 0) throw ParseError("empty fraction in timestamp '" + std::string(text) + "'");
        for (std::size_t k = digits; k < 3; ++k) millis *= 10;
    }

    minutes offset{0};
    if (pos >= text.size()) {
        if (!default_offset) throw ParseError("timestamp without zone designator '" + std::string(text) + "'");
        offset = *default_offset;
    } else if (text[pos] == 'Z' || text[pos] == 'z') {
        ++pos;
    } else if (text[pos] == '+' || text[pos] == '-') {
        const int sign = text[pos] == '+' ? 1 : -1;
        const int oh = read_digits(text, pos + 1, 2);
        std::size_t mpos = pos + 3;
        if (mpos < text.size() && text[mpos] == ':') ++mpos;
        const int om = read_digits(text, mpos, 2);
        offset = minutes{sign * (oh * 60 + om)};
        pos = mpos + 2;
    } else {
        throw ParseError("bad zone designator in timestamp '" + std::string(text) + "'");
    }
    if (pos != text.size()) throw ParseError("trailing characters in timestamp '" + std::string(text) + "'");

    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60)
        throw ParseError("out-of-range field in timestamp '" + std::string(text) + "'");
    const auto local = sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss} + milliseconds{millis};
    return time_point_cast<Duration>(local - offset);
}

std::string format_timestamp(Timestamp t) {
    const auto day_point = floor<days>(t);
    const year_month_day ymd{day_point};
    const hh_mm_ss<Duration> tod{t - day_point};
    char buf[40];
    const auto ms = tod.subseconds().count();
    if (ms == 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                      static_cast<int>(tod.seconds().count()));
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                      static_cast<int>(tod.seconds().count()), static_cast<int>(ms));
    }
    return buf;
}

CalendarPeriod parse_period(std::string_view name) {
    if (name == "month" || name == "monthly") return CalendarPeriod::month;
    if (name == "year" || name == "yearly") return CalendarPeriod::year;
    if (name == "all") return CalendarPeriod::all;
    throw ValidationError("unknown calendar period '" + std::string(name) + "' (expected month, year or all)");
}

std::string_view to_string(CalendarPeriod p) noexcept {
    switch (p) {
        case CalendarPeriod::month: return "month";
        case CalendarPeriod::year: return "year";
        case CalendarPeriod::all: return "all";
    }
    return "?";
}

Timestamp period_floor(Timestamp t, CalendarPeriod p) {
    const year_month_day ymd{floor<days>(t)};
    switch (p) {
        case CalendarPeriod::month:
            return Timestamp{sys_days{ymd.year() / ymd.month() / 1}};
        case CalendarPeriod::year:
            return Timestamp{sys_days{ymd.year() / January / 1}};
        case CalendarPeriod::all:
            break;
    }
    return Timestamp::min();
}

Timestamp add_months(Timestamp t, int n) {
    const auto day_point = floor<days>(t);
    const auto tod = t - day_point;
    year_month_day ymd{day_point};
    const year_month shifted = ymd.year() / ymd.month() + months{n};
    const auto month_end = year_month_day_last{shifted.year(), month_day_last{shifted.month()}}.day();
    const auto d = ymd.day() > month_end ? month_end : ymd.day();
    return Timestamp{sys_days{shifted / d}} + tod;
}

std::vector<TimeRange> calendar_windows(Timestamp first, Timestamp last, CalendarPeriod p) {
    if (p == CalendarPeriod::all) return {TimeRange::unbounded()};
    std::vector<TimeRange> out;
    if (last < first) return out;
    const int step = p == CalendarPeriod::month ? 1 : 12;
    for (Timestamp s = period_floor(first, p); s <= last;) {
        const Timestamp e = add_months(s, step);
        out.push_back({s, e});
        s = e;
    }
    return out;
}

std::vector<TimeRange> anniversary_windows(Timestamp first, Timestamp last) {
    std::vector<TimeRange> out;
    for (int k = 0;; ++k) {
        const Timestamp s = add_months(first, 12 * k);
        if (s > last) break;
        out.push_back({s, add_months(first, 12 * (k + 1))});
    }
    return out;
}

}  // namespace lagcorr
