#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "lagcorr/csv_io.hpp"
#include "lagcorr/errors.hpp"
#include "test_support.hpp"

using namespace lagcorr;
using lagcorr::testing::hour;
using namespace std::chrono_literals;

TEST_SUITE("time") {
    TEST_CASE("parse and format round trip") {
        CHECK(parse_timestamp("2010-01-01T00:00:00Z") == hour(0));
        CHECK(parse_timestamp("2010-01-01T03:00:00+03:00") == hour(0));
        CHECK(parse_timestamp("2009-12-31T19:00:00-05:00") == hour(0));
        CHECK(parse_timestamp("2010-01-01T00:00:00.250Z") == hour(0) + 250ms);
        CHECK(parse_timestamp("2010-01-01T03:00:00", std::chrono::minutes{180}) == hour(0));
        CHECK(format_timestamp(hour(0)) == "2010-01-01T00:00:00Z");
        CHECK(format_timestamp(hour(0) + 5ms) == "2010-01-01T00:00:00.005Z");
    }

    TEST_CASE("malformed timestamps") {
        CHECK_THROWS_AS((void)parse_timestamp("2010-01-01T00:00:00"), ParseError);
        CHECK_THROWS_AS((void)parse_timestamp("2010-13-01T00:00:00Z"), ParseError);
        CHECK_THROWS_AS((void)parse_timestamp("2010-02-30T00:00:00Z"), ParseError);
        CHECK_THROWS_AS((void)parse_timestamp("garbage"), ParseError);
        CHECK_THROWS_AS((void)parse_timestamp("2010-01-01T25:00:00Z"), ParseError);
    }

    TEST_CASE("offsets") {
        CHECK(parse_utc_offset("Z") == 0min);
        CHECK(parse_utc_offset("+03:00") == 180min);
        CHECK(parse_utc_offset("-0530") == -330min);
        CHECK_THROWS_AS((void)parse_utc_offset("+3"), ParseError);
    }

    TEST_CASE("calendar arithmetic") {
        using namespace std::chrono;
        const Timestamp jan31{sys_days{year{2011} / 1 / 31}};
        CHECK(add_months(jan31, 1) == Timestamp{sys_days{year{2011} / 2 / 28}});
        CHECK(add_months(jan31, 13) == Timestamp{sys_days{year{2012} / 2 / 29}});
        CHECK(period_floor(hour(24 * 40 + 5), CalendarPeriod::month) == Timestamp{sys_days{year{2010} / 2 / 1}});
        CHECK(period_floor(hour(24 * 400), CalendarPeriod::year) == Timestamp{sys_days{year{2011} / 1 / 1}});
        CHECK(parse_period("month") == CalendarPeriod::month);
        CHECK(to_string(CalendarPeriod::all) == "all");
        CHECK_THROWS_AS((void)parse_period("week"), ValidationError);

        const auto months = calendar_windows(hour(5), hour(24 * 65), CalendarPeriod::month);
        REQUIRE(months.size() == 3);
        CHECK(months[0].start == hour(0));
        CHECK(months[0].end == months[1].start);
        CHECK(calendar_windows(hour(0), hour(1), CalendarPeriod::all).front() == TimeRange::unbounded());

        const auto years = anniversary_windows(hour(5), hour(24 * 800));
        REQUIRE(years.size() == 3);
        CHECK(years[0].start == hour(5));
        CHECK(years[1].start == add_months(hour(5), 12));
    }

    TEST_CASE("time range is half-open") {
        const TimeRange r{hour(1), hour(2)};
        CHECK(r.contains(hour(1)));
        CHECK_FALSE(r.contains(hour(2)));
        CHECK(TimeRange::unbounded().contains(hour(-1000000)));
    }
}

TEST_SUITE("io.csv") {
    TEST_CASE("ticks parse with CRLF, comments and zone directive") {
        const std::string text =
            "# exported from desk\r\n"
            "# zone=+03:00\r\n"
            "timestamp,instrument,contract,price,volume\r\n"
            "2010-01-01T03:00:00,BR,BR-F0,77.5,3\r\n"
            "\r\n"
            "2010-01-01T00:30:00Z,BR,BR-F0,77.25,1\r\n";
        const auto ticks = io::parse_ticks(text);
        REQUIRE(ticks.size() == 2);
        CHECK(ticks[0].timestamp == hour(0));
        CHECK(ticks[0].instrument_id == "BR");
        CHECK(ticks[0].contract_id == "BR-F0");
        CHECK(ticks[0].price == 77.5);
        CHECK(ticks[0].volume == 3);
        CHECK(ticks[1].timestamp == hour(0) + 30min);
    }

    TEST_CASE("non-numeric price reports its line") {
        std::string text = "timestamp,instrument,contract,price,volume\n";
        for (int k = 0; k < 5; ++k) text += format_timestamp(hour(k)) + ",BR,BR-1,70,1\n";
        text += format_timestamp(hour(6)) + ",BR,BR-1,abc,1\n";
        try {
            (void)io::parse_ticks(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 7);
            CHECK(std::string(e.what()).find("line 7") != std::string::npos);
        }
    }

    TEST_CASE("structural errors") {
        CHECK_THROWS_AS((void)io::parse_ticks(""), ParseError);
        CHECK_THROWS_AS((void)io::parse_ticks("a,b,c\n"), ParseError);
        CHECK_THROWS_AS((void)io::parse_ticks("timestamp,instrument,contract,price,volume\n2010-01-01T00:00:00Z,BR,BR-1,70\n"),
                        ParseError);
        CHECK_THROWS_AS(
            (void)io::parse_ticks("timestamp,instrument,contract,price,volume\n2010-01-01T00:00:00Z,BR,BR-1,-1,1\n"),
            ParseError);
        CHECK_THROWS_AS((void)io::parse_ticks("timestamp,instrument,contract,price,volume\n2010-01-01T00:00:00,BR,BR-1,1,1\n"),
                        ParseError);
        CHECK_THROWS_AS((void)io::read_ticks("/nonexistent/file.csv"), InputError);
    }

    TEST_CASE("bar validation rejects inconsistent OHLC") {
        const std::string text = std::string(io::kBarHeader) + "\n2010-01-01T00:00:00Z,3600,BR,BR-1,10,9,8,9,5,2\n";
        CHECK_THROWS_AS((void)io::parse_bars(text), ParseError);
    }

    TEST_CASE("property: write then read reproduces ticks, bars and calendar exactly") {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> px(0.001, 1e6);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Tick> ticks;
            for (int k = 0; k < 200; ++k) {
                ticks.push_back(Tick{hour(0) + std::chrono::milliseconds{static_cast<std::int64_t>(rng() % 100000000)},
                                     "I" + std::to_string(k % 3), "C" + std::to_string(k % 2), px(rng),
                                     static_cast<std::int64_t>(rng() % 1000)});
            }
            std::ostringstream out;
            io::write_ticks(out, ticks);
            const auto back = io::parse_ticks(out.str());
            REQUIRE(back.size() == ticks.size());
            for (std::size_t k = 0; k < ticks.size(); ++k) {
                CHECK(back[k].timestamp == ticks[k].timestamp);
                CHECK(back[k].instrument_id == ticks[k].instrument_id);
                CHECK(back[k].contract_id == ticks[k].contract_id);
                CHECK(back[k].price == ticks[k].price);
                CHECK(back[k].volume == ticks[k].volume);
            }

            std::sort(ticks.begin(), ticks.end(), [](const Tick& a, const Tick& b) { return a.timestamp < b.timestamp; });
            const auto bars = aggregate_ticks(ticks, 1h);
            std::ostringstream bout;
            io::write_bars(bout, bars);
            const auto bars_back = io::parse_bars(bout.str());
            REQUIRE(bars_back.size() == bars.size());
            for (std::size_t k = 0; k < bars.size(); ++k) {
                CHECK(bars_back[k].interval_start == bars[k].interval_start);
                CHECK(bars_back[k].interval_length == bars[k].interval_length);
                CHECK(bars_back[k].close == bars[k].close);
                CHECK(bars_back[k].high == bars[k].high);
                CHECK(bars_back[k].volume == bars[k].volume);
                CHECK(bars_back[k].tick_count == bars[k].tick_count);
            }
        }
        const std::vector<RolloverSwitch> cal{{"BR", hour(5)}, {"SI", hour(9) + 1ms}};
        std::ostringstream cout_;
        io::write_calendar(cout_, cal);
        const auto cal_back = io::parse_calendar(cout_.str());
        REQUIRE(cal_back.size() == 2);
        CHECK(cal_back[1].switch_time == hour(9) + 1ms);
    }

    TEST_CASE("format_double is shortest round-trip") {
        CHECK(io::format_double(0.1) == "0.1");
        CHECK(io::format_double(100.0) == "100");
        const double v = 1.0 / 3.0;
        CHECK(std::stod(io::format_double(v)) == v);
    }

    TEST_CASE("files round trip through disk") {
        lagcorr::testing::TempDir dir("io");
        const std::vector<Tick> ticks{Tick{hour(0), "BR", "BR-1", 70.0, 1}};
        {
            std::ofstream f(dir.file("t.csv"));
            io::write_ticks(f, ticks);
        }
        CHECK(io::read_ticks(dir.file("t.csv")).size() == 1);
    }
}
