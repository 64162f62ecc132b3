#include "lagcorr/csv_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lagcorr/errors.hpp"

namespace lagcorr::io {

namespace {

/// Iterates the data lines of a CSV document after checking its header.
class CsvReader {
public:
    CsvReader(std::string_view text, std::string_view header) : text_(text) {
        std::string_view line;
        while (next_line(line)) {
            if (line.empty()) continue;
            if (line.front() == '#') {
                read_directive(line);
                continue;
            }
            if (line != header) {
                throw ParseError("expected header '" + std::string(header) + "', got '" + std::string(line) + "'",
                                 line_no_);
            }
            return;
        }
        throw ParseError("missing header '" + std::string(header) + "'", line_no_);
    }

    /// Splits the next non-blank line into exactly N fields.
    template <std::size_t N>
    bool next(std::array<std::string_view, N>& fields) {
        std::string_view line;
        while (next_line(line)) {
            if (line.empty() || line.front() == '#') continue;
            std::size_t count = 0;
            std::size_t start = 0;
            for (;;) {
                const auto comma = line.find(',', start);
                const auto field = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
                if (count == N) fail("too many fields, expected " + std::to_string(N));
                fields[count++] = field;
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            if (count != N) fail("expected " + std::to_string(N) + " fields, got " + std::to_string(count));
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_no_); }
    [[nodiscard]] std::size_t line() const noexcept { return line_no_; }

    double number(std::string_view field, const char* name) const {
        double v = 0.0;
        const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || p != field.data() + field.size() || field.empty())
            fail(std::string("non-numeric ") + name + " '" + std::string(field) + "'");
        return v;
    }

    std::int64_t integer(std::string_view field, const char* name) const {
        std::int64_t v = 0;
        const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || p != field.data() + field.size() || field.empty())
            fail(std::string("non-integer ") + name + " '" + std::string(field) + "'");
        return v;
    }

    Timestamp timestamp(std::string_view field) const {
        try {
            return parse_timestamp(field, zone_);
        } catch (const ParseError& e) {
            fail(e.what());
        }
    }

    std::string text(std::string_view field, const char* name) const {
        if (field.empty()) fail(std::string("empty ") + name);
        return std::string(field);
    }

private:
    bool next_line(std::string_view& line) {
        if (pos_ >= text_.size()) return false;
        const auto nl = text_.find('\n', pos_);
        const auto end = nl == std::string_view::npos ? text_.size() : nl;
        line = text_.substr(pos_, end - pos_);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos_ = end + 1;
        ++line_no_;
        return true;
    }

    void read_directive(std::string_view line) {
        line.remove_prefix(1);
        while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        constexpr std::string_view key = "zone=";
        if (line.substr(0, key.size()) == key) {
            try {
                zone_ = parse_utc_offset(line.substr(key.size()));
            } catch (const ParseError& e) {
                fail(e.what());
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
    std::optional<std::chrono::minutes> zone_;
};

template <class T>
void validate_at(const CsvReader& reader, const T& item) {
    try {
        validate(item);
    } catch (const ValidationError& e) {
        reader.fail(e.what());
    }
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

std::vector<Tick> parse_ticks(std::string_view text) {
    CsvReader reader(text, kTickHeader);
    std::vector<Tick> out;
    std::array<std::string_view, 5> f;
    while (reader.next(f)) {
        Tick t;
        t.timestamp = reader.timestamp(f[0]);
        t.instrument_id = reader.text(f[1], "instrument");
        t.contract_id = std::string(f[2]);
        t.price = reader.number(f[3], "price");
        t.volume = reader.integer(f[4], "volume");
        validate_at(reader, t);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Bar> parse_bars(std::string_view text) {
    CsvReader reader(text, kBarHeader);
    std::vector<Bar> out;
    std::array<std::string_view, 10> f;
    while (reader.next(f)) {
        Bar b;
        b.interval_start = reader.timestamp(f[0]);
        b.interval_length = std::chrono::seconds{reader.integer(f[1], "interval_seconds")};
        b.instrument_id = reader.text(f[2], "instrument");
        b.contract_id = std::string(f[3]);
        b.open = reader.number(f[4], "open");
        b.high = reader.number(f[5], "high");
        b.low = reader.number(f[6], "low");
        b.close = reader.number(f[7], "close");
        b.volume = reader.integer(f[8], "volume");
        b.tick_count = reader.integer(f[9], "tick_count");
        validate_at(reader, b);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<RolloverSwitch> parse_calendar(std::string_view text) {
    CsvReader reader(text, kCalendarHeader);
    std::vector<RolloverSwitch> out;
    std::array<std::string_view, 2> f;
    while (reader.next(f)) out.push_back({reader.text(f[0], "instrument"), reader.timestamp(f[1])});
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

namespace {

template <class F>
auto with_path(const std::filesystem::path& path, F&& parse) {
    const std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace

std::vector<Tick> read_ticks(const std::filesystem::path& path) { return with_path(path, parse_ticks); }
std::vector<Bar> read_bars(const std::filesystem::path& path) { return with_path(path, parse_bars); }
std::vector<RolloverSwitch> read_calendar(const std::filesystem::path& path) {
    return with_path(path, parse_calendar);
}

void write_ticks(std::ostream& out, std::span<const Tick> ticks) {
    out << kTickHeader << '\n';
    for (const auto& t : ticks) {
        out << format_timestamp(t.timestamp) << ',' << t.instrument_id << ',' << t.contract_id << ','
            << format_double(t.price) << ',' << t.volume << '\n';
    }
}

void write_bars(std::ostream& out, std::span<const Bar> bars) {
    out << kBarHeader << '\n';
    for (const auto& b : bars) {
        const auto secs = std::chrono::duration_cast<std::chrono::seconds>(b.interval_length).count();
        out << format_timestamp(b.interval_start) << ',' << secs << ',' << b.instrument_id << ',' << b.contract_id
            << ',' << format_double(b.open) << ',' << format_double(b.high) << ',' << format_double(b.low) << ','
            << format_double(b.close) << ',' << b.volume << ',' << b.tick_count << '\n';
    }
}

void write_calendar(std::ostream& out, std::span<const RolloverSwitch> calendar) {
    out << kCalendarHeader << '\n';
    for (const auto& s : calendar) out << s.instrument_id << ',' << format_timestamp(s.switch_time) << '\n';
}

}  // namespace lagcorr::io
