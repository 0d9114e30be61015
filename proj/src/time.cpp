#include "iotsched/time.hpp"

#include <array>
#include <cstdio>

namespace iotsched {

Duration delta_time(Instant a, Instant b) {
    if (a > b) {
        throw std::invalid_argument("delta_time: interval end " + format_instant(b) +
                                    " precedes start " + format_instant(a));
    }
    return Duration::of_seconds(b.epoch_seconds() - a.epoch_seconds());
}

// Howard Hinnant's branchless civil-date algorithms (public domain).
std::int64_t days_from_civil(int year, unsigned month, unsigned day) {
    year -= month <= 2;
    const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(year - era * 400);
    const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day) {
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = doy - (153 * mp + 2) / 5 + 1;
    month = mp + (mp < 10 ? 3 : -9);
    year = static_cast<int>(y + (month <= 2));
}

Instant instant_utc(int year, unsigned month, unsigned day, unsigned hour, unsigned minute,
                    unsigned second) {
    const std::int64_t d = days_from_civil(year, month, day);
    return Instant::from_epoch_seconds(d * 86400 + hour * 3600 + minute * 60 + second);
}

namespace {

bool is_leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

unsigned days_in_month(int y, unsigned m) {
    static constexpr std::array<unsigned, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                       31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return kDays[m - 1];
}

[[noreturn]] void bad_timestamp(std::string_view text, const char* why) {
    throw ParseError("invalid timestamp \"" + std::string(text) + "\": " + why);
}

int parse_digits(std::string_view text, std::string_view& rest, int count) {
    if (rest.size() < static_cast<std::size_t>(count)) bad_timestamp(text, "truncated");
    int value = 0;
    for (int i = 0; i < count; ++i) {
        const char c = rest[static_cast<std::size_t>(i)];
        if (c < '0' || c > '9') bad_timestamp(text, "expected digit");
        value = value * 10 + (c - '0');
    }
    rest.remove_prefix(static_cast<std::size_t>(count));
    return value;
}

void expect(std::string_view text, std::string_view& rest, char c) {
    if (rest.empty() || rest.front() != c) bad_timestamp(text, "unexpected separator");
    rest.remove_prefix(1);
}

} // namespace

Instant parse_instant(std::string_view text) {
    std::string_view rest = text;
    const int year = parse_digits(text, rest, 4);
    expect(text, rest, '-');
    const int month = parse_digits(text, rest, 2);
    expect(text, rest, '-');
    const int day = parse_digits(text, rest, 2);
    expect(text, rest, 'T');
    const int hour = parse_digits(text, rest, 2);
    expect(text, rest, ':');
    const int minute = parse_digits(text, rest, 2);
    expect(text, rest, ':');
    const int second = parse_digits(text, rest, 2);
    if (!rest.empty()) {
        if (rest != "Z") bad_timestamp(text, "only UTC ('Z') timestamps are supported");
    }
    if (month < 1 || month > 12) bad_timestamp(text, "month out of range");
    if (day < 1 || day > static_cast<int>(days_in_month(year, static_cast<unsigned>(month))))
        bad_timestamp(text, "day out of range");
    if (hour > 23 || minute > 59 || second > 60) bad_timestamp(text, "time of day out of range");
    return instant_utc(year, static_cast<unsigned>(month), static_cast<unsigned>(day),
                       static_cast<unsigned>(hour), static_cast<unsigned>(minute),
                       static_cast<unsigned>(second));
}

std::string format_instant(Instant t) {
    std::int64_t s = t.epoch_seconds();
    std::int64_t days = s / 86400;
    std::int64_t rem = s % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    int year;
    unsigned month, day;
    civil_from_days(days, year, month, day);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", year, month, day,
                  static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

} // namespace iotsched
