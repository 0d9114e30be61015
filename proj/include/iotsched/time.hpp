#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iotsched {

/// Raised when textual input (timestamps, CSV, JSON) cannot be interpreted.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-negative time interval with one-second resolution.
///
/// All schedule arithmetic is done in integer seconds; durations given in
/// minutes (configuration overheads, slot quanta) are converted on entry so
/// no floating point drift can creep into interval bookkeeping.
class Duration {
public:
    constexpr Duration() = default;

    static Duration of_seconds(std::int64_t s) {
        if (s < 0) {
            throw std::invalid_argument("Duration cannot be negative: " + std::to_string(s) + "s");
        }
        return Duration(s);
    }
    static Duration of_minutes(std::int64_t m) { return of_seconds(m * 60); }
    static Duration of_hours(std::int64_t h) { return of_seconds(h * 3600); }

    [[nodiscard]] constexpr std::int64_t seconds() const { return seconds_; }
    [[nodiscard]] constexpr double minutes() const { return static_cast<double>(seconds_) / 60.0; }
    [[nodiscard]] constexpr double hours() const { return static_cast<double>(seconds_) / 3600.0; }

    Duration operator+(Duration rhs) const { return Duration(seconds_ + rhs.seconds_); }
    Duration& operator+=(Duration rhs) {
        seconds_ += rhs.seconds_;
        return *this;
    }
    /// Subtraction throws rather than produce a negative interval.
    Duration operator-(Duration rhs) const { return of_seconds(seconds_ - rhs.seconds_); }

    constexpr auto operator<=>(const Duration&) const = default;

private:
    explicit constexpr Duration(std::int64_t s) : seconds_(s) {}
    std::int64_t seconds_ = 0;
};

/// UTC timestamp with one-second resolution (seconds since the Unix epoch).
class Instant {
public:
    constexpr Instant() = default;

    static constexpr Instant from_epoch_seconds(std::int64_t s) { return Instant(s); }

    [[nodiscard]] constexpr std::int64_t epoch_seconds() const { return epoch_seconds_; }

    Instant operator+(Duration d) const { return Instant(epoch_seconds_ + d.seconds()); }
    Instant operator-(Duration d) const { return Instant(epoch_seconds_ - d.seconds()); }

    constexpr auto operator<=>(const Instant&) const = default;

private:
    explicit constexpr Instant(std::int64_t s) : epoch_seconds_(s) {}
    std::int64_t epoch_seconds_ = 0;
};

/// Elapsed time from `a` to `b`. Throws std::invalid_argument when `a > b`.
Duration delta_time(Instant a, Instant b);

/// Parses a strict ISO-8601 UTC timestamp, e.g. "2024-10-01T13:45:00Z".
/// The trailing 'Z' is optional; any offset other than Z/UTC is rejected.
Instant parse_instant(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_instant(Instant t);

/// Civil-calendar conversions (proleptic Gregorian, UTC).
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

/// Convenience for building timestamps in code and tests.
Instant instant_utc(int year, unsigned month, unsigned day, unsigned hour = 0, unsigned minute = 0,
                    unsigned second = 0);

} // namespace iotsched
