#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iotsched/time.hpp"

using namespace iotsched;

TEST_CASE("delta_time basics") {
    const Instant t = instant_utc(2024, 10, 1, 10, 0, 0);
    CHECK(delta_time(t, t).seconds() == 0);
    CHECK(delta_time(t, instant_utc(2024, 10, 1, 10, 45, 0)).seconds() == 2700);
    CHECK(delta_time(instant_utc(2024, 10, 1), instant_utc(2024, 10, 2)).seconds() == 86400);
    CHECK_THROWS_AS(delta_time(instant_utc(2024, 10, 2), instant_utc(2024, 10, 1)),
                    std::invalid_argument);
}

TEST_CASE("delta_time is additive over ordered triples") {
    const Instant a = instant_utc(2024, 1, 1, 3, 17, 9);
    const Instant b = instant_utc(2024, 2, 11, 23, 0, 1);
    const Instant c = instant_utc(2025, 6, 30, 0, 45, 59);
    CHECK(delta_time(a, b).seconds() + delta_time(b, c).seconds() == delta_time(a, c).seconds());
}

TEST_CASE("duration stays non-negative") {
    CHECK_THROWS_AS(Duration::of_seconds(-1), std::invalid_argument);
    CHECK_THROWS_AS(Duration::of_minutes(10) - Duration::of_minutes(11), std::invalid_argument);
    CHECK(Duration::of_minutes(90).hours() == doctest::Approx(1.5));
}

TEST_CASE("iso-8601 round trip") {
    const char* samples[] = {"2024-10-01T00:00:00Z", "2000-02-29T23:59:59Z",
                             "1999-12-31T12:34:56Z", "2031-01-05T09:07:03Z"};
    for (const char* s : samples) {
        CHECK(format_instant(parse_instant(s)) == s);
    }
    CHECK(parse_instant("2024-10-01T00:00:00") == parse_instant("2024-10-01T00:00:00Z"));
}

TEST_CASE("iso-8601 rejects malformed input") {
    CHECK_THROWS_AS(parse_instant("2024-13-01T00:00:00Z"), ParseError);
    CHECK_THROWS_AS(parse_instant("2023-02-29T00:00:00Z"), ParseError);
    CHECK_THROWS_AS(parse_instant("2024-10-01 00:00:00"), ParseError);
    CHECK_THROWS_AS(parse_instant("2024-10-01T00:00:00+02:00"), ParseError);
    CHECK_THROWS_AS(parse_instant("garbage"), ParseError);
}

TEST_CASE("epoch alignment") {
    CHECK(instant_utc(1970, 1, 1).epoch_seconds() == 0);
    CHECK(instant_utc(2024, 10, 1).epoch_seconds() == 1727740800);
}
