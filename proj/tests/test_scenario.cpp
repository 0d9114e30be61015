#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "iotsched/scenario.hpp"

using namespace iotsched;

namespace {

const Instant kDay = instant_utc(2024, 10, 1);

Instant at(unsigned h, unsigned m = 0, unsigned s = 0) {
    return kDay + Duration::of_seconds(h * 3600 + m * 60 + s);
}

CampaignSpec basic_spec(std::vector<std::string> sats, std::vector<Requirement> reqs) {
    CampaignSpec spec;
    spec.site_id = "gs1";
    spec.window_start = kDay;
    spec.window_end = kDay + Duration::of_hours(72);
    spec.satellites = std::move(sats);
    spec.requirements = std::move(reqs);
    return spec;
}

std::string csv_line(const std::string& sat, const std::string& start, const std::string& tmax,
                     const std::string& end, double el_start = 4.0, double el_max = 50.0,
                     double el_end = 4.5) {
    std::ostringstream ss;
    ss << sat << ",gs1," << start << ',' << tmax << ',' << end << ',' << el_start << ',' << el_max
       << ',' << el_end << ",10,180,350";
    return ss.str();
}

} // namespace

TEST_CASE("load_passes accepts well-formed CSV") {
    std::istringstream in(std::string(kPassCsvHeader) + "\n" +
                          csv_line("s01", "2024-10-01T10:00:00Z", "2024-10-01T11:00:00Z",
                                   "2024-10-01T12:00:00Z") +
                          "\n");
    const auto catalog = load_passes(in, PassFileFormat::Csv);
    REQUIRE(catalog.passes.size() == 1);
    CHECK(catalog.passes[0].satellite_id == "s01");
    CHECK(catalog.site_id == "gs1");
    CHECK(catalog.window_start == parse_instant("2024-10-01T10:00:00Z"));
}

TEST_CASE("load_passes rejects a pass with reversed culmination") {
    std::istringstream in(std::string(kPassCsvHeader) + "\n" +
                          csv_line("s01", "2024-10-01T11:30:00Z", "2024-10-01T11:00:00Z",
                                   "2024-10-01T12:00:00Z") +
                          "\n");
    CHECK_THROWS_WITH_AS(load_passes(in, PassFileFormat::Csv),
                         doctest::Contains("t_start < t_max"), std::invalid_argument);
}

TEST_CASE("load_passes on empty input yields an empty catalog") {
    std::istringstream in("");
    const auto catalog = load_passes(in, PassFileFormat::Csv);
    CHECK(catalog.passes.empty());
}

TEST_CASE("load_passes locates parse errors") {
    std::istringstream in(std::string(kPassCsvHeader) +
                          "\ns01,gs1,not-a-time,2024-10-01T11:00:00Z,2024-10-01T12:00:00Z,4,50,4,"
                          "10,180,350\n");
    CHECK_THROWS_WITH_AS(load_passes(in, PassFileFormat::Csv), doctest::Contains("line 2"),
                         ParseError);
}

TEST_CASE("load_passes reads the JSON mirror of the CSV schema") {
    std::istringstream in(R"([{"sat":"s01","site":"gs1",
        "t_start":"2024-10-01T10:00:00Z","t_max":"2024-10-01T11:00:00Z",
        "t_end":"2024-10-01T12:00:00Z","el_start":4,"el_max":50,"el_end":4,
        "az_start":10,"az_max":180,"az_end":350}])");
    const auto catalog = load_passes(in, PassFileFormat::Json);
    REQUIRE(catalog.passes.size() == 1);
    CHECK(catalog.passes[0].theta_max == 50.0);
}

TEST_CASE("synth_passes is deterministic and productive") {
    const auto window_end = kDay + Duration::of_hours(72);
    SynthParams params;
    const auto a = synth_passes(42, 3, kDay, window_end, params);
    const auto b = synth_passes(42, 3, kDay, window_end, params);
    REQUIRE(a.passes.size() == b.passes.size());
    for (std::size_t i = 0; i < a.passes.size(); ++i) {
        CHECK(a.passes[i].satellite_id == b.passes[i].satellite_id);
        CHECK(a.passes[i].t_start == b.passes[i].t_start);
        CHECK(a.passes[i].theta_max == b.passes[i].theta_max);
    }

    // ~8 h period over 3 days leaves at least 6 passes per satellite
    std::map<std::string, int> per_sat;
    for (const auto& p : a.passes) ++per_sat[p.satellite_id];
    CHECK(per_sat.size() == 3);
    for (const auto& [sat, count] : per_sat) {
        INFO(sat);
        CHECK(count >= 6);
    }

    const auto c = synth_passes(43, 3, kDay, window_end, params);
    CHECK(a.passes.size() > 0);
    bool any_difference = a.passes.size() != c.passes.size();
    for (std::size_t i = 0; !any_difference && i < a.passes.size(); ++i) {
        any_difference = a.passes[i].t_start != c.passes[i].t_start;
    }
    CHECK(any_difference);
}

TEST_CASE("synth_passes riot_fraction controls low-edge satellites") {
    SynthParams params;
    params.riot_fraction = 0.0;
    const auto none = synth_passes(7, 4, kDay, kDay + Duration::of_hours(72), params);
    for (const auto& p : none.passes) {
        CHECK_FALSE((p.theta_start <= 5.0 && p.theta_end <= 5.0));
    }

    params.riot_fraction = 0.5;
    const auto half = synth_passes(7, 4, kDay, kDay + Duration::of_hours(72), params);
    std::map<std::string, bool> low_edge;
    for (const auto& p : half.passes) {
        low_edge[p.satellite_id] =
            low_edge[p.satellite_id] || (p.theta_start <= 5.0 && p.theta_end <= 5.0);
    }
    int low_sats = 0;
    for (const auto& [sat, low] : low_edge) low_sats += low ? 1 : 0;
    CHECK(low_sats == 2);
}

TEST_CASE("synth_passes rejects a window shorter than a pass") {
    CHECK_THROWS_AS(synth_passes(1, 1, kDay, kDay + Duration::of_minutes(30), SynthParams{}),
                    std::invalid_argument);
}

TEST_CASE("generate_candidates applies the three SQM placements") {
    PassCatalog catalog;
    catalog.site_id = "gs1";
    catalog.window_start = kDay;
    catalog.window_end = kDay + Duration::of_hours(72);
    SatellitePass pass;
    pass.satellite_id = "s01";
    pass.site_id = "gs1";
    pass.t_start = at(10);
    pass.t_max = at(11);
    pass.t_end = at(12);
    pass.theta_start = 6.0;
    pass.theta_max = 60.0;
    pass.theta_end = 7.0;
    catalog.passes = {pass};

    const auto spec = basic_spec({"s01"}, {{"s01", ProcedureType::Sqm}});
    const auto cands = generate_candidates(catalog, spec);
    REQUIRE(cands.size() == 3);

    CHECK(cands.candidates[0].t_start == at(11));
    CHECK(cands.candidates[0].t_end == at(11, 45));
    CHECK(cands.candidates[1].t_start == at(10, 15));
    CHECK(cands.candidates[1].t_end == at(11));
    CHECK(cands.candidates[2].t_start == at(10, 37, 30));
    CHECK(cands.candidates[2].t_end == at(11, 22, 30));
    for (const auto& c : cands.candidates) {
        CHECK(c.duration().seconds() == 45 * 60);
        CHECK(c.config_time == spec.config_time());
    }
}

TEST_CASE("generate_candidates drops placements that escape the pass") {
    PassCatalog catalog;
    catalog.site_id = "gs1";
    catalog.window_start = kDay;
    catalog.window_end = kDay + Duration::of_hours(72);
    SatellitePass pass;
    pass.satellite_id = "s01";
    pass.site_id = "gs1";
    pass.t_start = at(10);
    pass.t_max = at(10, 20); // too close to the rise for the ending/centered placements
    pass.t_end = at(12);
    pass.theta_start = 6.0;
    pass.theta_max = 60.0;
    pass.theta_end = 7.0;
    catalog.passes = {pass};

    const auto spec = basic_spec({"s01"}, {{"s01", ProcedureType::Sqm}});
    const auto cands = generate_candidates(catalog, spec);
    REQUIRE(cands.size() == 1);
    CHECK(cands.candidates[0].t_start == at(10, 20));
}

TEST_CASE("generate_candidates emits RIOT candidates only for low-edge passes") {
    PassCatalog catalog;
    catalog.site_id = "gs1";
    catalog.window_start = kDay;
    catalog.window_end = kDay + Duration::of_hours(72);
    SatellitePass low;
    low.satellite_id = "s01";
    low.site_id = "gs1";
    low.t_start = at(10);
    low.t_max = at(11);
    low.t_end = at(12);
    low.theta_start = 3.0;
    low.theta_max = 60.0;
    low.theta_end = 4.0;
    SatellitePass high = low;
    high.t_start = at(20);
    high.t_max = at(21);
    high.t_end = at(22);
    high.theta_start = 8.0;
    catalog.passes = {low, high};

    const auto spec = basic_spec({"s01"}, {{"s01", ProcedureType::Riot}});
    const auto cands = generate_candidates(catalog, spec);
    REQUIRE(cands.size() == 1);
    CHECK(cands.candidates[0].t_start == low.t_start);
    CHECK(cands.candidates[0].t_end == low.t_end);
    CHECK(cands.candidates[0].proc_type == ProcedureType::Riot);
}

TEST_CASE("generate_candidates reports uncoverable requirements") {
    PassCatalog catalog;
    catalog.site_id = "gs1";
    catalog.window_start = kDay;
    catalog.window_end = kDay + Duration::of_hours(72);
    SatellitePass pass;
    pass.satellite_id = "s01";
    pass.site_id = "gs1";
    pass.t_start = at(10);
    pass.t_max = at(11);
    pass.t_end = at(12);
    pass.theta_start = 8.0; // not RIOT-eligible
    pass.theta_max = 60.0;
    pass.theta_end = 9.0;
    catalog.passes = {pass};

    const auto spec = basic_spec({"s01"}, {{"s01", ProcedureType::Riot}});
    try {
        generate_candidates(catalog, spec);
        FAIL("expected InfeasibleScenarioError");
    } catch (const InfeasibleScenarioError& e) {
        REQUIRE(e.uncovered.size() == 1);
        CHECK(e.uncovered[0].satellite_id == "s01");
        CHECK(std::string(e.what()).find("RIOT/s01") != std::string::npos);
    }
}

TEST_CASE("candidate sets from synthetic scenarios keep their shape") {
    SynthParams params;
    params.riot_fraction = 1.0 / 3.0;
    const auto catalog = synth_passes(11, 6, kDay, kDay + Duration::of_hours(72), params);
    std::vector<Requirement> reqs;
    std::vector<std::string> sats;
    for (int i = 1; i <= 6; ++i) {
        char name[8];
        std::snprintf(name, sizeof(name), "s%02d", i);
        sats.emplace_back(name);
        reqs.push_back({name, ProcedureType::Sqm});
    }
    reqs.push_back({"s01", ProcedureType::Riot});
    reqs.push_back({"s02", ProcedureType::Riot});
    const auto spec = basic_spec(sats, reqs);
    const auto cands = generate_candidates(catalog, spec);

    CHECK(cands.by_requirement.size() == spec.requirements.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto& c = cands.candidates[i];
        const auto& req =
            cands.requirements[static_cast<std::size_t>(cands.candidate_requirement[i])];
        CHECK(c.proc_type == req.proc_type);
        CHECK(c.satellite_id() == req.satellite_id);
        CHECK(c.pass.t_start <= c.t_start);
        CHECK(c.t_end <= c.pass.t_end);
        if (c.proc_type == ProcedureType::Sqm) {
            CHECK(c.duration().seconds() == spec.sqm_duration().seconds());
        } else {
            CHECK(c.t_start == c.pass.t_start);
            CHECK(c.t_end == c.pass.t_end);
        }
    }
    std::size_t total = 0;
    for (const auto& group : cands.by_requirement) total += group.size();
    CHECK(total == cands.size());
}
