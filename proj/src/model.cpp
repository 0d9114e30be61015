#include "iotsched/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace iotsched {

namespace {

[[noreturn]] void pass_error(const SatellitePass& p, const std::string& why) {
    throw std::invalid_argument("pass " + p.satellite_id + "@" + format_instant(p.t_start) +
                                ": " + why);
}

} // namespace

void SatellitePass::validate() const {
    if (satellite_id.empty()) throw std::invalid_argument("pass with empty satellite_id");
    if (!(t_start < t_max)) pass_error(*this, "violates t_start < t_max");
    if (!(t_max < t_end)) pass_error(*this, "violates t_max < t_end");
    if (theta_max < theta_start || theta_max < theta_end)
        pass_error(*this, "theta_max below an edge elevation");
    for (double theta : {theta_start, theta_max, theta_end}) {
        if (theta < 0.0 || theta > 90.0) pass_error(*this, "elevation outside [0, 90]");
    }
    for (double phi : {phi_start, phi_max, phi_end}) {
        if (phi < 0.0 || phi >= 360.0) pass_error(*this, "azimuth outside [0, 360)");
    }
}

void PassCatalog::validate() const {
    if (window_end < window_start)
        throw std::invalid_argument("pass catalog window ends before it starts");
    for (const auto& p : passes) {
        p.validate();
        if (p.site_id != site_id) pass_error(p, "site does not match catalog site " + site_id);
        if (p.t_start < window_start || window_end < p.t_end)
            pass_error(p, "outside catalog window");
    }
}

std::string_view to_string(ProcedureType t) {
    return t == ProcedureType::Sqm ? "SQM" : "RIOT";
}

ProcedureType procedure_type_from_string(std::string_view s) {
    if (s == "SQM") return ProcedureType::Sqm;
    if (s == "RIOT") return ProcedureType::Riot;
    throw ParseError("unknown procedure type \"" + std::string(s) + "\" (expected SQM or RIOT)");
}

void TestProcedure::validate() const {
    if (!(t_start < t_end))
        throw std::invalid_argument("procedure " + id + ": empty or reversed interval");
    if (t_start < pass.t_start || pass.t_end < t_end)
        throw std::invalid_argument("procedure " + id + ": escapes its pass bounds");
}

Duration SlotSchedule::total_length() const {
    std::int64_t total = 0;
    for (const auto& s : slots) total += s.length().seconds();
    return Duration::of_seconds(total);
}

Duration span_pair(const TestProcedure& ti, const TestProcedure& tj) {
    if (tj.t_end < ti.t_start) {
        throw std::invalid_argument("span_pair: " + tj.id + " ends before " + ti.id + " starts");
    }
    return delta_time(ti.t_start, tj.t_end);
}

Duration span_schedule(const ProcedureSchedule& s) {
    if (s.empty()) throw std::invalid_argument("span_schedule: empty schedule");
    Instant first = s.procedures.front().t_start;
    Instant last = s.procedures.front().t_end;
    for (const auto& p : s.procedures) {
        first = std::min(first, p.t_start);
        last = std::max(last, p.t_end);
    }
    return delta_time(first, last);
}

} // namespace iotsched
