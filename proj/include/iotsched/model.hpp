#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "iotsched/time.hpp"

namespace iotsched {

/// One visibility window of a satellite over a ground site: rise, culmination
/// and set times together with the elevation/azimuth angles at those moments.
struct SatellitePass {
    std::string satellite_id;
    std::string site_id;
    Instant t_start;
    Instant t_max;
    Instant t_end;
    double theta_start = 0.0; ///< elevation at rise, degrees
    double theta_max = 0.0;   ///< elevation at culmination, degrees
    double theta_end = 0.0;   ///< elevation at set, degrees
    double phi_start = 0.0;   ///< azimuth at rise, degrees
    double phi_max = 0.0;     ///< azimuth at culmination, degrees
    double phi_end = 0.0;     ///< azimuth at set, degrees

    [[nodiscard]] Duration duration() const { return delta_time(t_start, t_end); }

    /// Throws std::invalid_argument naming the pass if any invariant fails:
    /// t_start < t_max < t_end, theta_max dominates the edge elevations,
    /// elevations within [0, 90], azimuths within [0, 360).
    void validate() const;
};

/// All passes of one site over a campaign window.
struct PassCatalog {
    std::string site_id;
    Instant window_start;
    Instant window_end;
    std::vector<SatellitePass> passes;

    /// Checks every pass (validate + containment in window + site match).
    void validate() const;
};

enum class ProcedureType { Sqm, Riot };

std::string_view to_string(ProcedureType t);
ProcedureType procedure_type_from_string(std::string_view s);

/// A concrete test to run against one satellite during one pass.
struct TestProcedure {
    std::string id;
    ProcedureType proc_type = ProcedureType::Sqm;
    Instant t_start;
    Instant t_end;
    Duration config_time; ///< antenna repositioning/calibration overhead before start
    SatellitePass pass;

    [[nodiscard]] const std::string& satellite_id() const { return pass.satellite_id; }
    [[nodiscard]] Duration duration() const { return delta_time(t_start, t_end); }

    /// Throws if the interval is empty or escapes the pass bounds.
    void validate() const;
};

/// The selected set of test procedures; the unit the optimizer manipulates.
/// Built through candidate decoding, it holds one procedure per
/// (satellite, type) requirement with distinct ids.
struct ProcedureSchedule {
    std::vector<TestProcedure> procedures;

    [[nodiscard]] bool empty() const { return procedures.empty(); }
    [[nodiscard]] std::size_t size() const { return procedures.size(); }
};

/// A contiguous interval during which the antenna is allotted to the campaign.
struct Slot {
    Instant t_start;
    Instant t_end;

    [[nodiscard]] Duration length() const { return delta_time(t_start, t_end); }
    bool operator==(const Slot&) const = default;
};

/// Chronologically sorted, non-overlapping antenna allotments.
struct SlotSchedule {
    std::vector<Slot> slots;

    [[nodiscard]] bool empty() const { return slots.empty(); }
    [[nodiscard]] std::size_t size() const { return slots.size(); }
    [[nodiscard]] Duration total_length() const;
};

/// The full scheduling outcome: what to test and when the antenna is booked.
struct IotSchedule {
    ProcedureSchedule procedures;
    SlotSchedule slots;
};

/// Elapsed time from the start of `ti` to the end of `tj`.
/// Throws std::invalid_argument when `tj` ends before `ti` starts.
Duration span_pair(const TestProcedure& ti, const TestProcedure& tj);

/// Elapsed time from the earliest procedure start to the latest procedure end.
/// Throws std::invalid_argument on an empty schedule.
Duration span_schedule(const ProcedureSchedule& s);

} // namespace iotsched
