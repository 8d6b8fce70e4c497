/** \file
 * Cycle assignment: ASAP, ALAP, uniform ALAP and resource-constrained list
 * scheduling.
 *
 * Two gates sharing a qubit are separated by the duration of the first plus
 * the configured buffer between their instruction types.
 */

#pragma once

#include <map>
#include <span>
#include <vector>

#include "qlc/ir.h"

namespace qlc::platform {
struct Platform;
}

namespace qlc::schedule {

using ir::Gate;

struct Entry {
    std::size_t start = 0;
    std::size_t duration = 1;
};

struct Schedule {
    std::vector<Gate> gates;
    std::vector<Entry> entries;  ///< parallel to gates
    std::size_t makespan = 0;

    /// Gate indices grouped by start cycle, program order inside a group.
    std::map<std::size_t, std::vector<std::size_t>> bundles() const;
};

enum class Mode { asap, alap, uniform };
enum class Direction { asap, alap };

/// Parses "asap", "alap" or "uniform" in any case.
Mode parse_mode(std::string_view text);

/// Duration in cycles: the gate's resolved duration, else the platform's, else 1.
std::size_t gate_duration(const Gate &gate, const platform::Platform &platform);

/// Required distance from the start of `a` to the start of a later gate `b`
/// on a shared qubit.
std::size_t edge_weight(const Gate &a, const Gate &b, const platform::Platform &platform);

Schedule schedule_asap(std::span<const Gate> gates, const platform::Platform &platform);

/// Latest starts that keep the ASAP makespan.
Schedule schedule_alap(std::span<const Gate> gates, const platform::Platform &platform);

/// ALAP variant that only delays a gate into cycles holding fewer than
/// ceil(gates / makespan) starts.
Schedule schedule_uniform_alap(std::span<const Gate> gates, const platform::Platform &platform);

/// Cycle-by-cycle list scheduling in program order (reverse order for ALAP)
/// that never exceeds a resource count. Throws UnschedulableGate.
Schedule schedule_resource_constrained(std::span<const Gate> gates, const platform::Platform &platform,
                                       Direction direction);

/// Dispatches on mode; uniform under resource constraints schedules ALAP.
Schedule schedule(std::span<const Gate> gates, const platform::Platform &platform, Mode mode,
                  bool resource_constrained);

/// Depth with unit durations and no buffers.
std::size_t circuit_depth(std::span<const Gate> gates);

/// Checks dependency distances, the makespan and, when `check_resources` is
/// set, every resource count at every cycle. Returns an empty string when
/// valid, else a description of the first violation.
std::string validate(const Schedule &schedule, const platform::Platform &platform, bool check_resources);

} // namespace qlc::schedule
