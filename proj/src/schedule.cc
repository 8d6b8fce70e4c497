/** \file
 * ASAP, ALAP, uniform ALAP and resource-constrained schedulers.
 */

#include <algorithm>
#include <cctype>
#include <limits>

#include "qlc/error.h"
#include "qlc/optimize.h"
#include "qlc/platform.h"
#include "qlc/schedule.h"

namespace qlc::schedule {

namespace {

struct Dependency {
    std::size_t other;
    std::size_t weight;
};

// Per-gate predecessor and successor lists with start-to-start distances.
struct Graph {
    std::vector<std::size_t> duration;
    std::vector<std::vector<Dependency>> preds;
    std::vector<std::vector<Dependency>> succs;
};

Graph build_graph(std::span<const Gate> gates, const platform::Platform &platform) {
    const auto gdg = optimize::build_gdg(gates);
    Graph g;
    g.duration.resize(gates.size());
    g.preds.resize(gates.size());
    g.succs.resize(gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i) g.duration[i] = gate_duration(gates[i], platform);
    for (const auto &e : gdg.edges()) {
        if (e.from >= gates.size() || e.to >= gates.size()) continue;
        const auto w = edge_weight(gates[e.from], gates[e.to], platform);
        g.preds[e.to].push_back({e.from, w});
        g.succs[e.from].push_back({e.to, w});
    }
    return g;
}

Schedule make_schedule(std::span<const Gate> gates, const Graph &graph, const std::vector<std::size_t> &starts) {
    Schedule s;
    s.gates.assign(gates.begin(), gates.end());
    s.entries.resize(gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i) {
        s.entries[i] = {starts[i], graph.duration[i]};
        s.makespan = std::max(s.makespan, starts[i] + graph.duration[i]);
    }
    return s;
}

std::vector<std::size_t> asap_starts(const Graph &graph) {
    std::vector<std::size_t> start(graph.duration.size(), 0);
    for (std::size_t i = 0; i < start.size(); ++i) {
        for (const auto &p : graph.preds[i]) start[i] = std::max(start[i], start[p.other] + p.weight);
    }
    return start;
}

std::size_t makespan_of(const Graph &graph, const std::vector<std::size_t> &starts) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < starts.size(); ++i) m = std::max(m, starts[i] + graph.duration[i]);
    return m;
}

// Latest start of gate i given the already placed successors.
std::size_t latest_start(const Graph &graph, const std::vector<std::size_t> &start, std::size_t i,
                         std::size_t makespan) {
    std::size_t latest = makespan - graph.duration[i];
    for (const auto &s : graph.succs[i]) latest = std::min(latest, start[s.other] - s.weight);
    return latest;
}

std::map<std::string, std::size_t> claim_totals(const platform::Platform &platform, const Gate &gate) {
    std::map<std::string, std::size_t> totals;
    for (const auto &c : platform::resource_claims(platform, gate)) totals[c.resource] += c.units;
    return totals;
}

// List scheduling over `order`; `preds` are in the direction of time.
std::vector<std::size_t> list_schedule(std::span<const Gate> gates, const platform::Platform &platform,
                                       const std::vector<std::size_t> &order,
                                       const std::vector<std::vector<Dependency>> &preds,
                                       const std::vector<std::size_t> &duration) {
    const std::size_t n = gates.size();
    std::vector<std::map<std::string, std::size_t>> claims(n);
    for (std::size_t i = 0; i < n; ++i) {
        claims[i] = claim_totals(platform, gates[i]);
        for (const auto &[resource, units] : claims[i]) {
            const auto it = platform.resources.counts.find(resource);
            const std::size_t capacity = it == platform.resources.counts.end() ? 0 : it->second;
            if (units > capacity) {
                throw Error("schedule", ErrorCode::UnschedulableGate,
                            "'" + gates[i].to_string() + "' claims " + std::to_string(units) + " unit(s) of '" +
                                resource + "' which has " + std::to_string(capacity));
            }
        }
    }

    std::map<std::string, std::vector<std::size_t>> in_use;
    auto fits = [&](std::size_t i, std::size_t t) {
        for (const auto &[resource, units] : claims[i]) {
            auto &usage = in_use[resource];
            const std::size_t capacity = platform.resources.counts.at(resource);
            for (std::size_t c = t; c < t + duration[i]; ++c) {
                if (c < usage.size() && usage[c] + units > capacity) return false;
            }
        }
        return true;
    };
    auto occupy = [&](std::size_t i, std::size_t t) {
        for (const auto &[resource, units] : claims[i]) {
            auto &usage = in_use[resource];
            if (usage.size() < t + duration[i]) usage.resize(t + duration[i], 0);
            for (std::size_t c = t; c < t + duration[i]; ++c) usage[c] += units;
        }
    };

    std::vector<std::size_t> start(n, 0);
    std::vector<bool> placed(n, false);
    std::size_t remaining = n;
    for (std::size_t t = 0; remaining > 0; ++t) {
        for (auto i : order) {
            if (placed[i]) continue;
            bool ready = true;
            for (const auto &p : preds[i]) {
                if (!placed[p.other] || start[p.other] + p.weight > t) {
                    ready = false;
                    break;
                }
            }
            if (!ready || !fits(i, t)) continue;
            start[i] = t;
            placed[i] = true;
            occupy(i, t);
            --remaining;
        }
    }
    return start;
}

} // namespace

std::map<std::size_t, std::vector<std::size_t>> Schedule::bundles() const {
    std::map<std::size_t, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < entries.size(); ++i) out[entries[i].start].push_back(i);
    return out;
}

Mode parse_mode(std::string_view text) {
    std::string lower;
    for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "asap") return Mode::asap;
    if (lower == "alap") return Mode::alap;
    if (lower == "uniform") return Mode::uniform;
    throw Error("schedule", ErrorCode::Usage, "unknown schedule mode '" + std::string(text) + "'");
}

std::size_t gate_duration(const Gate &gate, const platform::Platform &platform) {
    const std::size_t d = gate.duration_cycles ? *gate.duration_cycles : platform::duration_cycles(platform, gate);
    return std::max<std::size_t>(d, 1);
}

std::size_t edge_weight(const Gate &a, const Gate &b, const platform::Platform &platform) {
    return gate_duration(a, platform) +
           platform::buffer_cycles(platform, platform::instruction_type(platform, a),
                                   platform::instruction_type(platform, b));
}

Schedule schedule_asap(std::span<const Gate> gates, const platform::Platform &platform) {
    const auto graph = build_graph(gates, platform);
    return make_schedule(gates, graph, asap_starts(graph));
}

Schedule schedule_alap(std::span<const Gate> gates, const platform::Platform &platform) {
    const auto graph = build_graph(gates, platform);
    const auto makespan = makespan_of(graph, asap_starts(graph));
    std::vector<std::size_t> start(gates.size(), 0);
    for (std::size_t i = gates.size(); i-- > 0;) start[i] = latest_start(graph, start, i, makespan);
    return make_schedule(gates, graph, start);
}

Schedule schedule_uniform_alap(std::span<const Gate> gates, const platform::Platform &platform) {
    const auto graph = build_graph(gates, platform);
    const auto asap = asap_starts(graph);
    const auto makespan = makespan_of(graph, asap);
    if (gates.empty()) return make_schedule(gates, graph, asap);
    const std::size_t target = (gates.size() + makespan - 1) / makespan;

    // Gates without slack cannot move; count them up front so the movable
    // ones balance around them.
    std::vector<std::size_t> alap(gates.size(), 0);
    for (std::size_t i = gates.size(); i-- > 0;) alap[i] = latest_start(graph, alap, i, makespan);
    std::vector<std::size_t> count(makespan, 0);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (alap[i] == asap[i]) ++count[asap[i]];
    }

    std::vector<std::size_t> start(gates.size(), 0);
    for (std::size_t i = gates.size(); i-- > 0;) {
        start[i] = asap[i];
        if (alap[i] == asap[i]) continue;
        const auto latest = latest_start(graph, start, i, makespan);
        for (std::size_t c = latest; c > asap[i]; --c) {
            if (count[c] < target) {
                start[i] = c;
                break;
            }
        }
        ++count[start[i]];
    }
    return make_schedule(gates, graph, start);
}

Schedule schedule_resource_constrained(std::span<const Gate> gates, const platform::Platform &platform,
                                       Direction direction) {
    const auto graph = build_graph(gates, platform);
    const std::size_t n = gates.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = direction == Direction::asap ? i : n - 1 - i;
    if (direction == Direction::asap) {
        return make_schedule(gates, graph, list_schedule(gates, platform, order, graph.preds, graph.duration));
    }
    // Schedule the mirrored circuit forwards, then flip time back.
    std::vector<std::vector<Dependency>> reversed(n);
    for (std::size_t b = 0; b < n; ++b) {
        for (const auto &p : graph.preds[b]) {
            const auto buffer = p.weight - graph.duration[p.other];
            reversed[p.other].push_back({b, graph.duration[b] + buffer});
        }
    }
    const auto mirrored = list_schedule(gates, platform, order, reversed, graph.duration);
    const auto span = makespan_of(graph, mirrored);
    std::vector<std::size_t> start(n);
    for (std::size_t i = 0; i < n; ++i) start[i] = span - mirrored[i] - graph.duration[i];
    return make_schedule(gates, graph, start);
}

Schedule schedule(std::span<const Gate> gates, const platform::Platform &platform, Mode mode,
                  bool resource_constrained) {
    if (resource_constrained) {
        return schedule_resource_constrained(gates, platform, mode == Mode::asap ? Direction::asap : Direction::alap);
    }
    switch (mode) {
    case Mode::asap: return schedule_asap(gates, platform);
    case Mode::alap: return schedule_alap(gates, platform);
    case Mode::uniform: return schedule_uniform_alap(gates, platform);
    }
    return schedule_asap(gates, platform);
}

std::size_t circuit_depth(std::span<const Gate> gates) {
    const std::size_t n = optimize::qubit_extent(gates);
    std::vector<std::size_t> level(n, 0);
    std::size_t depth = 0;
    for (const auto &g : gates) {
        const auto qubits = optimize::occupied_qubits(g, n);
        std::size_t l = 0;
        for (auto q : qubits) l = std::max(l, level[q]);
        for (auto q : qubits) level[q] = l + 1;
        depth = std::max(depth, l + 1);
    }
    return depth;
}

std::string validate(const Schedule &schedule, const platform::Platform &platform, bool check_resources) {
    const auto &gates = schedule.gates;
    if (schedule.entries.size() != gates.size()) return "entry count differs from gate count";
    const auto graph = build_graph(gates, platform);
    std::size_t makespan = 0;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto &e = schedule.entries[i];
        makespan = std::max(makespan, e.start + e.duration);
        for (const auto &p : graph.preds[i]) {
            if (e.start < schedule.entries[p.other].start + p.weight) {
                return "'" + gates[i].to_string() + "' starts at " + std::to_string(e.start) + " before its predecessor '" +
                       gates[p.other].to_string() + "' allows";
            }
        }
    }
    if (makespan != schedule.makespan) return "makespan mismatch";
    if (!check_resources) return {};
    std::map<std::string, std::vector<std::size_t>> usage;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto &e = schedule.entries[i];
        for (const auto &[resource, units] : claim_totals(platform, gates[i])) {
            auto &u = usage[resource];
            if (u.size() < e.start + e.duration) u.resize(e.start + e.duration, 0);
            for (std::size_t c = e.start; c < e.start + e.duration; ++c) u[c] += units;
        }
    }
    for (const auto &[resource, u] : usage) {
        const auto it = platform.resources.counts.find(resource);
        const std::size_t capacity = it == platform.resources.counts.end() ? 0 : it->second;
        for (std::size_t c = 0; c < u.size(); ++c) {
            if (u[c] > capacity) {
                return "resource '" + resource + "' over capacity at cycle " + std::to_string(c);
            }
        }
    }
    return {};
}

} // namespace qlc::schedule
