#include <gtest/gtest.h>

#include "qlc/error.h"
#include "qlc/platform.h"
#include "qlc/schedule.h"
#include "support.h"

using namespace qlc;
using namespace qlc::schedule;
using platform::Platform;

namespace {

const std::string data_dir = QLC_TEST_DATA_DIR;

// 10 ns cycles; one-qubit gates take 2 cycles, two-qubit gates 4.
Platform two_cycle_platform(const std::string &resources = "") {
    std::string doc = R"({"eqasm_compiler": "c", "hardware_settings": {"qubit_number": 4, "cycle_time": 10},
        "instructions": {"h": {"duration": 20, "type": "mw"}, "x": {"duration": 20, "type": "mw"},
                         "y": {"duration": 20, "type": "mw"}, "z": {"duration": 20, "type": "mw"},
                         "cnot": {"duration": 40, "type": "flux"}})";
    if (!resources.empty()) doc += R"(, "resources": )" + resources;
    doc += "}";
    return platform::load_platform(doc);
}

std::vector<std::size_t> starts(const Schedule &s) {
    std::vector<std::size_t> out;
    for (const auto &e : s.entries) out.push_back(e.start);
    return out;
}

/// Longest-path starts computed by repeated relaxation over all gate pairs.
std::vector<std::size_t> relaxed_asap(const std::vector<ir::Gate> &gates, const Platform &p) {
    std::vector<std::size_t> start(gates.size(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t b = 0; b < gates.size(); ++b) {
            for (std::size_t a = 0; a < b; ++a) {
                bool shared = false;
                for (auto q : gates[a].operands) {
                    shared = shared || std::count(gates[b].operands.begin(), gates[b].operands.end(), q);
                }
                if (!shared) continue;
                const auto need = start[a] + edge_weight(gates[a], gates[b], p);
                if (start[b] < need) {
                    start[b] = need;
                    changed = true;
                }
            }
        }
    }
    return start;
}

std::size_t max_bundle(const Schedule &s) {
    std::size_t m = 0;
    for (const auto &[cycle, members] : s.bundles()) m = std::max(m, members.size());
    return m;
}

} // namespace

TEST(Asap, HandExamples) {
    const auto p = two_cycle_platform();
    const auto s = schedule_asap(std::vector<ir::Gate>{ir::Gate("h", {0}), ir::Gate("cnot", {0, 1})}, p);
    EXPECT_EQ(starts(s), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(s.makespan, 6u);

    const auto indep = schedule_asap(std::vector<ir::Gate>{ir::Gate("x", {0}), ir::Gate("y", {1})}, p);
    EXPECT_EQ(starts(indep), (std::vector<std::size_t>{0, 0}));
    EXPECT_EQ(indep.makespan, 2u);
    EXPECT_EQ(indep.bundles().at(0).size(), 2u);

    const auto empty = schedule_asap({}, p);
    EXPECT_EQ(empty.makespan, 0u);
    EXPECT_TRUE(empty.entries.empty());
}

TEST(Asap, UnknownGatesTakeOneCycle) {
    const auto sim = Platform::simulation(3);
    const auto s = schedule_asap(std::vector<ir::Gate>{ir::Gate("t", {0}), ir::Gate("t", {0}), ir::Gate("h", {1})}, sim);
    EXPECT_EQ(starts(s), (std::vector<std::size_t>{0, 1, 0}));
    EXPECT_EQ(s.makespan, 2u);
}

TEST(Asap, BuffersWidenSameQubitGaps) {
    const auto p = platform::load_platform_file(data_dir + "/transmon.json");
    // x (1 cycle, mw) then cnot (flux): 1 + mw_flux buffer of 1 cycle
    const auto s = schedule_asap(std::vector<ir::Gate>{ir::Gate("x", {0}), ir::Gate("cnot", {0, 2}),
                                                       ir::Gate("x", {2}), ir::Gate("x", {1})},
                                 p);
    EXPECT_EQ(starts(s), (std::vector<std::size_t>{0, 2, 5, 0}));
}

TEST(Alap, HandExamples) {
    const auto p = two_cycle_platform();
    // y on q1 has slack until the cnot needs q1
    const std::vector<ir::Gate> gates{ir::Gate("x", {0}), ir::Gate("x", {0}), ir::Gate("y", {1}),
                                      ir::Gate("cnot", {0, 1})};
    const auto asap = schedule_asap(gates, p);
    const auto alap = schedule_alap(gates, p);
    EXPECT_EQ(starts(asap), (std::vector<std::size_t>{0, 2, 0, 4}));
    EXPECT_EQ(starts(alap), (std::vector<std::size_t>{0, 2, 2, 4}));
    EXPECT_EQ(alap.makespan, asap.makespan);

    const std::vector<ir::Gate> chain{ir::Gate("x", {0}), ir::Gate("h", {0}), ir::Gate("cnot", {0, 1})};
    EXPECT_EQ(starts(schedule_alap(chain, p)), starts(schedule_asap(chain, p)));

    const auto two = schedule_alap(std::vector<ir::Gate>{ir::Gate("x", {0}), ir::Gate("y", {1})}, p);
    EXPECT_EQ(starts(two), (std::vector<std::size_t>{0, 0}));
}

TEST(Uniform, SpreadsTheLastCycle) {
    const auto p = Platform::simulation(6);
    // a four-gate chain on q0 sets the makespan; four single gates on q1..q4
    // would all sit in the last cycle under plain ALAP.
    std::vector<ir::Gate> gates;
    for (int i = 0; i < 4; ++i) gates.emplace_back("x", std::vector<ir::Qubit>{0});
    for (ir::Qubit q = 1; q <= 4; ++q) gates.emplace_back("h", std::vector<ir::Qubit>{q});
    const auto alap = schedule_alap(gates, p);
    const auto uniform = schedule_uniform_alap(gates, p);
    EXPECT_EQ(alap.bundles().at(3).size(), 5u);
    EXPECT_EQ(uniform.makespan, alap.makespan);
    // target is ceil(8 / 4) = 2 gates per cycle
    for (const auto &[cycle, members] : uniform.bundles()) EXPECT_LE(members.size(), 2u) << "cycle " << cycle;
    EXPECT_LE(max_bundle(uniform), max_bundle(alap));
    EXPECT_EQ(validate(uniform, p, false), "");
}

TEST(Uniform, ChainAndSingleGate) {
    const auto p = two_cycle_platform();
    const std::vector<ir::Gate> chain{ir::Gate("x", {0}), ir::Gate("h", {0}), ir::Gate("cnot", {0, 1})};
    EXPECT_EQ(starts(schedule_uniform_alap(chain, p)), starts(schedule_asap(chain, p)));
    EXPECT_EQ(starts(schedule_uniform_alap(std::vector<ir::Gate>{ir::Gate("x", {0})}, p)),
              (std::vector<std::size_t>{0}));
    EXPECT_EQ(schedule_uniform_alap({}, p).makespan, 0u);
}

TEST(ResourceConstrained, HandExamples) {
    const auto one = two_cycle_platform(R"({"awg": {"count": 1, "usage": [{"match": "mw"}]}})");
    const std::vector<ir::Gate> gates{ir::Gate("x", {0}), ir::Gate("y", {1})};
    EXPECT_EQ(starts(schedule_resource_constrained(gates, one, Direction::asap)), (std::vector<std::size_t>{0, 2}));
    const auto alap = schedule_resource_constrained(gates, one, Direction::alap);
    EXPECT_EQ(validate(alap, one, true), "");
    EXPECT_EQ(alap.makespan, 4u);

    const auto two = two_cycle_platform(R"({"awg": {"count": 2, "usage": [{"match": "mw"}]}})");
    EXPECT_EQ(starts(schedule_resource_constrained(gates, two, Direction::asap)), (std::vector<std::size_t>{0, 0}));

    const auto greedy = two_cycle_platform(R"({"awg": {"count": 2, "usage": [{"match": "mw", "units": 3}]}})");
    try {
        schedule_resource_constrained(gates, greedy, Direction::asap);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::UnschedulableGate);
    }
}

TEST(ResourceConstrained, UniformRunsAsAlap) {
    const auto p = two_cycle_platform(R"({"awg": {"count": 1, "usage": [{"match": "mw"}]}})");
    const std::vector<ir::Gate> gates{ir::Gate("x", {0}), ir::Gate("y", {1}), ir::Gate("cnot", {0, 1})};
    EXPECT_EQ(starts(qlc::schedule::schedule(gates, p, Mode::uniform, true)),
              starts(schedule_resource_constrained(gates, p, Direction::alap)));
}

TEST(Schedulers, RandomCircuitLaws) {
    std::mt19937_64 rng(123);
    const auto transmon = platform::load_platform_file(data_dir + "/transmon.json");
    const auto sim = Platform::simulation(8);
    for (int trial = 0; trial < 300; ++trial) {
        const bool timed = trial % 2 == 0;
        const std::size_t n = timed ? 1 + trial % 5 : 1 + trial % 8;
        const auto &p = timed ? transmon : sim;
        const auto gates = test::random_resource_circuit(n, trial % 41, rng);
        const auto asap = schedule_asap(gates, p);
        const auto alap = schedule_alap(gates, p);
        const auto uniform = schedule_uniform_alap(gates, p);
        EXPECT_EQ(starts(asap), relaxed_asap(gates, p));
        EXPECT_EQ(asap.makespan, alap.makespan);
        EXPECT_EQ(uniform.makespan, asap.makespan);
        for (std::size_t i = 0; i < gates.size(); ++i) {
            EXPECT_LE(asap.entries[i].start, alap.entries[i].start);
            EXPECT_LE(asap.entries[i].start, uniform.entries[i].start);
            EXPECT_LE(uniform.entries[i].start, alap.entries[i].start);
        }
        EXPECT_EQ(validate(asap, p, false), "");
        EXPECT_EQ(validate(alap, p, false), "");
        EXPECT_EQ(validate(uniform, p, false), "");
        // bundles partition the gates
        std::size_t members = 0;
        for (const auto &[cycle, idx] : asap.bundles()) members += idx.size();
        EXPECT_EQ(members, gates.size());
        // determinism
        EXPECT_EQ(starts(schedule_alap(gates, p)), starts(alap));
    }
}

TEST(Schedulers, ResourceAuditOnRandomModels) {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const auto fixture = test::random_resource_fixture(n, rng);
        const auto p = platform::load_platform(fixture.document);
        const auto gates = test::random_resource_circuit(n, 1 + trial % 30, rng);
        if (fixture.oversubscribed(gates)) {
            try {
                schedule_resource_constrained(gates, p, Direction::asap);
                ADD_FAILURE() << "expected UnschedulableGate";
            } catch (const Error &e) {
                EXPECT_EQ(e.code(), ErrorCode::UnschedulableGate);
            }
            continue;
        }
        for (auto direction : {Direction::asap, Direction::alap}) {
            const auto s = schedule_resource_constrained(gates, p, direction);
            EXPECT_EQ(validate(s, p, false), "");
            std::map<std::string, std::map<std::size_t, std::size_t>> usage;
            for (std::size_t i = 0; i < gates.size(); ++i) {
                EXPECT_EQ(s.entries[i].duration, fixture.duration_of.at(gates[i].name));
                for (const auto &[resource, units] : fixture.claims(gates[i])) {
                    for (std::size_t c = 0; c < s.entries[i].duration; ++c) usage[resource][s.entries[i].start + c] += units;
                }
            }
            for (const auto &[resource, per_cycle] : usage) {
                for (const auto &[cycle, used] : per_cycle) EXPECT_LE(used, fixture.counts.at(resource));
            }
        }
    }
}

TEST(Schedulers, ModeParsing) {
    EXPECT_EQ(parse_mode("ALAP"), Mode::alap);
    EXPECT_EQ(parse_mode("asap"), Mode::asap);
    EXPECT_EQ(parse_mode("Uniform"), Mode::uniform);
    EXPECT_THROW(parse_mode("fastest"), Error);
}

TEST(Schedulers, DepthIgnoresDurations) {
    EXPECT_EQ(circuit_depth(std::vector<ir::Gate>{ir::Gate("h", {0}), ir::Gate("cnot", {0, 1}), ir::Gate("x", {2})}), 2u);
    EXPECT_EQ(circuit_depth({}), 0u);
}
