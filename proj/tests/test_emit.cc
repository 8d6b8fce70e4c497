#include <gtest/gtest.h>

#include <json.hpp>

#include "qlc/emit.h"
#include "qlc/error.h"
#include "qlc/schedule.h"
#include "support.h"

using namespace qlc;
using namespace qlc::emit;
using ir::Qubit;

namespace {

const std::string data_dir = QLC_TEST_DATA_DIR;

schedule::Schedule one_gate_at(const Gate &g, std::size_t cycle, std::size_t duration) {
    schedule::Schedule s;
    s.gates = {g};
    s.entries = {{cycle, duration}};
    s.makespan = cycle + duration;
    return s;
}

const TimingRecord &record_for(const TimingTrace &t, std::size_t index) {
    for (const auto &r : t.records) {
        if (r.index == index) return r;
    }
    throw std::runtime_error("no record");
}

} // namespace

TEST(FormatGate, Forms) {
    EXPECT_EQ(format_gate(Gate("cnot", {0, 1})), "cnot q[0],q[1]");
    EXPECT_EQ(format_gate(Gate("h", {3})), "h q[3]");
    EXPECT_EQ(format_gate(Gate("rz", {2}, 0.5)), "rz q[2], 0.5");
    Gate display("display", {});
    display.kind = ir::GateKind::directive;
    EXPECT_EQ(format_gate(display), "display");
}

TEST(EmitCqasm, HeaderSectionsAndRanges) {
    ir::Program program("demo", 5);
    ir::Kernel init("init", 5);
    for (Qubit q = 0; q < 5; ++q) init.prepz(q);
    ir::Kernel body("body", 5);
    for (Qubit q = 0; q < 5; ++q) body.hadamard(q);
    body.cnot(0, 1).x(3).x(1);
    body.set_iterations(3);
    program.add(init).add(body);
    const auto text = emit_cqasm(program);
    EXPECT_EQ(text.rfind("version 1.0\nqubits 5\n", 0), 0u) << text;
    EXPECT_NE(text.find("\n.init\n    prepz q[0:4]\n"), std::string::npos) << text;
    EXPECT_NE(text.find("\n.body(3)\n    h q[0:4]\n    cnot q[0],q[1]\n    x q[3]\n    x q[1]\n"),
              std::string::npos)
        << text;
}

TEST(EmitCqasm, ScheduledBundles) {
    ir::Program program("demo", 4);
    ir::Kernel k("k", 4);
    for (Qubit q = 0; q < 4; ++q) k.hadamard(q);
    k.cnot(0, 1);
    program.add(k);
    const auto p = platform::Platform::simulation(4);
    const std::vector<schedule::Schedule> schedules{schedule::schedule_asap(k.gates(), p)};
    const auto text = emit_cqasm(program, schedules);
    EXPECT_NE(text.find("    { h q[0] | h q[1] | h q[2] | h q[3] }\n    cnot q[0],q[1]\n"), std::string::npos)
        << text;
}

TEST(ParseCqasm, RoundTrip) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 5;
        ir::Program program("p", n);
        ir::Kernel a("first", n), b("second", n);
        for (const auto &g : test::random_circuit(n, 12, rng, true)) a.add(g);
        for (const auto &g : test::random_circuit(n, 12, rng)) b.add(g);
        b.set_iterations(2);
        program.add(a).add(b);
        const auto doc = parse_cqasm(emit_cqasm(program));
        EXPECT_EQ(doc.version, "1.0");
        EXPECT_EQ(doc.qubits, n);
        ASSERT_EQ(doc.kernels.size(), 2u);
        EXPECT_EQ(doc.kernels[0].name, "first");
        EXPECT_FALSE(doc.kernels[0].iterations);
        EXPECT_EQ(doc.kernels[1].iterations, 2u);
        const std::vector<Gate> first(a.gates().begin(), a.gates().end());
        ASSERT_EQ(doc.kernels[0].gates.size(), first.size());
        for (std::size_t i = 0; i < first.size(); ++i) {
            EXPECT_EQ(doc.kernels[0].gates[i].name, first[i].name);
            EXPECT_EQ(doc.kernels[0].gates[i].operands, first[i].operands);
        }
        // angles survive to full precision
        EXPECT_LT(test::phase_distance(test::oracle_unitary(doc.kernels[0].gates, n), test::oracle_unitary(first, n)),
                  1e-12);
    }
}

TEST(ParseCqasm, BundlesRangesAndStatements) {
    const auto doc = parse_cqasm("# comment\nversion 1.0\nqubits 3\nx q[0]\n.k(4)\n  { h q[0] | h q[1] }\n"
                                 "  h q[0:2]\n  display\n");
    ASSERT_EQ(doc.kernels.size(), 2u);
    EXPECT_EQ(doc.kernels[0].name, "main");
    const auto &k = doc.kernels[1];
    EXPECT_EQ(k.iterations, 4u);
    ASSERT_EQ(k.gates.size(), 6u);
    // statements are numbered across the whole document
    EXPECT_EQ(k.statement, (std::vector<std::size_t>{1, 1, 2, 2, 2, 3}));
    EXPECT_EQ(k.gates[4].operands, (std::vector<Qubit>{2}));
}

TEST(ParseCqasm, ErrorsCarryLine) {
    for (const char *bad : {"version 1.0\nqubits 2\nh q[1:0]\n", "version 1.0\nqubits 2\n{ h q[0] | h q[1]\n",
                            "version 1.0\nqubits 2\nh q[x]\n"}) {
        try {
            parse_cqasm(bad);
            ADD_FAILURE() << bad;
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::ParseError);
            EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
        }
    }
}

TEST(Timing, LatencyCompensation) {
    const auto p = platform::load_platform_file(data_dir + "/qumis_config.json");
    const std::vector<std::string> names{"k"};
    const std::vector<schedule::Schedule> one{one_gate_at(Gate("rx180", {1}), 4, 8)};
    const auto t = build_timing_trace(one, names, p);
    ASSERT_EQ(t.records.size(), 1u);
    EXPECT_EQ(t.records[0].nominal_ns, 20);
    EXPECT_EQ(t.records[0].compensated_ns, 0);
    EXPECT_EQ(t.records[0].duration_ns, 40);
    EXPECT_TRUE(t.diagnostics.empty());

    // latencies 20 and 10 at the same nominal start end up 10 ns apart
    schedule::Schedule both;
    both.gates = {Gate("rx180", {1}), Gate("rx180", {0})};
    both.entries = {{4, 8}, {4, 8}};
    both.makespan = 12;
    const auto pair = build_timing_trace(std::vector<schedule::Schedule>{both}, names, p);
    EXPECT_EQ(record_for(pair, 1).compensated_ns - record_for(pair, 0).compensated_ns, 10);
    EXPECT_EQ(pair.records[0].index, 0u);
}

TEST(Timing, NegativeStartsShiftAndKernelsFollowEachOther) {
    const auto p = platform::load_platform_file(data_dir + "/qumis_config.json");
    const std::vector<std::string> names{"a", "b"};
    const std::vector<schedule::Schedule> two{one_gate_at(Gate("rx180", {1}), 0, 8),
                                              one_gate_at(Gate("rx180", {0}), 1, 8)};
    const auto t = build_timing_trace(two, names, p);
    ASSERT_EQ(t.records.size(), 2u);
    // nominal: 0 and (8 + 1) * 5 = 45; compensated: -20 and 35, shifted by 20
    EXPECT_EQ(record_for(t, 0).nominal_ns, 0);
    EXPECT_EQ(record_for(t, 1).nominal_ns, 45);
    EXPECT_EQ(record_for(t, 0).compensated_ns, 0);
    EXPECT_EQ(record_for(t, 1).compensated_ns, 55);
    EXPECT_EQ(record_for(t, 1).kernel_name, "b");
}

TEST(Timing, InvertedOrderIsReported) {
    const auto p = platform::load_platform_file(data_dir + "/qumis_config.json");
    // a latency-0 gate on q1 one cycle before rx180 q1 (latency 20)
    schedule::Schedule s;
    s.gates = {Gate("x", {1}), Gate("rx180", {1})};
    s.entries = {{0, 1}, {1, 8}};
    s.makespan = 9;
    const auto t = build_timing_trace(std::vector<schedule::Schedule>{s}, std::vector<std::string>{"k"}, p);
    ASSERT_EQ(t.diagnostics.size(), 1u);
    EXPECT_NE(t.diagnostics[0].find("q[1]"), std::string::npos);
    EXPECT_EQ(t.records[0].instruction, "rx180 q[1]");
}

TEST(Timing, Serialization) {
    const auto p = platform::load_platform_file(data_dir + "/qumis_config.json");
    const std::vector<schedule::Schedule> one{one_gate_at(Gate("rx180", {1}), 4, 8)};
    const auto t = build_timing_trace(one, std::vector<std::string>{"k"}, p);
    EXPECT_EQ(to_tsv(t), "index\tkernel\tgate\tinstruction\ttype\tqubits\tnominal_ns\tcompensated_ns\tduration_ns\n"
                         "0\tk\t0\trx180 q[1]\tmw\t1\t20\t0\t40\n");
    const auto j = nlohmann::json::parse(to_json(t));
    EXPECT_EQ(j["records"][0]["compensated_ns"], 0);
    EXPECT_EQ(j["records"][0]["nominal_ns"], 20);
    EXPECT_TRUE(j["diagnostics"].empty());
}
