#include <gtest/gtest.h>

#include <numbers>

#include "qlc/error.h"
#include "qlc/ir.h"
#include "support.h"

using namespace qlc;
using namespace qlc::ir;
using std::numbers::pi;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no qlc::Error thrown";
    return ErrorCode::Usage;
}

Matrix m2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

} // namespace

TEST(Kernel, AppendsInInsertionOrder) {
    Kernel k("k", 8);
    k.cnot(3, 5).toffoli(3, 5, 7).hadamard(0).rx(1, 0.25);
    ASSERT_EQ(k.gates().size(), 4u);
    EXPECT_EQ(k.gates()[0].name, "cnot");
    EXPECT_EQ(k.gates()[0].operands, (std::vector<Qubit>{3, 5}));
    EXPECT_EQ(k.gates()[1].name, "toffoli");
    EXPECT_EQ(k.gates()[1].operands, (std::vector<Qubit>{3, 5, 7}));
    EXPECT_EQ(k.gates()[2].name, "h");
    EXPECT_DOUBLE_EQ(*k.gates()[3].angle, 0.25);
}

TEST(Kernel, RejectsBadGates) {
    Kernel k("k", 4);
    EXPECT_EQ(code_of([&] { k.cnot(3, 3); }), ErrorCode::DuplicateOperand);
    EXPECT_EQ(code_of([&] { k.x(4); }), ErrorCode::OperandRange);
    EXPECT_EQ(code_of([&] { k.gate("foo", {0}); }), ErrorCode::UnknownGate);
    EXPECT_EQ(code_of([&] { k.gate("rz", {0}); }), ErrorCode::MissingAngle);
    EXPECT_EQ(code_of([&] { k.gate("h", {0}, 1.0); }), ErrorCode::UnexpectedAngle);
    EXPECT_EQ(code_of([&] { k.gate("cnot", {0}); }), ErrorCode::WrongArity);
    EXPECT_TRUE(k.gates().empty());
}

TEST(Kernel, TableNamesMapToGateSet) {
    Kernel k("k", 3);
    k.identity(0).hadamard(0).x(0).y(0).z(0).rx(0, 1).ry(0, 1).rz(0, 1).x90(0).y90(0).mx90(0).my90(0);
    k.s(0).sdag(0).t(0).tdag(0).cnot(0, 1).toffoli(0, 1, 2).cz(0, 1).swap(0, 1).measure(0).prepz(0).display();
    const std::vector<std::string> expected = {"i",    "h",    "x",     "y",       "z",  "rx",   "ry",      "rz",
                                               "x90",  "y90",  "mx90",  "my90",    "s",  "sdag", "t",       "tdag",
                                               "cnot", "toffoli", "cz", "swap", "measure", "prepz", "display"};
    ASSERT_EQ(k.gates().size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(k.gates()[i].name, expected[i]);
    EXPECT_EQ(k.gates().back().kind, GateKind::directive);
}

TEST(Kernel, ExplicitUnitaryGate) {
    Kernel k("k", 2);
    std::mt19937_64 rng(3);
    k.unitary("u", test::haar_unitary(4, rng), {1, 0});
    EXPECT_EQ(k.gates()[0].kind, GateKind::custom);
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 0) = 2;
    EXPECT_EQ(code_of([&] { k.unitary("bad", bad, {0}); }), ErrorCode::NotUnitary);
    EXPECT_EQ(code_of([&] { k.unitary("wide", Matrix::Identity(4, 4), {0}); }), ErrorCode::WrongArity);
}

TEST(Program, RejectsWiderKernel) {
    Program p("p", 2);
    EXPECT_EQ(code_of([&] { p.add(Kernel("k", 3)); }), ErrorCode::OperandRange);
    p.add(Kernel("a", 2)).add(Kernel("b", 1));
    ASSERT_EQ(p.kernels().size(), 2u);
    EXPECT_EQ(p.kernels()[1].name(), "b");
}

TEST(GateUnitary, KnownMatrices) {
    EXPECT_TRUE(gate_unitary(Gate("x", {0})).isApprox(m2(0, 1, 1, 0)));
    EXPECT_TRUE(gate_unitary(Gate("rz", {0}, 0.0)).isApprox(Matrix::Identity(2, 2)));
    const Matrix ry = gate_unitary(Gate("ry", {0}, pi));
    EXPECT_LT((ry - m2(0, 1, -1, 0)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((gate_unitary(Gate("y90", {0})) - ry_matrix(pi / 2)).norm(), 1e-15);
    EXPECT_LT((gate_unitary(Gate("rx180", {0})) - rx_matrix(pi)).norm(), 1e-15);
    EXPECT_LT((gate_unitary(Gate("rym90", {0})) - ry_matrix(-pi / 2)).norm(), 1e-15);
    EXPECT_EQ(code_of([] { gate_unitary(Gate("measure", {0})); }), ErrorCode::NoMatrixAvailable);
    Gate custom("foo", {0});
    custom.kind = GateKind::custom;
    EXPECT_EQ(code_of([&] { gate_unitary(custom); }), ErrorCode::NoMatrixAvailable);
}

TEST(GateUnitary, CnotFirstOperandIsControl) {
    // |10> in local order (control set) maps to |11>
    const Matrix u = gate_unitary(Gate("cnot", {0, 1}));
    EXPECT_EQ(u(3, 2), Complex(1));
    EXPECT_EQ(u(2, 3), Complex(1));
    EXPECT_EQ(u(0, 0), Complex(1));
}

TEST(GateUnitary, EveryBuiltinGateIsUnitary) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-4 * pi, 4 * pi);
    for (const char *name : {"i", "h", "x", "y", "z", "x90", "y90", "mx90", "my90", "s", "sdag", "t", "tdag",
                             "cnot", "toffoli", "cz", "swap", "rx90", "ry180", "rzm45"}) {
        const auto info = standard_gate(name);
        ASSERT_TRUE(info) << name;
        std::vector<Qubit> ops(info->arity);
        for (std::size_t i = 0; i < ops.size(); ++i) ops[i] = i;
        EXPECT_TRUE(is_unitary(gate_unitary(Gate(name, ops)), 1e-10)) << name;
    }
    for (int i = 0; i < 50; ++i) {
        for (const char *name : {"rx", "ry", "rz"}) {
            EXPECT_TRUE(is_unitary(gate_unitary(Gate(name, {0}, angle(rng))), 1e-10));
        }
    }
}

TEST(CircuitUnitary, SmallCases) {
    EXPECT_TRUE(circuit_unitary({}, 2).isApprox(Matrix::Identity(4, 4)));
    std::vector<Gate> hh{Gate("h", {0}), Gate("h", {0})};
    EXPECT_LT((circuit_unitary(hh, 1) - Matrix::Identity(2, 2)).norm(), 1e-12);

    // Bell preparation: column 0 is (|00> + |11>)/sqrt2 in little-endian order
    std::vector<Gate> bell{Gate("h", {0}), Gate("cnot", {0, 1})};
    const Matrix u = circuit_unitary(bell, 2);
    const double r = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(u(0, 0) - r), 0, 1e-12);
    EXPECT_NEAR(std::abs(u(3, 0) - r), 0, 1e-12);
    EXPECT_NEAR(std::abs(u(1, 0)), 0, 1e-12);
    EXPECT_LT((u - test::oracle_unitary(bell, 2)).norm(), 1e-12);
    EXPECT_EQ(code_of([] { circuit_unitary({}, 13); }), ErrorCode::TooManyQubits);
}

TEST(CircuitUnitary, MatchesDefinitionOracle) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const auto gates = test::random_circuit(n, 12, rng, true);
        EXPECT_LT((circuit_unitary(gates, n) - test::oracle_unitary(gates, n)).norm(), 1e-10);
    }
}

TEST(CircuitUnitary, InverseCircuitCancels) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 5;
        auto gates = test::random_circuit(n, 15, rng, true);
        std::vector<Gate> both = gates;
        for (auto it = gates.rbegin(); it != gates.rend(); ++it) both.push_back(inverse(*it));
        const auto dim = static_cast<Eigen::Index>(1) << n;
        EXPECT_LT((circuit_unitary(both, n) - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(Gate, InverseOfMeasureFails) {
    EXPECT_EQ(code_of([] { inverse(Gate("measure", {0})); }), ErrorCode::NoMatrixAvailable);
    EXPECT_EQ(inverse(Gate("rx90", {0})).name, "rxm90");
    EXPECT_EQ(inverse(Gate("rxm90", {0})).name, "rx90");
}

TEST(Gate, ToString) {
    EXPECT_EQ(Gate("cnot", {0, 1}).to_string(), "cnot q[0],q[1]");
    EXPECT_EQ(canonical_gate_name("Hadamard"), "h");
    EXPECT_EQ(canonical_gate_name("CX"), "cnot");
}
