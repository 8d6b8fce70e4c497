/** \file
 * Toffoli, multi-controlled and controlled-kernel decompositions, ZYZ angles
 * and the gate-level decomposition pass.
 */

#include <algorithm>
#include <cmath>
#include <set>

#include "qlc/decompose.h"
#include "qlc/error.h"
#include "qlc/platform.h"

namespace qlc::decompose {

namespace {

Gate make(std::string name, std::vector<Qubit> operands, std::optional<double> angle = std::nullopt) {
    return Gate(std::move(name), std::move(operands), angle);
}

void append(std::vector<Gate> &out, const std::vector<Gate> &more) {
    out.insert(out.end(), more.begin(), more.end());
}

void check_disjoint(const std::vector<std::vector<Qubit>> &groups) {
    std::set<Qubit> seen;
    for (const auto &group : groups) {
        for (auto q : group) {
            if (!seen.insert(q).second) {
                throw Error("decompose", ErrorCode::QubitClash, "qubit " + std::to_string(q) + " used twice");
            }
        }
    }
}

// AND of `controls` (at least two) accumulated into the ancillas; the result
// lands in ancillas[controls.size() - 2].
std::vector<Gate> and_ladder(const std::vector<Qubit> &controls, const std::vector<Qubit> &ancillas) {
    std::vector<Gate> out;
    out.push_back(make("toffoli", {controls[0], controls[1], ancillas[0]}));
    for (std::size_t i = 2; i < controls.size(); ++i) {
        out.push_back(make("toffoli", {controls[i], ancillas[i - 2], ancillas[i - 1]}));
    }
    return out;
}

std::vector<Gate> reversed(std::vector<Gate> gates) {
    std::reverse(gates.begin(), gates.end());
    return gates;
}

// Controlled-U with a single control from U = e^{ia} Rz(b) Ry(g) Rz(d):
// U = e^{ia} A X B X C with A = Rz(b)Ry(g/2), B = Ry(-g/2)Rz(-(d+b)/2),
// C = Rz((d-b)/2); the phase becomes Rz(a) on the control.
std::vector<Gate> single_controlled_u(const Matrix &u, Qubit control, Qubit target) {
    const auto a = zyz_decompose(u);
    return {
        make("rz", {target}, (a.delta - a.beta) / 2),
        make("cnot", {control, target}),
        make("rz", {target}, -(a.delta + a.beta) / 2),
        make("ry", {target}, -a.gamma / 2),
        make("cnot", {control, target}),
        make("ry", {target}, a.gamma / 2),
        make("rz", {target}, a.beta),
        make("rz", {control}, a.alpha),
    };
}

std::vector<Gate> multi_controlled_x(const std::vector<Qubit> &controls, Qubit target,
                                     const std::vector<Qubit> &ancillas) {
    const auto n = controls.size();
    if (n == 0) return {make("x", {target})};
    if (n == 1) return {make("cnot", {controls[0], target})};
    if (n == 2) return {make("toffoli", {controls[0], controls[1], target})};
    std::vector<Qubit> head(controls.begin(), controls.end() - 1);
    auto ladder = and_ladder(head, ancillas);
    std::vector<Gate> out = ladder;
    out.push_back(make("toffoli", {controls.back(), ancillas[n - 3], target}));
    append(out, reversed(ladder));
    return out;
}

std::vector<Gate> multi_controlled_u(const Matrix &u, const std::vector<Qubit> &controls, Qubit target,
                                     const std::vector<Qubit> &ancillas) {
    const auto n = controls.size();
    if (n == 1) return single_controlled_u(u, controls[0], target);
    auto ladder = and_ladder(controls, ancillas);
    std::vector<Gate> out = ladder;
    append(out, single_controlled_u(u, ancillas[n - 2], target));
    append(out, reversed(ladder));
    return out;
}

std::vector<Qubit> with(std::vector<Qubit> controls, std::initializer_list<Qubit> more) {
    controls.insert(controls.end(), more);
    return controls;
}

void require_ancillas(const Gate &gate, std::size_t controls, std::size_t available) {
    const auto needed = required_ancillas(gate, controls);
    if (available < needed) {
        throw Error("decompose", ErrorCode::InsufficientAncillas,
                    "'" + gate.name + "' with " + std::to_string(controls) + " controls needs " +
                        std::to_string(needed) + " ancilla(s), got " + std::to_string(available));
    }
}

std::vector<Gate> controlled_gate(const Gate &gate, const std::vector<Qubit> &controls,
                                  const std::vector<Qubit> &ancillas) {
    const auto &n = gate.name;
    const auto &ops = gate.operands;
    if (controls.empty()) return {gate};
    if (gate.kind == ir::GateKind::directive) return {gate};
    if (n == "i" && !gate.matrix) return {};
    if (!gate.matrix && gate.kind != ir::GateKind::custom) {
        if (n == "x") {
            require_ancillas(make("x", {}), controls.size(), ancillas.size());
            return multi_controlled_x(controls, ops[0], ancillas);
        }
        if (n == "cnot" || n == "toffoli") {
            auto all = controls;
            all.insert(all.end(), ops.begin(), ops.end() - 1);
            require_ancillas(make("x", {}), all.size(), ancillas.size());
            return multi_controlled_x(all, ops.back(), ancillas);
        }
        if (n == "z" && controls.size() == 1) return {make("cz", {controls[0], ops[0]})};
        if (n == "cz") {
            auto all = with(controls, {ops[0]});
            require_ancillas(make("x", {}), all.size(), ancillas.size());
            std::vector<Gate> out{make("h", {ops[1]})};
            append(out, multi_controlled_x(all, ops[1], ancillas));
            out.push_back(make("h", {ops[1]}));
            return out;
        }
        if (n == "swap") {
            std::vector<Gate> out;
            for (auto [a, b] : {std::pair{ops[0], ops[1]}, std::pair{ops[1], ops[0]}, std::pair{ops[0], ops[1]}}) {
                auto all = with(controls, {a});
                require_ancillas(make("x", {}), all.size(), ancillas.size());
                append(out, multi_controlled_x(all, b, ancillas));
            }
            return out;
        }
    }
    if (!ir::has_matrix(gate)) {
        throw Error("decompose", ErrorCode::UnsupportedGate, "no controlled form for '" + gate.to_string() + "'");
    }
    if (ops.size() == 1) {
        require_ancillas(gate, controls.size(), ancillas.size());
        return multi_controlled_u(ir::gate_unitary(gate), controls, ops[0], ancillas);
    }
    // Wider gates: synthesize on local qubits (ops[0] is the high bit), control
    // every elementary gate, then undo the synthesis' global phase, which
    // turns into a relative phase once controlled.
    const Matrix u = ir::gate_unitary(gate);
    const auto k = ops.size();
    std::vector<Qubit> local(k);
    for (std::size_t j = 0; j < k; ++j) local[j] = k - 1 - j;
    auto synthesized = qsd_decompose(u, local);
    const double phase = std::arg((u.adjoint() * ir::circuit_unitary(synthesized, k)).trace());
    std::vector<Gate> out;
    for (auto g : synthesized) {
        for (auto &q : g.operands) q = ops[k - 1 - q];
        append(out, controlled_gate(g, controls, ancillas));
    }
    Gate correction("phase", {ops[0]});
    correction.kind = ir::GateKind::custom;
    correction.matrix = std::polar(1.0, -phase) * Matrix::Identity(2, 2);
    append(out, controlled_gate(correction, controls, ancillas));
    return out;
}

} // namespace

std::vector<Gate> decompose_toffoli(const Gate &gate) {
    if (gate.operands.size() != 3) {
        throw Error("decompose", ErrorCode::WrongArity,
                    "toffoli needs 3 operands, got " + std::to_string(gate.operands.size()));
    }
    const Qubit a = gate.operands[0], b = gate.operands[1], c = gate.operands[2];
    return {
        make("h", {c}),       make("cnot", {b, c}), make("tdag", {c}),    make("cnot", {a, c}),
        make("t", {c}),       make("cnot", {b, c}), make("tdag", {c}),    make("cnot", {a, c}),
        make("t", {b}),       make("t", {c}),       make("h", {c}),       make("cnot", {a, b}),
        make("t", {a}),       make("tdag", {b}),    make("cnot", {a, b}),
    };
}

std::size_t required_ancillas(const Gate &target_gate, std::size_t controls) {
    if (target_gate.name == "x" && !target_gate.matrix) return controls <= 2 ? 0 : controls - 2;
    return controls <= 1 ? 0 : controls - 1;
}

std::vector<Gate> decompose_multi_controlled(const Gate &target_gate, const std::vector<Qubit> &controls,
                                             const std::vector<Qubit> &ancillas) {
    check_disjoint({controls, ancillas, target_gate.operands});
    return controlled_gate(target_gate, controls, ancillas);
}

Kernel controlled_kernel(const Kernel &kernel, const std::vector<Qubit> &controls,
                         const std::vector<Qubit> &ancillas) {
    std::set<Qubit> used;
    for (const auto &g : kernel.gates()) used.insert(g.operands.begin(), g.operands.end());
    check_disjoint({controls, ancillas, std::vector<Qubit>(used.begin(), used.end())});

    std::size_t qubits = kernel.qubit_count();
    for (auto q : controls) qubits = std::max(qubits, q + 1);
    for (auto q : ancillas) qubits = std::max(qubits, q + 1);

    Kernel out(kernel.name() + "_controlled", qubits, kernel.platform());
    for (const auto &g : kernel.gates()) {
        for (auto &c : controlled_gate(g, controls, ancillas)) out.add(std::move(c));
    }
    return out;
}

ZYZAngles zyz_decompose(const Matrix &u) {
    if (u.rows() != 2 || u.cols() != 2 || !ir::is_unitary(u, 1e-10)) {
        throw Error("decompose", ErrorCode::NotUnitary, "zyz needs a 2x2 unitary");
    }
    ZYZAngles out;
    const ir::Complex det = u.determinant();
    out.alpha = std::arg(det) / 2;
    const Matrix v = u * std::polar(1.0, -out.alpha);
    const ir::Complex a = v(0, 0), b = v(0, 1);
    out.gamma = 2 * std::atan2(std::abs(b), std::abs(a));
    constexpr double degenerate = 1e-14;
    if (std::abs(b) < degenerate) {
        out.beta = -2 * std::arg(a);
        out.delta = 0;
    } else if (std::abs(a) < degenerate) {
        out.beta = -2 * std::arg(b);
        out.delta = 0;
    } else {
        const double sum = -2 * std::arg(a);
        const double diff = -2 * std::arg(b);
        out.beta = (sum + diff) / 2;
        out.delta = (sum - diff) / 2;
    }
    return out;
}

Matrix zyz_matrix(const ZYZAngles &a) {
    return std::polar(1.0, a.alpha) * ir::rz_matrix(a.beta) * ir::ry_matrix(a.gamma) * ir::rz_matrix(a.delta);
}

std::vector<Gate> decompose_gate(const Gate &gate, const platform::Platform &platform) {
    struct Lowering {
        const platform::Platform &platform;
        std::size_t depth = 0;

        void run(const Gate &gate, std::vector<Gate> &out) {
            if (++depth > 64) {
                throw Error("decompose", ErrorCode::DecompositionCycle,
                            "lowering of '" + gate.to_string() + "' does not terminate");
            }
            if (platform::find_decomposition(platform, gate)) {
                for (const auto &g : platform::apply_custom_decomposition(platform, gate)) builtin(g, out);
            } else {
                builtin(gate, out);
            }
            --depth;
        }

        void builtin(const Gate &gate, std::vector<Gate> &out) {
            std::vector<Gate> lowered;
            const bool native = platform::find_instruction(platform, gate) != nullptr;
            if (gate.kind == ir::GateKind::directive || native) {
                out.push_back(gate);
                return;
            }
            if (gate.name == "toffoli" && !gate.matrix) {
                lowered = decompose_toffoli(gate);
            } else if (gate.matrix) {
                lowered = qsd_decompose(*gate.matrix, gate.operands);
            } else {
                out.push_back(gate);
                return;
            }
            for (auto &g : lowered) {
                platform::resolve(platform, g);
                run(g, out);
            }
        }
    };
    std::vector<Gate> out;
    Lowering lowering{platform};
    lowering.run(gate, out);
    return out;
}

std::vector<Gate> decompose_circuit(std::span<const Gate> gates, const platform::Platform &platform) {
    std::vector<Gate> out;
    for (const auto &g : gates) append(out, decompose_gate(g, platform));
    return out;
}

} // namespace qlc::decompose
