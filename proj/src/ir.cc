/** \file
 * Kernel and program containers, and dense circuit unitaries.
 */

#include <charconv>
#include <set>

#include "qlc/decompose.h"
#include "qlc/error.h"
#include "qlc/ir.h"
#include "qlc/platform.h"

namespace qlc::ir {

Gate::Gate(std::string name, std::vector<Qubit> operands, std::optional<double> angle)
    : name(std::move(name)), operands(std::move(operands)), angle(angle) {}

std::string Gate::to_string() const {
    std::string out = name;
    for (std::size_t i = 0; i < operands.size(); ++i) {
        out += i == 0 ? " " : ",";
        out += "q[" + std::to_string(operands[i]) + "]";
    }
    if (angle) {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), *angle);
        out += ", ";
        out.append(buf, res.ptr);
    }
    return out;
}

bool operator==(const Gate &a, const Gate &b) {
    if (a.name != b.name || a.operands != b.operands || a.angle != b.angle || a.kind != b.kind) {
        return false;
    }
    if (a.matrix.has_value() != b.matrix.has_value()) return false;
    if (a.matrix) {
        if (a.matrix->rows() != b.matrix->rows()) return false;
        return *a.matrix == *b.matrix;
    }
    return true;
}

Matrix circuit_unitary(std::span<const Gate> gates, std::size_t n) {
    if (n > MAX_UNITARY_QUBITS) {
        throw Error("ir", ErrorCode::TooManyQubits,
                    std::to_string(n) + " qubits exceeds the limit of " +
                        std::to_string(MAX_UNITARY_QUBITS));
    }
    const std::size_t dim = std::size_t{1} << n;
    Matrix acc = Matrix::Identity(dim, dim);
    for (const auto &gate : gates) {
        if (gate.kind == GateKind::directive) continue;
        for (auto q : gate.operands) {
            if (q >= n) {
                throw Error("ir", ErrorCode::OperandRange,
                            gate.to_string() + " outside " + std::to_string(n) + " qubits");
            }
        }
        const Matrix u = gate_unitary(gate);
        const std::size_t k = gate.operands.size();
        const std::size_t local_dim = std::size_t{1} << k;

        // Global offset of each local basis state; operand 0 is the local MSB.
        std::vector<std::size_t> offsets(local_dim, 0);
        std::size_t operand_mask = 0;
        for (std::size_t l = 0; l < local_dim; ++l) {
            for (std::size_t j = 0; j < k; ++j) {
                if ((l >> (k - 1 - j)) & 1) offsets[l] |= std::size_t{1} << gate.operands[j];
            }
        }
        for (auto q : gate.operands) operand_mask |= std::size_t{1} << q;

        Matrix rows(local_dim, dim);
        for (std::size_t base = 0; base < dim; ++base) {
            if (base & operand_mask) continue;
            for (std::size_t l = 0; l < local_dim; ++l) rows.row(l) = acc.row(base | offsets[l]);
            const Matrix updated = u * rows;
            for (std::size_t l = 0; l < local_dim; ++l) acc.row(base | offsets[l]) = updated.row(l);
        }
    }
    return acc;
}

Kernel::Kernel(std::string name, std::size_t qubit_count,
               std::shared_ptr<const platform::Platform> platform)
    : name_(std::move(name)), qubit_count_(qubit_count), platform_(std::move(platform)) {}

void Kernel::validate(Gate &gate) const {
    gate.name = canonical_gate_name(gate.name);
    const auto info = standard_gate(gate.name);

    if (gate.matrix) {
        const auto dim = static_cast<std::size_t>(gate.matrix->rows());
        if (gate.matrix->cols() != gate.matrix->rows() ||
            dim != (std::size_t{1} << gate.operands.size())) {
            throw Error("ir", ErrorCode::WrongArity,
                        "matrix of '" + gate.name + "' does not match its operand count");
        }
        if (!is_unitary(*gate.matrix, 1e-8)) {
            throw Error("ir", ErrorCode::NotUnitary, "matrix of '" + gate.name + "' is not unitary");
        }
        if (gate.kind == GateKind::standard) gate.kind = GateKind::custom;
    } else if (gate.kind == GateKind::swap_like) {
        // inserted by routing; validated like a swap
    } else if (info && !(gate.kind == GateKind::custom)) {
        if (gate.name == "display") gate.kind = GateKind::directive;
        if (info->arity != gate.operands.size()) {
            throw Error("ir", ErrorCode::WrongArity,
                        "'" + gate.name + "' takes " + std::to_string(info->arity) + " operand(s)");
        }
        if (info->parameterized && !gate.angle) {
            throw Error("ir", ErrorCode::MissingAngle, "'" + gate.name + "' needs an angle");
        }
        if (!info->parameterized && gate.angle) {
            throw Error("ir", ErrorCode::UnexpectedAngle, "'" + gate.name + "' takes no angle");
        }
    } else if (platform_ && platform::knows_gate(*platform_, gate.name)) {
        gate.kind = GateKind::custom;
    } else {
        throw Error("ir", ErrorCode::UnknownGate, "unknown gate '" + gate.name + "'");
    }

    std::set<Qubit> seen;
    for (auto q : gate.operands) {
        if (q >= qubit_count_) {
            throw Error("ir", ErrorCode::OperandRange,
                        "qubit " + std::to_string(q) + " outside kernel '" + name_ + "' of " +
                            std::to_string(qubit_count_) + " qubits");
        }
        if (!seen.insert(q).second) {
            throw Error("ir", ErrorCode::DuplicateOperand,
                        "qubit " + std::to_string(q) + " repeated in '" + gate.name + "'");
        }
    }
    if (platform_) platform::resolve(*platform_, gate);
}

Kernel &Kernel::add_gate(std::string_view name, std::vector<Qubit> operands,
                         std::optional<double> angle) {
    return add(Gate(std::string(name), std::move(operands), angle));
}

Kernel &Kernel::add(Gate gate) {
    validate(gate);
    gates_.push_back(std::move(gate));
    return *this;
}

Kernel &Kernel::unitary(std::string name, const Matrix &matrix, std::vector<Qubit> operands) {
    Gate gate(std::move(name), std::move(operands));
    gate.kind = GateKind::custom;
    gate.matrix = matrix;
    return add(std::move(gate));
}

void Kernel::set_gates(std::vector<Gate> gates) {
    gates_ = std::move(gates);
}

Kernel &Kernel::controlled(const Kernel &body, const std::vector<Qubit> &controls,
                           const std::vector<Qubit> &ancillas) {
    Kernel generated = decompose::controlled_kernel(body, controls, ancillas);
    for (const auto &gate : generated.gates()) add(gate);
    return *this;
}

Program::Program(std::string name, std::size_t qubit_count,
                 std::shared_ptr<const platform::Platform> platform)
    : name_(std::move(name)), qubit_count_(qubit_count), platform_(std::move(platform)) {}

Program &Program::add(Kernel kernel) {
    if (kernel.qubit_count() > qubit_count_) {
        throw Error("ir", ErrorCode::OperandRange,
                    "kernel '" + kernel.name() + "' uses " + std::to_string(kernel.qubit_count()) +
                        " qubits, program '" + name_ + "' has " + std::to_string(qubit_count_));
    }
    kernels_.push_back(std::move(kernel));
    return *this;
}

} // namespace qlc::ir
