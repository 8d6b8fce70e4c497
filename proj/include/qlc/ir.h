/** \file
 * Circuit intermediate representation: gates, kernels and programs.
 *
 * Qubit indices are program-global. Matrices use the following bit order:
 * inside a gate's local matrix, the first operand is the most significant
 * bit; in a full n-qubit operator, qubit q is bit q of the basis index
 * (little-endian). Rotations follow
 *
 *     Ry(t) = [[cos t/2,  sin t/2], [-sin t/2, cos t/2]]
 *     Rz(t) = diag(exp(-i t/2), exp(i t/2))
 *     Rx(t) = [[cos t/2, -i sin t/2], [-i sin t/2, cos t/2]]
 *
 * Global phase is not tracked anywhere; equivalence checks are phase
 * invariant.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qlc {

namespace platform {
struct Platform;
}

namespace ir {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Qubit = std::size_t;

/// Largest qubit count accepted by circuit_unitary.
inline constexpr std::size_t MAX_UNITARY_QUBITS = 12;

enum class GateKind {
    standard,   ///< member of the built-in gate set
    custom,     ///< defined by the platform or by an explicit matrix
    swap_like,  ///< swap inserted by routing
    directive,  ///< non-quantum statement such as "display"
};

struct Gate {
    std::string name;
    std::vector<Qubit> operands;
    std::optional<double> angle;
    std::optional<std::size_t> duration_cycles;
    GateKind kind = GateKind::standard;
    std::optional<Matrix> matrix;
    bool disable_optimization = false;

    Gate() = default;
    Gate(std::string name, std::vector<Qubit> operands, std::optional<double> angle = std::nullopt);

    /// "cnot q[0],q[1]" style rendering, used in diagnostics and traces.
    std::string to_string() const;
};

bool operator==(const Gate &a, const Gate &b);

/// Static description of a built-in gate.
struct StandardGate {
    std::string name;
    std::size_t arity;
    bool parameterized;
    bool unitary;
};

/// Maps API spellings ("hadamard", "identity", upper case) onto IR names.
std::string canonical_gate_name(std::string_view name);

/// Looks up a built-in gate, including the fixed-angle rotation family
/// rx180/ry90/rxm90/... used by hardware configurations.
std::optional<StandardGate> standard_gate(std::string_view name);

Matrix rx_matrix(double theta);
Matrix ry_matrix(double theta);
Matrix rz_matrix(double theta);

/// True when the gate denotes a unitary operation with a known matrix.
bool has_matrix(const Gate &gate);

/// Local 2^k x 2^k matrix of a k-operand gate. Throws NoMatrixAvailable.
Matrix gate_unitary(const Gate &gate);

/// The gate that undoes `gate`. Throws NoMatrixAvailable for measure/prepz.
Gate inverse(const Gate &gate);

/// Product of the gate unitaries on n qubits; later gates multiply on the
/// left. Directives are skipped. Throws TooManyQubits above 12 qubits.
Matrix circuit_unitary(std::span<const Gate> gates, std::size_t n);

bool is_unitary(const Matrix &m, double tolerance);

/// Ordered block of gates. Gate names are checked against the built-in set
/// and, when a platform is attached, against its instructions and
/// decomposition rules.
class Kernel {
public:
    Kernel(std::string name, std::size_t qubit_count,
           std::shared_ptr<const platform::Platform> platform = nullptr);

    const std::string &name() const noexcept { return name_; }
    std::size_t qubit_count() const noexcept { return qubit_count_; }
    std::span<const Gate> gates() const noexcept { return gates_; }
    const std::shared_ptr<const platform::Platform> &platform() const noexcept { return platform_; }

    /// Repeat count emitted as ".name(k)"; unset means a plain section.
    std::optional<std::size_t> iterations() const noexcept { return iterations_; }
    void set_iterations(std::size_t count) { iterations_ = count; }

    Kernel &add_gate(std::string_view name, std::vector<Qubit> operands,
                     std::optional<double> angle = std::nullopt);
    /// Appends an already constructed gate after validating it.
    Kernel &add(Gate gate);
    /// Appends a gate given by an explicit unitary matrix.
    Kernel &unitary(std::string name, const Matrix &matrix, std::vector<Qubit> operands);

    /// Replaces the gate list wholesale; used by compiler passes.
    void set_gates(std::vector<Gate> gates);

    Kernel &identity(Qubit q) { return add_gate("i", {q}); }
    Kernel &hadamard(Qubit q) { return add_gate("h", {q}); }
    Kernel &x(Qubit q) { return add_gate("x", {q}); }
    Kernel &y(Qubit q) { return add_gate("y", {q}); }
    Kernel &z(Qubit q) { return add_gate("z", {q}); }
    Kernel &rx(Qubit q, double angle) { return add_gate("rx", {q}, angle); }
    Kernel &ry(Qubit q, double angle) { return add_gate("ry", {q}, angle); }
    Kernel &rz(Qubit q, double angle) { return add_gate("rz", {q}, angle); }
    Kernel &x90(Qubit q) { return add_gate("x90", {q}); }
    Kernel &y90(Qubit q) { return add_gate("y90", {q}); }
    Kernel &mx90(Qubit q) { return add_gate("mx90", {q}); }
    Kernel &my90(Qubit q) { return add_gate("my90", {q}); }
    Kernel &s(Qubit q) { return add_gate("s", {q}); }
    Kernel &sdag(Qubit q) { return add_gate("sdag", {q}); }
    Kernel &t(Qubit q) { return add_gate("t", {q}); }
    Kernel &tdag(Qubit q) { return add_gate("tdag", {q}); }
    Kernel &cnot(Qubit control, Qubit target) { return add_gate("cnot", {control, target}); }
    Kernel &toffoli(Qubit c0, Qubit c1, Qubit target) { return add_gate("toffoli", {c0, c1, target}); }
    Kernel &cz(Qubit a, Qubit b) { return add_gate("cz", {a, b}); }
    Kernel &swap(Qubit a, Qubit b) { return add_gate("swap", {a, b}); }
    Kernel &measure(Qubit q) { return add_gate("measure", {q}); }
    Kernel &prepz(Qubit q) { return add_gate("prepz", {q}); }
    Kernel &display() { return add_gate("display", {}); }
    Kernel &gate(std::string_view name, std::vector<Qubit> operands,
                 std::optional<double> angle = std::nullopt) {
        return add_gate(name, std::move(operands), angle);
    }

    /// Appends the controlled version of `body`; see decompose::controlled_kernel.
    Kernel &controlled(const Kernel &body, const std::vector<Qubit> &controls,
                       const std::vector<Qubit> &ancillas);

private:
    void validate(Gate &gate) const;

    std::string name_;
    std::size_t qubit_count_;
    std::shared_ptr<const platform::Platform> platform_;
    std::vector<Gate> gates_;
    std::optional<std::size_t> iterations_;
};

class Program {
public:
    Program(std::string name, std::size_t qubit_count,
            std::shared_ptr<const platform::Platform> platform = nullptr);

    const std::string &name() const noexcept { return name_; }
    std::size_t qubit_count() const noexcept { return qubit_count_; }
    const std::shared_ptr<const platform::Platform> &platform() const noexcept { return platform_; }
    std::span<const Kernel> kernels() const noexcept { return kernels_; }
    std::vector<Kernel> &mutable_kernels() noexcept { return kernels_; }

    Program &add(Kernel kernel);
    Program &add_kernel(Kernel kernel) { return add(std::move(kernel)); }

private:
    std::string name_;
    std::size_t qubit_count_;
    std::shared_ptr<const platform::Platform> platform_;
    std::vector<Kernel> kernels_;
};

} // namespace ir
} // namespace qlc
