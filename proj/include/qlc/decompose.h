/** \file
 * Lowering to elementary gates: Toffoli and multi-controlled networks,
 * controlled kernels, ZYZ angles, uniformly controlled rotations and
 * Quantum Shannon Decomposition of arbitrary unitaries into {ry, rz, cnot}.
 */

#pragma once

#include <vector>

#include "qlc/ir.h"

namespace qlc::platform {
struct Platform;
}

namespace qlc::decompose {

using ir::Gate;
using ir::Kernel;
using ir::Matrix;
using ir::Qubit;

/// U = exp(i alpha) Rz(beta) Ry(gamma) Rz(delta), gamma in [0, pi].
struct ZYZAngles {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
    double delta = 0;
};

enum class Axis { y, z };

/// For each basis state x of `controls` (controls[0] is the most significant
/// bit of x) the target receives a rotation by angles[x] about `axis`.
struct UniformlyControlledRotation {
    Axis axis = Axis::z;
    std::vector<double> angles;
    std::vector<Qubit> controls;
    Qubit target = 0;
};

/// 6-CNOT network over {h, t, tdag, cnot}; exact, no phase.
std::vector<Gate> decompose_toffoli(const Gate &gate);

/// Applies `target_gate` controlled on every qubit in `controls`, computing
/// the AND of the controls into the ancillas with a Toffoli ladder and
/// uncomputing it afterwards. Ancillas must start and end in |0>.
std::vector<Gate> decompose_multi_controlled(const Gate &target_gate, const std::vector<Qubit> &controls,
                                             const std::vector<Qubit> &ancillas);

/// Ancillas decompose_multi_controlled needs for `controls` controls.
std::size_t required_ancillas(const Gate &target_gate, std::size_t controls);

Kernel controlled_kernel(const Kernel &kernel, const std::vector<Qubit> &controls,
                         const std::vector<Qubit> &ancillas);

ZYZAngles zyz_decompose(const Matrix &u);

/// Rebuilds exp(i alpha) Rz(beta) Ry(gamma) Rz(delta).
Matrix zyz_matrix(const ZYZAngles &angles);

/// Rotations interleaved with CNOTs in Gray-code order; 2^k of each for k >= 1.
std::vector<Gate> decompose_uniformly_controlled_rotation(const UniformlyControlledRotation &ucr);

struct QsdOptions {
    /// Skip multiplexors that are exactly trivial. Off by default so the
    /// gate counts follow the closed-form totals exactly.
    bool shortcuts = false;
    double shortcut_tolerance = 1e-12;
};

inline constexpr std::size_t MAX_QSD_QUBITS = 8;

/// Decomposes U acting on `qubits` (qubits[0] is the most significant bit of
/// U's row index) into rz/ry/cnot. Without shortcuts it emits exactly
/// 3/2 4^n - 3/2 2^n rotations and 3/4 4^n - 3/2 2^n CNOTs.
std::vector<Gate> qsd_decompose(const Matrix &u, const std::vector<Qubit> &qubits,
                                const QsdOptions &options = {});

std::size_t qsd_rotation_count(std::size_t n);
std::size_t qsd_cnot_count(std::size_t n);

/// Expands one gate through platform rules, Toffoli lowering and unitary
/// synthesis until only elementary or platform-native gates remain.
std::vector<Gate> decompose_gate(const Gate &gate, const platform::Platform &platform);
std::vector<Gate> decompose_circuit(std::span<const Gate> gates, const platform::Platform &platform);

} // namespace qlc::decompose
