/** \file
 * Dense state-vector simulator and equivalence checks.
 *
 * Qubit q is bit q of the basis index, as for ir::circuit_unitary.
 */

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlc/ir.h"

namespace qlc::sim {

using ir::Complex;
using ir::Gate;
using ir::Matrix;
using ir::Qubit;

inline constexpr std::size_t MAX_SIM_QUBITS = 14;
inline constexpr std::size_t MAX_EQUIVALENCE_QUBITS = 10;

class StateVector {
public:
    /// |0...0> on n qubits. Throws TooManyQubits above MAX_SIM_QUBITS.
    explicit StateVector(std::size_t n);
    static StateVector basis(std::size_t n, std::size_t index);
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    std::size_t qubit_count() const noexcept { return n_; }
    const std::vector<Complex> &amplitudes() const noexcept { return amps_; }
    std::vector<Complex> &amplitudes() noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }
    double norm() const;

    /// Applies a gate's unitary. Directives are ignored. Throws
    /// NonUnitaryGate for gates without a matrix.
    void apply(const Gate &gate);

private:
    std::size_t n_;
    std::vector<Complex> amps_;
};

StateVector simulate(std::span<const Gate> gates, std::size_t n,
                     const std::optional<StateVector> &initial = std::nullopt);

/// Gates up to the first measurement, without state preparations that come
/// before any other operation on their qubit.
std::vector<Gate> unitary_prefix(std::span<const Gate> gates);

bool equivalent_up_to_phase(std::span<const Gate> a, std::span<const Gate> b, std::size_t n, double eps);

/// Operator that moves the state of qubit q to qubit perm[q]. Throws
/// BadPermutation.
Matrix permutation_matrix(const std::vector<Qubit> &perm);

/// True when circuit b is circuit a with every qubit q relabelled perm[q]:
/// U_b = P U_a P^dag up to phase.
bool equivalent_up_to_permutation(std::span<const Gate> a, std::span<const Gate> b, std::size_t n,
                                  const std::vector<Qubit> &perm, double eps);

/// Routing contract: b runs on physical qubits, virtual qubit v starts on
/// initial[v] and ends on final[v], so U_b P_initial = P_final U_a up to phase.
bool equivalent_up_to_permutation(std::span<const Gate> a, std::span<const Gate> b, std::size_t n,
                                  const std::vector<Qubit> &initial, const std::vector<Qubit> &final,
                                  double eps);

/// One "index re im" line per amplitude.
std::string dump(const StateVector &state);

} // namespace qlc::sim
