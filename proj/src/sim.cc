/** \file
 * State-vector simulation and circuit equivalence.
 */

#include <charconv>
#include <cmath>
#include <set>

#include "qlc/error.h"
#include "qlc/optimize.h"
#include "qlc/sim.h"

namespace qlc::sim {

namespace {

void check_size(std::size_t n, std::size_t limit) {
    if (n > limit) {
        throw Error("sim", ErrorCode::TooManyQubits,
                    std::to_string(n) + " qubits exceeds the limit of " + std::to_string(limit));
    }
}

void check_permutation(const std::vector<Qubit> &perm, std::size_t n) {
    std::set<Qubit> seen;
    for (auto q : perm) {
        if (q >= n || !seen.insert(q).second) {
            throw Error("sim", ErrorCode::BadPermutation, "not a permutation of " + std::to_string(n) + " qubits");
        }
    }
    if (perm.size() != n) {
        throw Error("sim", ErrorCode::BadPermutation,
                    "permutation has " + std::to_string(perm.size()) + " entries for " + std::to_string(n) + " qubits");
    }
}

Matrix unitary_of(std::span<const Gate> gates, std::size_t n) {
    check_size(n, MAX_EQUIVALENCE_QUBITS);
    for (const auto &g : gates) {
        if (g.kind != ir::GateKind::directive && !ir::has_matrix(g)) {
            throw Error("sim", ErrorCode::NonUnitaryGate, "'" + g.to_string() + "' has no unitary");
        }
    }
    return ir::circuit_unitary(gates, n);
}

void append_number(std::string &out, double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, res.ptr);
}

} // namespace

StateVector::StateVector(std::size_t n) : n_(n) {
    check_size(n, MAX_SIM_QUBITS);
    amps_.assign(std::size_t{1} << n, Complex(0, 0));
    amps_[0] = 1;
}

StateVector StateVector::basis(std::size_t n, std::size_t index) {
    StateVector s(n);
    if (index >= s.amps_.size()) {
        throw Error("sim", ErrorCode::OperandRange, "basis state " + std::to_string(index) + " out of range");
    }
    s.amps_[0] = 0;
    s.amps_[index] = 1;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amplitudes.size()) ++n;
    if ((std::size_t{1} << n) != amplitudes.size()) {
        throw Error("sim", ErrorCode::NotPowerOfTwo, std::to_string(amplitudes.size()) + " amplitudes");
    }
    StateVector s(n);
    s.amps_ = std::move(amplitudes);
    return s;
}

double StateVector::norm() const {
    double sum = 0;
    for (const auto &a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
}

void StateVector::apply(const Gate &gate) {
    if (gate.kind == ir::GateKind::directive) return;
    if (!ir::has_matrix(gate)) {
        throw Error("sim", ErrorCode::NonUnitaryGate, "'" + gate.to_string() + "' has no unitary");
    }
    for (auto q : gate.operands) {
        if (q >= n_) {
            throw Error("sim", ErrorCode::OperandRange, gate.to_string() + " outside " + std::to_string(n_) + " qubits");
        }
    }
    const Matrix u = ir::gate_unitary(gate);
    const std::size_t k = gate.operands.size();
    const std::size_t local = std::size_t{1} << k;
    std::vector<std::size_t> offsets(local, 0);
    std::size_t mask = 0;
    for (std::size_t l = 0; l < local; ++l) {
        for (std::size_t j = 0; j < k; ++j) {
            if ((l >> (k - 1 - j)) & 1) offsets[l] |= std::size_t{1} << gate.operands[j];
        }
    }
    for (auto q : gate.operands) mask |= std::size_t{1} << q;

    std::vector<Complex> in(local), out(local);
    for (std::size_t base = 0; base < amps_.size(); ++base) {
        if (base & mask) continue;
        for (std::size_t l = 0; l < local; ++l) in[l] = amps_[base | offsets[l]];
        for (std::size_t r = 0; r < local; ++r) {
            Complex acc = 0;
            for (std::size_t c = 0; c < local; ++c) acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            out[r] = acc;
        }
        for (std::size_t l = 0; l < local; ++l) amps_[base | offsets[l]] = out[l];
    }
}

StateVector simulate(std::span<const Gate> gates, std::size_t n, const std::optional<StateVector> &initial) {
    StateVector state = initial ? *initial : StateVector(n);
    if (state.qubit_count() != n) {
        throw Error("sim", ErrorCode::DimMismatch,
                    "initial state has " + std::to_string(state.qubit_count()) + " qubits, expected " + std::to_string(n));
    }
    for (const auto &g : gates) state.apply(g);
    return state;
}

std::vector<Gate> unitary_prefix(std::span<const Gate> gates) {
    std::vector<Gate> out;
    std::set<Qubit> touched;
    for (const auto &g : gates) {
        if (g.name == "measure") break;
        if (g.name == "prepz") {
            if (touched.count(g.operands[0])) break;
            continue;
        }
        touched.insert(g.operands.begin(), g.operands.end());
        out.push_back(g);
    }
    return out;
}

bool equivalent_up_to_phase(std::span<const Gate> a, std::span<const Gate> b, std::size_t n, double eps) {
    return optimize::unitary_distance(unitary_of(a, n), unitary_of(b, n)) <= eps;
}

Matrix permutation_matrix(const std::vector<Qubit> &perm) {
    const std::size_t n = perm.size();
    check_permutation(perm, n);
    check_size(n, MAX_EQUIVALENCE_QUBITS);
    const std::size_t dim = std::size_t{1} << n;
    Matrix p = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t y = 0;
        for (std::size_t q = 0; q < n; ++q) {
            if ((x >> q) & 1) y |= std::size_t{1} << perm[q];
        }
        p(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = 1;
    }
    return p;
}

bool equivalent_up_to_permutation(std::span<const Gate> a, std::span<const Gate> b, std::size_t n,
                                  const std::vector<Qubit> &perm, double eps) {
    check_permutation(perm, n);
    const Matrix p = permutation_matrix(perm);
    return optimize::unitary_distance(p * unitary_of(a, n) * p.adjoint(), unitary_of(b, n)) <= eps;
}

bool equivalent_up_to_permutation(std::span<const Gate> a, std::span<const Gate> b, std::size_t n,
                                  const std::vector<Qubit> &initial, const std::vector<Qubit> &final, double eps) {
    check_permutation(initial, n);
    check_permutation(final, n);
    const Matrix lhs = unitary_of(b, n) * permutation_matrix(initial);
    const Matrix rhs = permutation_matrix(final) * unitary_of(a, n);
    return optimize::unitary_distance(lhs, rhs) <= eps;
}

std::string dump(const StateVector &state) {
    std::string out;
    const auto &amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        out += std::to_string(i);
        out += ' ';
        append_number(out, amps[i].real());
        out += ' ';
        append_number(out, amps[i].imag());
        out += '\n';
    }
    return out;
}

} // namespace qlc::sim
