/** \file
 * Shared test helpers: random unitaries and circuits, and a brute-force
 * operator builder used as an oracle independent of the library's own
 * circuit_unitary.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "qlc/ir.h"
#include "qlc/platform.h"

namespace qlc::test {

using ir::Complex;
using ir::Gate;
using ir::Matrix;
using ir::Qubit;

/// Haar-random unitary via QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q.
inline Matrix haar_unitary(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix z(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) z(i, j) = Complex(normal(rng), normal(rng));
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    for (Eigen::Index i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

/// Full operator of one gate, entry by entry from the definition: the
/// operand bits of the row and column index select the local matrix entry,
/// all other bits must agree.
inline Matrix embed_by_definition(const Matrix &local, const std::vector<Qubit> &operands, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t k = operands.size();
    Matrix full = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::size_t mask = 0;
    for (auto q : operands) mask |= std::size_t{1} << q;
    auto local_index = [&](std::size_t x) {
        std::size_t l = 0;
        for (std::size_t j = 0; j < k; ++j) l = (l << 1) | ((x >> operands[j]) & 1);
        return l;
    };
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            if ((row & ~mask) != (col & ~mask)) continue;
            full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                local(static_cast<Eigen::Index>(local_index(row)), static_cast<Eigen::Index>(local_index(col)));
        }
    }
    return full;
}

inline Matrix oracle_unitary(const std::vector<Gate> &gates, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    Matrix u = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto &g : gates) {
        if (g.kind == ir::GateKind::directive) continue;
        u = embed_by_definition(ir::gate_unitary(g), g.operands, n) * u;
    }
    return u;
}

/// |x><x| (x) U on the targets whenever every control bit of x is set.
inline Matrix controlled_definition(const Matrix &u, const std::vector<Qubit> &controls, const std::vector<Qubit> &targets,
                                    std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    std::size_t mask = 0;
    for (auto q : controls) mask |= std::size_t{1} << q;
    const Matrix applied = embed_by_definition(u, targets, n);
    Matrix out = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        if ((col & mask) != mask) continue;
        out.col(static_cast<Eigen::Index>(col)) = applied.col(static_cast<Eigen::Index>(col));
    }
    return out;
}

/// Distance over the input columns whose ancilla bits are all zero.
inline double clean_ancilla_distance(const Matrix &a, const Matrix &b, const std::vector<Qubit> &ancillas) {
    std::size_t mask = 0;
    for (auto q : ancillas) mask |= std::size_t{1} << q;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        if ((static_cast<std::size_t>(c) & mask) == 0) cols.push_back(c);
    }
    Matrix sa(a.rows(), static_cast<Eigen::Index>(cols.size())), sb(b.rows(), sa.cols());
    for (std::size_t i = 0; i < cols.size(); ++i) {
        sa.col(static_cast<Eigen::Index>(i)) = a.col(cols[i]);
        sb.col(static_cast<Eigen::Index>(i)) = b.col(cols[i]);
    }
    const Complex overlap = (sa.adjoint() * sb).trace();
    return (sa * std::polar(1.0, std::arg(overlap)) - sb).norm() / std::sqrt(2.0 * static_cast<double>(cols.size()));
}

/// Phase-aligned Frobenius distance, normalized like the library metric.
inline double phase_distance(const Matrix &a, const Matrix &b) {
    const Complex overlap = (a.adjoint() * b).trace();
    const double phase = std::arg(overlap);
    return (a * std::polar(1.0, phase) - b).norm() / std::sqrt(2.0 * static_cast<double>(a.rows()));
}

inline std::vector<Qubit> distinct_qubits(std::size_t count, std::size_t n, std::mt19937_64 &rng) {
    std::vector<Qubit> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(count);
    return all;
}

/// Random unitary circuit over the built-in gate set.
inline std::vector<Gate> random_circuit(std::size_t n, std::size_t count, std::mt19937_64 &rng,
                                        bool allow_three_qubit = false) {
    static const std::vector<std::string> one = {"i", "h", "x", "y", "z", "s", "sdag", "t",
                                                 "tdag", "x90", "y90", "mx90", "my90", "rx", "ry", "rz"};
    static const std::vector<std::string> two = {"cnot", "cz", "swap"};
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::uniform_int_distribution<int> kind(0, allow_three_qubit && n >= 3 ? 9 : 8);
    std::vector<Gate> out;
    for (std::size_t i = 0; i < count; ++i) {
        const int k = n >= 2 ? kind(rng) : 0;
        if (k <= 5) {
            const auto &name = one[std::uniform_int_distribution<std::size_t>(0, one.size() - 1)(rng)];
            Gate g(name, distinct_qubits(1, n, rng));
            if (name == "rx" || name == "ry" || name == "rz") g.angle = angle(rng);
            out.push_back(g);
        } else if (k <= 8) {
            const auto &name = two[std::uniform_int_distribution<std::size_t>(0, two.size() - 1)(rng)];
            out.emplace_back(name, distinct_qubits(2, n, rng));
        } else {
            out.emplace_back("toffoli", distinct_qubits(3, n, rng));
        }
    }
    return out;
}

inline platform::Topology line_topology(std::size_t n) {
    platform::Topology t{n, {}};
    for (Qubit q = 0; q + 1 < n; ++q) t.edges.emplace_back(q, q + 1);
    return t;
}

inline platform::Topology ring_topology(std::size_t n) {
    auto t = line_topology(n);
    if (n > 2) t.edges.emplace_back(n - 1, 0);
    return t;
}

inline platform::Topology grid_topology(std::size_t rows, std::size_t cols) {
    platform::Topology t{rows * cols, {}};
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const Qubit q = r * cols + c;
            if (c + 1 < cols) t.edges.emplace_back(q, q + 1);
            if (r + 1 < rows) t.edges.emplace_back(q, q + cols);
        }
    }
    return t;
}

/// A random hardware description with resource limits, kept alongside the
/// plain data it was generated from so tests can audit schedules without
/// going through the library's own claim logic.
struct ResourceFixture {
    struct Rule {
        std::string resource;
        std::string match;  ///< instruction type or gate name
        std::size_t units;
        std::vector<Qubit> qubits;
    };
    std::string document;
    std::map<std::string, std::size_t> counts;
    std::vector<Rule> rules;
    std::map<std::string, std::string> type_of;       ///< gate name -> type
    std::map<std::string, std::size_t> duration_of;   ///< gate name -> cycles

    std::map<std::string, std::size_t> claims(const Gate &g) const {
        std::map<std::string, std::size_t> out;
        const auto type = type_of.count(g.name) ? type_of.at(g.name) : std::string("none");
        for (const auto &r : rules) {
            if (r.match != type && r.match != g.name) continue;
            bool hit = r.qubits.empty();
            for (auto q : g.operands) hit = hit || std::find(r.qubits.begin(), r.qubits.end(), q) != r.qubits.end();
            if (hit) out[r.resource] += r.units;
        }
        return out;
    }

    /// True when some gate alone claims more of a resource than exists.
    bool oversubscribed(const std::vector<Gate> &gates) const {
        for (const auto &g : gates) {
            for (const auto &[resource, units] : claims(g)) {
                if (units > counts.at(resource)) return true;
            }
        }
        return false;
    }
};

inline const std::vector<std::string> &resource_gate_names() {
    static const std::vector<std::string> names = {"h", "x", "y", "t", "cnot", "cz", "measure"};
    return names;
}

inline ResourceFixture random_resource_fixture(std::size_t qubits, std::mt19937_64 &rng) {
    constexpr std::int64_t cycle = 10;
    ResourceFixture f;
    const std::vector<std::string> types = {"mw", "flux", "readout"};
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

    std::string instructions;
    for (const auto &name : resource_gate_names()) {
        const std::string type = name == "measure" ? "readout" : (name == "cnot" || name == "cz") ? "flux" : "mw";
        f.type_of[name] = type;
        f.duration_of[name] = 1 + pick(3);
        if (!instructions.empty()) instructions += ",";
        instructions += "\"" + name + "\": {\"duration\": " + std::to_string(f.duration_of[name] * cycle) +
                        ", \"type\": \"" + type + "\"}";
    }

    std::string resources;
    const std::size_t resource_count = 1 + pick(3);
    for (std::size_t r = 0; r < resource_count; ++r) {
        const std::string name = "r" + std::to_string(r);
        const std::size_t count = 1 + pick(3);
        f.counts[name] = count;
        std::string usage;
        const std::size_t rule_count = 1 + pick(3);
        for (std::size_t k = 0; k < rule_count; ++k) {
            ResourceFixture::Rule rule;
            rule.resource = name;
            rule.match = pick(3) == 0 ? resource_gate_names()[pick(resource_gate_names().size())] : types[pick(3)];
            rule.units = 1 + pick(count);
            if (pick(2) == 0) {
                for (Qubit q = 0; q < qubits; ++q) {
                    if (pick(2) == 0) rule.qubits.push_back(q);
                }
            }
            if (!usage.empty()) usage += ",";
            usage += "{\"match\": \"" + rule.match + "\", \"units\": " + std::to_string(rule.units);
            if (!rule.qubits.empty()) {
                usage += ", \"qubits\": [";
                for (std::size_t i = 0; i < rule.qubits.size(); ++i) {
                    usage += (i ? "," : "") + std::to_string(rule.qubits[i]);
                }
                usage += "]";
            }
            usage += "}";
            f.rules.push_back(rule);
        }
        if (!resources.empty()) resources += ",";
        resources += "\"" + name + "\": {\"count\": " + std::to_string(count) + ", \"usage\": [" + usage + "]}";
    }

    f.document = "{\"eqasm_compiler\": \"none\", \"hardware_settings\": {\"qubit_number\": " +
                 std::to_string(qubits) + ", \"cycle_time\": " + std::to_string(cycle) +
                 ", \"mw_flux_buffer\": " + std::to_string(10 * pick(3)) +
                 ", \"flux_mw_buffer\": " + std::to_string(10 * pick(3)) + "}, \"instructions\": {" + instructions +
                 "}, \"resources\": {" + resources + "}}";
    return f;
}

inline std::vector<Gate> random_resource_circuit(std::size_t qubits, std::size_t count, std::mt19937_64 &rng) {
    std::vector<Gate> out;
    const auto &names = resource_gate_names();
    for (std::size_t i = 0; i < count; ++i) {
        const auto &name = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
        const std::size_t arity = (name == "cnot" || name == "cz") ? 2 : 1;
        if (arity > qubits) {
            out.emplace_back("x", distinct_qubits(1, qubits, rng));
        } else {
            out.emplace_back(name, distinct_qubits(arity, qubits, rng));
        }
    }
    return out;
}

} // namespace qlc::test
