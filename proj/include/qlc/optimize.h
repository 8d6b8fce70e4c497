/** \file
 * Gate dependency graph and single-qubit run fusion.
 */

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qlc/ir.h"

namespace qlc::optimize {

using ir::Gate;
using ir::Matrix;
using ir::Qubit;

struct GdgEdge {
    std::size_t from;
    std::size_t to;
    Qubit qubit;
};

/// Nodes 0..gate_count-1 are the gates in program order, followed by the
/// virtual source and sink. Each qubit contributes a chain
/// source -> first gate -> ... -> last gate -> sink. A gate without
/// operands (display) sits on every qubit's chain.
class GateDependencyGraph {
public:
    GateDependencyGraph(std::size_t gate_count, std::size_t qubit_count, std::vector<GdgEdge> edges);

    std::size_t gate_count() const noexcept { return gate_count_; }
    std::size_t qubit_count() const noexcept { return qubit_count_; }
    std::size_t source() const noexcept { return gate_count_; }
    std::size_t sink() const noexcept { return gate_count_ + 1; }
    std::size_t node_count() const noexcept { return gate_count_ + 2; }

    std::span<const GdgEdge> edges() const noexcept { return edges_; }
    /// Indices into edges(), in edge order.
    const std::vector<std::size_t> &out_edges(std::size_t node) const { return out_[node]; }
    const std::vector<std::size_t> &in_edges(std::size_t node) const { return in_[node]; }

    /// Gates touching `qubit`, in program order.
    std::vector<std::size_t> chain(Qubit qubit) const;

private:
    std::size_t gate_count_;
    std::size_t qubit_count_;
    std::vector<GdgEdge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

/// Qubits a gate occupies; directives without operands occupy all of them.
std::vector<Qubit> occupied_qubits(const Gate &gate, std::size_t qubit_count);

/// One past the largest operand in `gates`.
std::size_t qubit_extent(std::span<const Gate> gates);

GateDependencyGraph build_gdg(std::span<const Gate> gates);

/// sqrt(1 - |tr(U^dag V)| / dim): zero exactly when U and V differ by a
/// global phase. Throws DimMismatch.
double unitary_distance(const Matrix &u, const Matrix &v);

/// Gates the optimizer may absorb: single-qubit, with a matrix, not marked
/// disable_optimization.
bool is_fusable(const Gate &gate);

/// Replaces a same-qubit run by nothing (if it is the identity within
/// epsilon) or by at most three rotations. Returns nullopt when that is not
/// strictly shorter or not within epsilon of the run's product.
std::optional<std::vector<Gate>> fuse_single_qubit_run(std::span<const Gate> run, double epsilon);

struct OptimizeStats {
    std::size_t replacements = 0;
    std::size_t sweeps = 0;
};

inline constexpr double DEFAULT_EPSILON = 1e-9;
inline constexpr std::size_t DEFAULT_WINDOW = 8;
inline constexpr std::size_t MAX_SWEEPS = 10;

/// Fuses windows of up to `window` gates that are consecutive on a qubit's
/// dependency chain, largest windows first, until nothing changes (at most
/// MAX_SWEEPS sweeps). Never increases the gate count.
std::vector<Gate> optimize_circuit(std::span<const Gate> gates, double epsilon = DEFAULT_EPSILON,
                                   std::size_t window = DEFAULT_WINDOW, OptimizeStats *stats = nullptr);

} // namespace qlc::optimize
