/** \file
 * Gate dependency graph construction.
 */

#include <algorithm>

#include "qlc/optimize.h"

namespace qlc::optimize {

GateDependencyGraph::GateDependencyGraph(std::size_t gate_count, std::size_t qubit_count,
                                         std::vector<GdgEdge> edges)
    : gate_count_(gate_count), qubit_count_(qubit_count), edges_(std::move(edges)),
      out_(gate_count + 2), in_(gate_count + 2) {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        out_[edges_[e].from].push_back(e);
        in_[edges_[e].to].push_back(e);
    }
}

std::vector<std::size_t> GateDependencyGraph::chain(Qubit qubit) const {
    std::vector<std::size_t> out;
    for (const auto &e : edges_) {
        if (e.qubit == qubit && e.to != sink()) out.push_back(e.to);
    }
    return out;
}

std::vector<Qubit> occupied_qubits(const Gate &gate, std::size_t qubit_count) {
    if (!gate.operands.empty() || gate.kind != ir::GateKind::directive) return gate.operands;
    std::vector<Qubit> all(qubit_count);
    for (std::size_t q = 0; q < qubit_count; ++q) all[q] = q;
    return all;
}

std::size_t qubit_extent(std::span<const Gate> gates) {
    std::size_t n = 0;
    for (const auto &g : gates) {
        for (auto q : g.operands) n = std::max(n, q + 1);
    }
    return n;
}

GateDependencyGraph build_gdg(std::span<const Gate> gates) {
    const std::size_t n = qubit_extent(gates);
    const std::size_t source = gates.size(), sink = gates.size() + 1;
    std::vector<std::size_t> last(n, source);
    std::vector<GdgEdge> edges;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto qubits = occupied_qubits(gates[i], n);
        if (qubits.empty()) {
            edges.push_back({source, i, 0});
            edges.push_back({i, sink, 0});
            continue;
        }
        for (auto q : qubits) {
            edges.push_back({last[q], i, q});
            last[q] = i;
        }
    }
    for (Qubit q = 0; q < n; ++q) {
        if (last[q] != source) edges.push_back({last[q], sink, q});
    }
    if (gates.empty()) edges.push_back({source, sink, 0});
    return GateDependencyGraph(gates.size(), n, std::move(edges));
}

} // namespace qlc::optimize
