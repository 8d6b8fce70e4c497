/** \file
 * Placement of virtual qubits on a hardware topology and SWAP routing.
 */

#pragma once

#include <span>
#include <vector>

#include "qlc/ir.h"
#include "qlc/platform.h"

namespace qlc::map {

using ir::Gate;
using ir::Qubit;

/// Hop counts between physical qubits.
using DistanceMatrix = std::vector<std::vector<std::size_t>>;

/// Throws DisconnectedTopology.
DistanceMatrix distance_matrix(const platform::Topology &topology);

/// Bijection between virtual and physical qubits over the whole device.
/// Virtual ids beyond the circuit's own qubits pad the unused physicals.
struct Mapping {
    std::vector<Qubit> v2p;
    std::vector<Qubit> p2v;

    static Mapping identity(std::size_t n);
    static Mapping from_v2p(std::vector<Qubit> v2p);

    /// Exchanges the virtual qubits held by physical qubits a and b.
    void swap_physical(Qubit a, Qubit b);
    bool is_bijection() const;

    friend bool operator==(const Mapping &, const Mapping &) = default;
};

/// Sum over two-qubit gates of (distance between their physical qubits - 1).
std::size_t placement_cost(std::span<const Gate> gates, const DistanceMatrix &distance, const Mapping &mapping);

struct Placement {
    Mapping mapping;
    std::size_t cost = 0;
    bool exact = false;  ///< true when the search proved optimality
};

inline constexpr std::size_t EXACT_PLACEMENT_LIMIT = 8;

/// Minimizes placement_cost. Up to EXACT_PLACEMENT_LIMIT interacting qubits a
/// branch-and-bound search visits at most `node_budget` partial placements;
/// larger circuits, or an exhausted budget, fall back to a greedy placement.
/// Throws TooManyVirtualQubits and DisconnectedTopology.
Placement initial_placement(std::span<const Gate> gates, const platform::Topology &topology,
                            std::size_t node_budget = 5'000'000);

/// Gates that exchange the states of adjacent physical qubits a and b on
/// this platform: a native swap, the platform's swap rule, or three CNOTs.
std::vector<Gate> swap_gates(Qubit a, Qubit b, const platform::Platform &platform);

struct RouteResult {
    std::vector<Gate> gates;  ///< operands are physical qubits
    Mapping final_mapping;
    std::size_t swaps_added = 0;
    std::size_t depth_before = 0;
    std::size_t depth_after = 0;
};

/// Inserts SWAPs so that every two-qubit gate acts on neighbours. Gates are
/// taken in ASAP order; for each distant pair every shortest path and every
/// meeting point on it is tried, keeping the one with the smallest resulting
/// depth (then the lexicographically smallest path, then the earliest
/// meeting point). Throws GateTooWide and DisconnectedTopology.
RouteResult route(std::span<const Gate> gates, const platform::Topology &topology, const Mapping &initial,
                  const platform::Platform &platform);

/// SWAP network along a spanning tree that turns `current` into `target`.
/// Returns the gates and updates `current`.
std::vector<Gate> restore_mapping(Mapping &current, const Mapping &target, const platform::Topology &topology,
                                  const platform::Platform &platform, std::size_t *swap_count = nullptr);

} // namespace qlc::map
