/** \file
 * Distance matrix, initial placement, SWAP routing and mapping restoration.
 */

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <tuple>

#include "qlc/error.h"
#include "qlc/map.h"
#include "qlc/optimize.h"

namespace qlc::map {

namespace {

constexpr std::size_t UNREACHABLE = std::numeric_limits<std::size_t>::max();

// Enough for every shortest path on the small devices this targets while
// keeping pathological grids bounded.
constexpr std::size_t MAX_PATHS = 512;

std::vector<std::vector<Qubit>> sorted_adjacency(const platform::Topology &topology) {
    auto adj = topology.adjacency();
    for (auto &list : adj) std::sort(list.begin(), list.end());
    return adj;
}

struct InteractionGraph {
    std::size_t virtuals = 0;
    std::vector<std::vector<std::size_t>> weight;
    std::vector<Qubit> interacting;  ///< by descending total weight, then index
};

InteractionGraph interactions(std::span<const Gate> gates, std::size_t virtuals) {
    InteractionGraph g;
    g.virtuals = virtuals;
    g.weight.assign(virtuals, std::vector<std::size_t>(virtuals, 0));
    for (const auto &gate : gates) {
        if (gate.operands.size() != 2) continue;
        const auto a = gate.operands[0], b = gate.operands[1];
        ++g.weight[a][b];
        ++g.weight[b][a];
    }
    std::vector<std::size_t> total(virtuals, 0);
    for (Qubit v = 0; v < virtuals; ++v) {
        total[v] = std::accumulate(g.weight[v].begin(), g.weight[v].end(), std::size_t{0});
        if (total[v] > 0) g.interacting.push_back(v);
    }
    std::stable_sort(g.interacting.begin(), g.interacting.end(),
                     [&](Qubit a, Qubit b) { return total[a] > total[b]; });
    return g;
}

// Cost added by placing v at p, given the virtuals placed so far.
std::size_t incremental_cost(const InteractionGraph &g, const DistanceMatrix &d, const std::vector<Qubit> &v2p,
                             const std::vector<bool> &placed, Qubit v, Qubit p) {
    std::size_t cost = 0;
    for (Qubit u = 0; u < g.virtuals; ++u) {
        if (!placed[u] || g.weight[v][u] == 0) continue;
        cost += g.weight[v][u] * (d[p][v2p[u]] - 1);
    }
    return cost;
}

struct Search {
    const InteractionGraph &graph;
    const DistanceMatrix &distance;
    std::size_t budget;
    std::size_t nodes = 0;
    bool exhausted = false;
    std::vector<Qubit> v2p{};
    std::vector<bool> placed{};
    std::vector<bool> used{};
    std::size_t best_cost = UNREACHABLE;
    std::vector<Qubit> best{};

    void dfs(std::size_t depth, std::size_t cost) {
        if (cost >= best_cost) return;
        if (depth == graph.interacting.size()) {
            best_cost = cost;
            best = v2p;
            return;
        }
        const Qubit v = graph.interacting[depth];
        for (Qubit p = 0; p < distance.size(); ++p) {
            if (used[p]) continue;
            if (++nodes > budget) {
                exhausted = true;
                return;
            }
            const auto extra = incremental_cost(graph, distance, v2p, placed, v, p);
            v2p[v] = p;
            placed[v] = true;
            used[p] = true;
            dfs(depth + 1, cost + extra);
            placed[v] = false;
            used[p] = false;
            if (exhausted) return;
        }
    }
};

std::vector<Qubit> greedy_placement(const InteractionGraph &g, const DistanceMatrix &d,
                                    const std::vector<std::vector<Qubit>> &adj) {
    const std::size_t n = d.size();
    std::vector<Qubit> v2p(g.virtuals, 0);
    std::vector<bool> placed(g.virtuals, false), used(n, false);
    for (Qubit v : g.interacting) {
        Qubit best = n;
        std::size_t best_cost = UNREACHABLE;
        for (Qubit p = 0; p < n; ++p) {
            if (used[p]) continue;
            const auto cost = incremental_cost(g, d, v2p, placed, v, p);
            const bool better = cost < best_cost || (cost == best_cost && adj[p].size() > adj[best].size());
            if (best == n || better) {
                best = p;
                best_cost = cost;
            }
        }
        v2p[v] = best;
        placed[v] = true;
        used[best] = true;
    }
    return v2p;
}

// Completes a placement of the interacting virtuals: other virtuals, then
// padding ids, take the free physicals in ascending order.
Mapping complete(const InteractionGraph &g, const std::vector<Qubit> &partial, std::size_t physical) {
    std::vector<Qubit> v2p(physical, 0);
    std::vector<bool> assigned(physical, false), used(physical, false);
    for (Qubit v : g.interacting) {
        v2p[v] = partial[v];
        assigned[v] = true;
        used[partial[v]] = true;
    }
    Qubit next = 0;
    for (Qubit v = 0; v < physical; ++v) {
        if (assigned[v]) continue;
        while (used[next]) ++next;
        v2p[v] = next;
        used[next] = true;
    }
    return Mapping::from_v2p(std::move(v2p));
}

void shortest_paths(const std::vector<std::vector<Qubit>> &adj, const DistanceMatrix &d, Qubit from, Qubit to,
                    std::vector<Qubit> &prefix, std::vector<std::vector<Qubit>> &out) {
    if (out.size() >= MAX_PATHS) return;
    prefix.push_back(from);
    if (from == to) {
        out.push_back(prefix);
    } else {
        for (Qubit next : adj[from]) {
            if (d[next][to] + 1 == d[from][to]) shortest_paths(adj, d, next, to, prefix, out);
        }
    }
    prefix.pop_back();
}

std::vector<std::size_t> asap_order(std::span<const Gate> gates) {
    const std::size_t n = optimize::qubit_extent(gates);
    std::vector<std::size_t> level(n, 0), gate_level(gates.size(), 0);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto qubits = optimize::occupied_qubits(gates[i], n);
        std::size_t l = 0;
        for (auto q : qubits) l = std::max(l, level[q]);
        for (auto q : qubits) level[q] = l + 1;
        gate_level[i] = l;
    }
    std::vector<std::size_t> order(gates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gate_level[a] < gate_level[b]; });
    return order;
}

// Per-physical-qubit depth of the routed circuit built so far.
struct Frontier {
    std::vector<std::size_t> level;
    std::size_t depth = 0;

    void add(const Gate &g) {
        std::vector<Qubit> qubits = g.operands;
        if (qubits.empty()) {
            qubits.resize(level.size());
            std::iota(qubits.begin(), qubits.end(), 0);
        }
        std::size_t l = 0;
        for (auto q : qubits) l = std::max(l, level[q]);
        for (auto q : qubits) level[q] = l + 1;
        depth = std::max(depth, l + 1);
    }
};

} // namespace

DistanceMatrix distance_matrix(const platform::Topology &topology) {
    const std::size_t n = topology.qubit_count;
    const auto adj = sorted_adjacency(topology);
    DistanceMatrix d(n, std::vector<std::size_t>(n, UNREACHABLE));
    for (Qubit s = 0; s < n; ++s) {
        std::deque<Qubit> queue{s};
        d[s][s] = 0;
        while (!queue.empty()) {
            const Qubit u = queue.front();
            queue.pop_front();
            for (Qubit v : adj[u]) {
                if (d[s][v] != UNREACHABLE) continue;
                d[s][v] = d[s][u] + 1;
                queue.push_back(v);
            }
        }
        for (Qubit t = 0; t < n; ++t) {
            if (d[s][t] == UNREACHABLE) {
                throw Error("map", ErrorCode::DisconnectedTopology,
                            "no path between physical qubits " + std::to_string(s) + " and " + std::to_string(t));
            }
        }
    }
    return d;
}

Mapping Mapping::identity(std::size_t n) {
    std::vector<Qubit> v2p(n);
    std::iota(v2p.begin(), v2p.end(), 0);
    return from_v2p(std::move(v2p));
}

Mapping Mapping::from_v2p(std::vector<Qubit> v2p) {
    Mapping m;
    m.p2v.assign(v2p.size(), 0);
    for (Qubit v = 0; v < v2p.size(); ++v) {
        if (v2p[v] >= v2p.size()) {
            throw Error("map", ErrorCode::BadPermutation, "physical qubit " + std::to_string(v2p[v]) + " out of range");
        }
        m.p2v[v2p[v]] = v;
    }
    m.v2p = std::move(v2p);
    if (!m.is_bijection()) throw Error("map", ErrorCode::BadPermutation, "mapping is not a bijection");
    return m;
}

void Mapping::swap_physical(Qubit a, Qubit b) {
    std::swap(p2v[a], p2v[b]);
    v2p[p2v[a]] = a;
    v2p[p2v[b]] = b;
}

bool Mapping::is_bijection() const {
    if (v2p.size() != p2v.size()) return false;
    for (Qubit v = 0; v < v2p.size(); ++v) {
        if (v2p[v] >= p2v.size() || p2v[v2p[v]] != v) return false;
    }
    return true;
}

std::size_t placement_cost(std::span<const Gate> gates, const DistanceMatrix &distance, const Mapping &mapping) {
    std::size_t cost = 0;
    for (const auto &g : gates) {
        if (g.operands.size() != 2) continue;
        cost += distance[mapping.v2p[g.operands[0]]][mapping.v2p[g.operands[1]]] - 1;
    }
    return cost;
}

Placement initial_placement(std::span<const Gate> gates, const platform::Topology &topology,
                            std::size_t node_budget) {
    const auto d = distance_matrix(topology);
    const std::size_t physical = topology.qubit_count;
    const std::size_t virtuals = optimize::qubit_extent(gates);
    if (virtuals > physical) {
        throw Error("map", ErrorCode::TooManyVirtualQubits,
                    std::to_string(virtuals) + " virtual qubits on a " + std::to_string(physical) + "-qubit topology");
    }
    const auto graph = interactions(gates, virtuals);
    const auto adj = sorted_adjacency(topology);
    auto partial = greedy_placement(graph, d, adj);

    Placement result;
    result.exact = graph.interacting.empty();
    if (!graph.interacting.empty() && graph.interacting.size() <= EXACT_PLACEMENT_LIMIT) {
        Search search{graph, d, node_budget};
        search.v2p.assign(virtuals, 0);
        search.placed.assign(virtuals, false);
        search.used.assign(physical, false);
        // The greedy answer bounds the search from the start.
        search.best_cost = placement_cost(gates, d, complete(graph, partial, physical)) + 1;
        search.best = partial;
        search.dfs(0, 0);
        partial = search.best;
        result.exact = !search.exhausted;
    }
    result.mapping = complete(graph, partial, physical);
    result.cost = placement_cost(gates, d, result.mapping);
    return result;
}

std::vector<Gate> swap_gates(Qubit a, Qubit b, const platform::Platform &platform) {
    Gate swap("swap", {a, b});
    swap.kind = ir::GateKind::swap_like;
    if (platform.instructions.empty() || platform::find_instruction(platform, swap)) {
        platform::resolve(platform, swap);
        return {swap};
    }
    if (platform::find_decomposition(platform, swap)) return platform::apply_custom_decomposition(platform, swap);
    std::vector<Gate> out{Gate("cnot", {a, b}), Gate("cnot", {b, a}), Gate("cnot", {a, b})};
    platform::resolve_all(platform, out);
    return out;
}

RouteResult route(std::span<const Gate> gates, const platform::Topology &topology, const Mapping &initial,
                  const platform::Platform &platform) {
    const auto d = distance_matrix(topology);
    const auto adj = sorted_adjacency(topology);
    const std::size_t physical = topology.qubit_count;
    if (initial.v2p.size() != physical || !initial.is_bijection()) {
        throw Error("map", ErrorCode::BadPermutation, "initial mapping does not cover the topology");
    }
    for (const auto &g : gates) {
        if (g.operands.size() > 2) {
            throw Error("map", ErrorCode::GateTooWide, "'" + g.to_string() + "' has more than two operands");
        }
        for (auto q : g.operands) {
            if (q >= physical) {
                throw Error("map", ErrorCode::TooManyVirtualQubits,
                            "virtual qubit " + std::to_string(q) + " exceeds the topology");
            }
        }
    }

    RouteResult result;
    result.final_mapping = initial;
    result.depth_before = [&] {
        Frontier f{std::vector<std::size_t>(physical, 0)};
        for (const auto &g : gates) f.add(g);
        return f.depth;
    }();
    auto &mapping = result.final_mapping;
    Frontier frontier{std::vector<std::size_t>(physical, 0)};
    auto emit = [&](Gate g) {
        frontier.add(g);
        result.gates.push_back(std::move(g));
    };

    for (auto index : asap_order(gates)) {
        Gate gate = gates[index];
        for (auto &q : gate.operands) q = mapping.v2p[q];
        if (gate.operands.size() == 2 && d[gate.operands[0]][gate.operands[1]] > 1) {
            const Qubit from = gate.operands[0], to = gate.operands[1];
            std::vector<std::vector<Qubit>> paths;
            std::vector<Qubit> prefix;
            shortest_paths(adj, d, from, to, prefix, paths);
            const std::size_t hops = d[from][to];

            struct Candidate {
                std::size_t depth;
                std::size_t swaps;
                const std::vector<Qubit> *path;
                std::size_t split;
            };
            std::optional<Candidate> best;
            // The first operand walks `split` steps forward, the second walks
            // back to meet it.
            auto swaps_for = [&](const std::vector<Qubit> &path, std::size_t split) {
                std::vector<std::pair<Qubit, Qubit>> swaps;
                for (std::size_t i = 0; i < split; ++i) swaps.emplace_back(path[i], path[i + 1]);
                for (std::size_t i = hops; i > split + 1; --i) swaps.emplace_back(path[i], path[i - 1]);
                return swaps;
            };
            for (const auto &path : paths) {
                for (std::size_t split = 0; split < hops; ++split) {
                    Frontier trial = frontier;
                    const auto swaps = swaps_for(path, split);
                    for (auto [a, b] : swaps) {
                        for (const auto &g : swap_gates(a, b, platform)) trial.add(g);
                    }
                    trial.add(Gate(gate.name, {path[split], path[split + 1]}));
                    Candidate c{trial.depth, swaps.size(), &path, split};
                    if (!best || std::tie(c.depth, c.swaps) < std::tie(best->depth, best->swaps)) best = c;
                }
            }
            for (auto [a, b] : swaps_for(*best->path, best->split)) {
                for (auto &g : swap_gates(a, b, platform)) emit(std::move(g));
                mapping.swap_physical(a, b);
                ++result.swaps_added;
            }
            for (std::size_t i = 0; i < 2; ++i) gate.operands[i] = mapping.v2p[gates[index].operands[i]];
        }
        emit(std::move(gate));
    }
    result.depth_after = frontier.depth;
    return result;
}

std::vector<Gate> restore_mapping(Mapping &current, const Mapping &target, const platform::Topology &topology,
                                  const platform::Platform &platform, std::size_t *swap_count) {
    const std::size_t n = topology.qubit_count;
    const auto adj = sorted_adjacency(topology);
    distance_matrix(topology);

    // BFS spanning tree rooted at 0.
    std::vector<std::vector<Qubit>> tree(n);
    std::vector<bool> seen(n, false);
    std::deque<Qubit> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        const Qubit u = queue.front();
        queue.pop_front();
        for (Qubit v : adj[u]) {
            if (seen[v]) continue;
            seen[v] = true;
            tree[u].push_back(v);
            tree[v].push_back(u);
            queue.push_back(v);
        }
    }

    std::vector<Gate> out;
    std::size_t swaps = 0;
    std::vector<bool> alive(n, true);
    auto degree = [&](Qubit p) {
        return static_cast<std::size_t>(std::count_if(tree[p].begin(), tree[p].end(), [&](Qubit q) { return alive[q]; }));
    };
    for (std::size_t remaining = n; remaining > 1; --remaining) {
        Qubit leaf = n;
        for (Qubit p = 0; p < n && leaf == n; ++p) {
            if (alive[p] && degree(p) == 1) leaf = p;
        }
        // Walk the wanted token from its position to the leaf inside the
        // remaining tree.
        const Qubit from = current.v2p[target.p2v[leaf]];
        std::vector<Qubit> parent(n, n);
        std::deque<Qubit> bfs{leaf};
        parent[leaf] = leaf;
        while (!bfs.empty()) {
            const Qubit u = bfs.front();
            bfs.pop_front();
            for (Qubit v : tree[u]) {
                if (!alive[v] || parent[v] != n) continue;
                parent[v] = u;
                bfs.push_back(v);
            }
        }
        for (Qubit p = from; p != leaf; p = parent[p]) {
            for (auto &g : swap_gates(p, parent[p], platform)) out.push_back(std::move(g));
            current.swap_physical(p, parent[p]);
            ++swaps;
        }
        alive[leaf] = false;
    }
    if (swap_count) *swap_count = swaps;
    return out;
}

} // namespace qlc::map
