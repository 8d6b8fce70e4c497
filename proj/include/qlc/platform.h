/** \file
 * Hardware configuration: instruction definitions, decomposition rules,
 * resources and topology, loaded from a JSON document.
 *
 * Document layout:
 *
 *     {
 *       "eqasm_compiler": "...",
 *       "hardware_settings": { "qubit_number": N, "cycle_time": ns, "<a>_<b>_buffer": ns, ... },
 *       "instructions": { "<name>[ q<i>[,q<j>...]]": { "duration": ns, "latency": ns,
 *                         "qubits": [...], "matrix": [[re,im], ...], "disable_optimization": bool,
 *                         "type": "mw"|"flux"|"readout"|"none",
 *                         "uses": [{"resource": r, "units": u, "qubits": [...]}], ... } },
 *       "gate_decomposition": { "<gate text>": ["<gate text>", ...] },
 *       "resources": { "<name>": { "count": k,
 *                       "usage": [{"match": type-or-name, "units": u, "qubits": [...]}] } },
 *       "topology": { "qubit_count": N, "edges": [[a, b], ...] }
 *     }
 *
 * Unknown keys inside an instruction are carried through untouched.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlc/ir.h"

namespace qlc::platform {

using ir::Qubit;

enum class InstructionType { mw, flux, readout, none };

std::string_view to_string(InstructionType type);

/// One claim on a shared resource. An empty qubit list applies to every gate;
/// otherwise the claim applies when the gate touches one of the listed qubits.
struct ResourceUse {
    std::string resource;
    std::size_t units = 1;
    std::vector<Qubit> qubits;
};

/// Resource-level usage rule, matched against an instruction's type or name.
struct ResourceUsage {
    std::string match;
    std::size_t units = 1;
    std::vector<Qubit> qubits;
};

struct ResourceModel {
    std::map<std::string, std::size_t> counts;
    std::map<std::string, std::vector<ResourceUsage>> usage;

    bool empty() const noexcept { return counts.empty(); }
};

struct Topology {
    std::size_t qubit_count = 0;
    std::vector<std::pair<Qubit, Qubit>> edges;

    bool adjacent(Qubit a, Qubit b) const;
    std::vector<std::vector<Qubit>> adjacency() const;
};

struct InstructionDef {
    std::string key;                              ///< key as written, e.g. "rx180 q1"
    std::string name;                             ///< gate name part of the key
    std::optional<std::vector<Qubit>> operands;   ///< set for per-qubit entries
    std::int64_t duration_ns = 0;
    std::size_t duration_cycles = 0;              ///< ceil(duration_ns / cycle_time)
    std::int64_t latency_ns = 0;
    std::vector<std::string> qubits;
    std::optional<ir::Matrix> matrix;
    bool disable_optimization = false;
    InstructionType type = InstructionType::none;
    std::vector<ResourceUse> uses;
    std::string backend_opaque = "{}";            ///< remaining keys, as a JSON object
};

/// A gate written as text inside the configuration, e.g. "cz q0,q1".
struct GateText {
    std::string name;
    std::vector<std::string> operands;
};

GateText parse_gate_text(std::string_view text);

struct DecompositionRule {
    std::string key;
    GateText pattern;
    std::vector<GateText> body;
};

struct Platform {
    std::string name;
    std::string eqasm_compiler;
    std::size_t qubit_number = 0;
    std::int64_t cycle_time_ns = 1;
    std::map<std::string, std::int64_t> buffers;  ///< "mw_flux" -> ns
    std::string extra_settings = "{}";            ///< unrecognized hardware_settings keys
    std::map<std::string, InstructionDef> instructions;
    std::vector<DecompositionRule> decompositions;
    ResourceModel resources;
    std::optional<Topology> topology;

    /// A platform without instructions, used for technology-independent runs.
    static Platform simulation(std::size_t qubits);
};

/// Parses and validates a configuration document. Throws ParseError,
/// SchemaError or ValidationError with the offending location.
Platform load_platform(std::string_view document, std::string name = "");
Platform load_platform_file(const std::string &path, std::string name = "");

/// Serializes every recognized field back to a JSON document.
std::string to_json(const Platform &platform);

/// Specialized "name qA,qB" entry first, then the generic "name" entry.
const InstructionDef *find_instruction(const Platform &platform, const ir::Gate &gate);
const InstructionDef &lookup_instruction(const Platform &platform, const ir::Gate &gate);

/// True when `name` is defined by an instruction or a decomposition rule.
bool knows_gate(const Platform &platform, std::string_view name);

/// Fills duration, optimization barrier and custom matrix from the platform.
void resolve(const Platform &platform, ir::Gate &gate);
void resolve_all(const Platform &platform, std::vector<ir::Gate> &gates);

const DecompositionRule *find_decomposition(const Platform &platform, const ir::Gate &gate);

/// Expands a gate through the decomposition rules until no rule applies.
/// A gate without a rule comes back unchanged. Throws DecompositionCycle and
/// UnboundOperand.
std::vector<ir::Gate> apply_custom_decomposition(const Platform &platform, const ir::Gate &gate);

/// Duration in cycles; gates without an entry take one cycle.
std::size_t duration_cycles(const Platform &platform, const ir::Gate &gate);
InstructionType instruction_type(const Platform &platform, const ir::Gate &gate);
std::int64_t latency_ns(const Platform &platform, const ir::Gate &gate);

/// Minimum gap in cycles between a gate of type `prev` and a following gate
/// of type `next` on the same qubit, from the "<prev>_<next>_buffer" setting.
std::size_t buffer_cycles(const Platform &platform, InstructionType prev, InstructionType next);

struct ResourceClaim {
    std::string resource;
    std::size_t units;
};

/// All resource claims a gate makes while it executes.
std::vector<ResourceClaim> resource_claims(const Platform &platform, const ir::Gate &gate);

std::size_t ceil_div(std::int64_t value, std::int64_t divisor);

} // namespace qlc::platform
