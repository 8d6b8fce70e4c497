/** \file
 * Hardware configuration loading, lookup and custom decomposition.
 */

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "qlc/error.h"
#include "qlc/platform.h"

namespace qlc::platform {

using json = nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string &path, const std::string &what) {
    throw Error("platform", ErrorCode::SchemaError, path + ": " + what);
}

[[noreturn]] void validation_error(const std::string &path, const std::string &what) {
    throw Error("platform", ErrorCode::ValidationError, path + ": " + what);
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// "q3" or "q[3]" -> 3
std::optional<Qubit> literal_qubit(std::string_view token) {
    if (token.size() < 2 || token[0] != 'q') return std::nullopt;
    std::string_view digits = token.substr(1);
    if (digits.front() == '[') {
        if (digits.back() != ']') return std::nullopt;
        digits = digits.substr(1, digits.size() - 2);
    }
    if (digits.empty()) return std::nullopt;
    Qubit value = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        value = value * 10 + static_cast<Qubit>(c - '0');
    }
    return value;
}

std::string normalized_key(std::string_view name, const std::vector<Qubit> &operands) {
    std::string key(name);
    for (std::size_t i = 0; i < operands.size(); ++i) {
        key += i == 0 ? " q" : ",q";
        key += std::to_string(operands[i]);
    }
    return key;
}

const json &require(const json &obj, const std::string &key, const std::string &path) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(path, "missing required field '" + key + "'");
    return *it;
}

std::int64_t as_int(const json &value, const std::string &path) {
    if (!value.is_number_integer()) schema_error(path, "expected an integer");
    return value.get<std::int64_t>();
}

std::int64_t as_positive(const json &value, const std::string &path) {
    auto v = as_int(value, path);
    if (v <= 0) schema_error(path, "expected a positive integer");
    return v;
}

std::string as_string(const json &value, const std::string &path) {
    if (!value.is_string()) schema_error(path, "expected a string");
    return value.get<std::string>();
}

const json &as_object(const json &value, const std::string &path) {
    if (!value.is_object()) schema_error(path, "expected an object");
    return value;
}

const json &as_array(const json &value, const std::string &path) {
    if (!value.is_array()) schema_error(path, "expected an array");
    return value;
}

std::vector<Qubit> as_qubit_list(const json &value, const std::string &path) {
    std::vector<Qubit> out;
    for (std::size_t i = 0; i < as_array(value, path).size(); ++i) {
        auto q = as_int(value[i], path + "/" + std::to_string(i));
        if (q < 0) schema_error(path, "negative qubit index");
        out.push_back(static_cast<Qubit>(q));
    }
    return out;
}

InstructionType parse_type(const json &value, const std::string &path) {
    auto s = as_string(value, path);
    if (s == "mw") return InstructionType::mw;
    if (s == "flux") return InstructionType::flux;
    if (s == "readout") return InstructionType::readout;
    if (s == "none") return InstructionType::none;
    schema_error(path, "unknown instruction type '" + s + "'");
}

ir::Matrix parse_matrix(const json &value, const std::string &path) {
    const auto &entries = as_array(value, path);
    const auto count = entries.size();
    std::size_t dim = 1;
    while (dim * dim < count) dim *= 2;
    if (count < 4 || dim * dim != count) {
        schema_error(path, "matrix must hold 4^k [re, im] pairs");
    }
    ir::Matrix m(dim, dim);
    for (std::size_t i = 0; i < count; ++i) {
        const auto &pair = entries[i];
        const auto elem_path = path + "/" + std::to_string(i);
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            schema_error(elem_path, "expected [re, im]");
        }
        m(i / dim, i % dim) = ir::Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    if (!ir::is_unitary(m, 1e-6)) validation_error(path, "matrix is not unitary");
    return m;
}

json matrix_to_json(const ir::Matrix &m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    return out;
}

std::string line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

bool selector_matches(const std::vector<Qubit> &selector, const ir::Gate &gate) {
    if (selector.empty()) return true;
    return std::any_of(gate.operands.begin(), gate.operands.end(), [&](Qubit q) {
        return std::find(selector.begin(), selector.end(), q) != selector.end();
    });
}

InstructionDef parse_instruction(const std::string &key, const json &value, std::int64_t cycle_time,
                                 const std::string &path) {
    as_object(value, path);
    InstructionDef def;
    def.key = key;
    auto text = parse_gate_text(key);
    if (text.name.empty()) schema_error(path, "empty instruction name");
    def.name = text.name;
    if (!text.operands.empty()) {
        std::vector<Qubit> operands;
        for (const auto &tok : text.operands) {
            auto q = literal_qubit(tok);
            if (!q) schema_error(path, "operand '" + tok + "' is not a qubit");
            operands.push_back(*q);
        }
        def.operands = std::move(operands);
    }
    def.duration_ns = as_positive(require(value, "duration", path), path + "/duration");
    def.duration_cycles = ceil_div(def.duration_ns, cycle_time);
    json opaque = json::object();
    for (auto it = value.begin(); it != value.end(); ++it) {
        const auto &field = it.key();
        const auto field_path = path + "/" + field;
        if (field == "duration") continue;
        if (field == "latency") {
            def.latency_ns = as_int(*it, field_path);
        } else if (field == "qubits") {
            for (const auto &q : as_array(*it, field_path)) def.qubits.push_back(as_string(q, field_path));
        } else if (field == "matrix") {
            def.matrix = parse_matrix(*it, field_path);
        } else if (field == "disable_optimization") {
            if (!it->is_boolean()) schema_error(field_path, "expected a boolean");
            def.disable_optimization = it->get<bool>();
        } else if (field == "type") {
            def.type = parse_type(*it, field_path);
        } else if (field == "uses") {
            for (std::size_t i = 0; i < as_array(*it, field_path).size(); ++i) {
                const auto use_path = field_path + "/" + std::to_string(i);
                const auto &entry = as_object((*it)[i], use_path);
                ResourceUse use;
                use.resource = as_string(require(entry, "resource", use_path), use_path + "/resource");
                if (entry.contains("units")) {
                    use.units = static_cast<std::size_t>(as_positive(entry["units"], use_path + "/units"));
                }
                if (entry.contains("qubits")) use.qubits = as_qubit_list(entry["qubits"], use_path + "/qubits");
                def.uses.push_back(std::move(use));
            }
        } else {
            opaque[field] = *it;
        }
    }
    def.backend_opaque = opaque.dump();
    return def;
}

} // namespace

std::string_view to_string(InstructionType type) {
    switch (type) {
        case InstructionType::mw: return "mw";
        case InstructionType::flux: return "flux";
        case InstructionType::readout: return "readout";
        case InstructionType::none: return "none";
    }
    return "none";
}

std::size_t ceil_div(std::int64_t value, std::int64_t divisor) {
    return static_cast<std::size_t>((value + divisor - 1) / divisor);
}

bool Topology::adjacent(Qubit a, Qubit b) const {
    return std::any_of(edges.begin(), edges.end(), [&](const auto &e) {
        return (e.first == a && e.second == b) || (e.first == b && e.second == a);
    });
}

std::vector<std::vector<Qubit>> Topology::adjacency() const {
    std::vector<std::vector<Qubit>> adj(qubit_count);
    for (const auto &[a, b] : edges) {
        if (std::find(adj[a].begin(), adj[a].end(), b) == adj[a].end()) adj[a].push_back(b);
        if (std::find(adj[b].begin(), adj[b].end(), a) == adj[b].end()) adj[b].push_back(a);
    }
    for (auto &n : adj) std::sort(n.begin(), n.end());
    return adj;
}

GateText parse_gate_text(std::string_view text) {
    GateText out;
    std::string s = trim(text);
    auto space = s.find_first_of(" \t");
    out.name = ir::canonical_gate_name(s.substr(0, space));
    if (space == std::string::npos) return out;
    std::string rest = s.substr(space + 1);
    std::stringstream ss(rest);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        std::transform(token.begin(), token.end(), token.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (auto q = literal_qubit(token)) token = "q" + std::to_string(*q);
        if (!token.empty()) out.operands.push_back(token);
    }
    return out;
}

Platform Platform::simulation(std::size_t qubits) {
    Platform p;
    p.name = "simulation";
    p.eqasm_compiler = "none";
    p.qubit_number = qubits;
    p.cycle_time_ns = 1;
    return p;
}

Platform load_platform(std::string_view document, std::string name) {
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error &e) {
        throw Error("platform", ErrorCode::ParseError,
                    line_and_column(document, e.byte) + ": " + e.what());
    }
    as_object(doc, "/");

    Platform p;
    p.name = std::move(name);
    p.eqasm_compiler = as_string(require(doc, "eqasm_compiler", "/"), "/eqasm_compiler");

    const auto &settings = as_object(require(doc, "hardware_settings", "/"), "/hardware_settings");
    p.qubit_number = static_cast<std::size_t>(
        as_positive(require(settings, "qubit_number", "/hardware_settings"), "/hardware_settings/qubit_number"));
    p.cycle_time_ns = as_positive(require(settings, "cycle_time", "/hardware_settings"), "/hardware_settings/cycle_time");
    json extra = json::object();
    for (auto it = settings.begin(); it != settings.end(); ++it) {
        const auto &key = it.key();
        if (key == "qubit_number" || key == "cycle_time") continue;
        const std::string suffix = "_buffer";
        if (key.size() > suffix.size() && key.ends_with(suffix)) {
            p.buffers[key.substr(0, key.size() - suffix.size())] = as_int(*it, "/hardware_settings/" + key);
        } else {
            extra[key] = *it;
        }
    }
    p.extra_settings = extra.dump();

    const auto &instructions = as_object(require(doc, "instructions", "/"), "/instructions");
    for (auto it = instructions.begin(); it != instructions.end(); ++it) {
        auto def = parse_instruction(it.key(), *it, p.cycle_time_ns, "/instructions/" + it.key());
        auto key = normalized_key(def.name, def.operands.value_or(std::vector<Qubit>{}));
        if (p.instructions.count(key)) validation_error("/instructions/" + it.key(), "duplicate instruction");
        p.instructions.emplace(std::move(key), std::move(def));
    }

    if (doc.contains("resources")) {
        const auto &res = as_object(doc["resources"], "/resources");
        for (auto it = res.begin(); it != res.end(); ++it) {
            const auto path = "/resources/" + it.key();
            const auto &entry = as_object(*it, path);
            p.resources.counts[it.key()] =
                static_cast<std::size_t>(as_positive(require(entry, "count", path), path + "/count"));
            auto &rules = p.resources.usage[it.key()];
            if (entry.contains("usage")) {
                const auto &usage = as_array(entry["usage"], path + "/usage");
                for (std::size_t i = 0; i < usage.size(); ++i) {
                    const auto rule_path = path + "/usage/" + std::to_string(i);
                    const auto &rule = as_object(usage[i], rule_path);
                    ResourceUsage u;
                    u.match = as_string(require(rule, "match", rule_path), rule_path + "/match");
                    if (rule.contains("units")) {
                        u.units = static_cast<std::size_t>(as_positive(rule["units"], rule_path + "/units"));
                    }
                    if (rule.contains("qubits")) u.qubits = as_qubit_list(rule["qubits"], rule_path + "/qubits");
                    rules.push_back(std::move(u));
                }
            }
        }
    }
    for (const auto &[key, def] : p.instructions) {
        for (const auto &use : def.uses) {
            if (!p.resources.counts.count(use.resource)) {
                validation_error("/instructions/" + def.key + "/uses",
                                 "unknown resource '" + use.resource + "'");
            }
        }
    }

    if (doc.contains("topology")) {
        const auto &topo = as_object(doc["topology"], "/topology");
        if (!topo.empty()) {
            Topology t;
            t.qubit_count = static_cast<std::size_t>(
                as_positive(require(topo, "qubit_count", "/topology"), "/topology/qubit_count"));
            if (topo.contains("edges")) {
                const auto &edges = as_array(topo["edges"], "/topology/edges");
                for (std::size_t i = 0; i < edges.size(); ++i) {
                    const auto path = "/topology/edges/" + std::to_string(i);
                    auto pair = as_qubit_list(edges[i], path);
                    if (pair.size() != 2) schema_error(path, "edge must have two endpoints");
                    if (pair[0] >= t.qubit_count || pair[1] >= t.qubit_count) {
                        validation_error(path, "edge endpoint out of range");
                    }
                    if (pair[0] == pair[1]) validation_error(path, "self edge");
                    t.edges.emplace_back(pair[0], pair[1]);
                }
            }
            p.topology = std::move(t);
        }
    }

    if (doc.contains("gate_decomposition")) {
        const auto &rules = as_object(doc["gate_decomposition"], "/gate_decomposition");
        for (auto it = rules.begin(); it != rules.end(); ++it) {
            const auto path = "/gate_decomposition/" + it.key();
            DecompositionRule rule;
            rule.key = it.key();
            rule.pattern = parse_gate_text(it.key());
            for (const auto &entry : as_array(*it, path)) {
                rule.body.push_back(parse_gate_text(as_string(entry, path)));
            }
            p.decompositions.push_back(std::move(rule));
        }
        for (const auto &rule : p.decompositions) {
            for (const auto &g : rule.body) {
                bool defined = ir::standard_gate(g.name).has_value() || knows_gate(p, g.name);
                if (!defined) {
                    validation_error("/gate_decomposition/" + rule.key,
                                     "references undefined gate '" + g.name + "'");
                }
            }
        }
    }
    return p;
}

Platform load_platform_file(const std::string &path, std::string name) {
    std::ifstream in(path);
    if (!in) throw Error("platform", ErrorCode::ConfigNotFound, "cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_platform(buffer.str(), std::move(name));
}

std::string to_json(const Platform &p) {
    json doc;
    doc["eqasm_compiler"] = p.eqasm_compiler;
    json settings = json::parse(p.extra_settings);
    settings["qubit_number"] = p.qubit_number;
    settings["cycle_time"] = p.cycle_time_ns;
    for (const auto &[key, ns] : p.buffers) settings[key + "_buffer"] = ns;
    doc["hardware_settings"] = settings;

    json instructions = json::object();
    for (const auto &[key, def] : p.instructions) {
        json entry = json::parse(def.backend_opaque);
        entry["duration"] = def.duration_ns;
        entry["latency"] = def.latency_ns;
        entry["qubits"] = def.qubits;
        if (def.matrix) entry["matrix"] = matrix_to_json(*def.matrix);
        entry["disable_optimization"] = def.disable_optimization;
        entry["type"] = std::string(to_string(def.type));
        if (!def.uses.empty()) {
            json uses = json::array();
            for (const auto &u : def.uses) {
                json e = {{"resource", u.resource}, {"units", u.units}};
                if (!u.qubits.empty()) e["qubits"] = u.qubits;
                uses.push_back(e);
            }
            entry["uses"] = uses;
        }
        instructions[def.key] = entry;
    }
    doc["instructions"] = instructions;

    json rules = json::object();
    for (const auto &rule : p.decompositions) {
        json body = json::array();
        for (const auto &g : rule.body) {
            std::string text = g.name;
            for (std::size_t i = 0; i < g.operands.size(); ++i) text += (i == 0 ? " " : ",") + g.operands[i];
            body.push_back(text);
        }
        rules[rule.key] = body;
    }
    doc["gate_decomposition"] = rules;

    json resources = json::object();
    for (const auto &[name, count] : p.resources.counts) {
        json entry = {{"count", count}};
        auto it = p.resources.usage.find(name);
        if (it != p.resources.usage.end() && !it->second.empty()) {
            json usage = json::array();
            for (const auto &u : it->second) {
                json e = {{"match", u.match}, {"units", u.units}};
                if (!u.qubits.empty()) e["qubits"] = u.qubits;
                usage.push_back(e);
            }
            entry["usage"] = usage;
        }
        resources[name] = entry;
    }
    doc["resources"] = resources;

    json topology = json::object();
    if (p.topology) {
        topology["qubit_count"] = p.topology->qubit_count;
        json edges = json::array();
        for (const auto &[a, b] : p.topology->edges) edges.push_back(json::array({a, b}));
        topology["edges"] = edges;
    }
    doc["topology"] = topology;
    return doc.dump(3);
}

const InstructionDef *find_instruction(const Platform &platform, const ir::Gate &gate) {
    if (!gate.operands.empty()) {
        auto it = platform.instructions.find(normalized_key(gate.name, gate.operands));
        if (it != platform.instructions.end()) return &it->second;
    }
    auto it = platform.instructions.find(gate.name);
    if (it != platform.instructions.end()) return &it->second;
    return nullptr;
}

const InstructionDef &lookup_instruction(const Platform &platform, const ir::Gate &gate) {
    if (const auto *def = find_instruction(platform, gate)) return *def;
    throw Error("platform", ErrorCode::UnknownInstruction, "no instruction for '" + gate.to_string() + "'");
}

bool knows_gate(const Platform &platform, std::string_view name) {
    for (const auto &[key, def] : platform.instructions) {
        if (def.name == name) return true;
    }
    for (const auto &rule : platform.decompositions) {
        if (rule.pattern.name == name) return true;
    }
    return false;
}

void resolve(const Platform &platform, ir::Gate &gate) {
    const auto *def = find_instruction(platform, gate);
    if (!def) return;
    gate.duration_cycles = def->duration_cycles;
    gate.disable_optimization = def->disable_optimization;
    if (!ir::standard_gate(gate.name) && def->matrix && !gate.matrix &&
        static_cast<std::size_t>(def->matrix->rows()) == (std::size_t{1} << gate.operands.size())) {
        gate.matrix = def->matrix;
        gate.kind = ir::GateKind::custom;
    }
}

void resolve_all(const Platform &platform, std::vector<ir::Gate> &gates) {
    for (auto &g : gates) resolve(platform, g);
}

const DecompositionRule *find_decomposition(const Platform &platform, const ir::Gate &gate) {
    const DecompositionRule *placeholder = nullptr;
    const DecompositionRule *literal = nullptr;
    for (const auto &rule : platform.decompositions) {
        if (rule.pattern.name != gate.name || rule.pattern.operands.size() != gate.operands.size()) continue;
        bool all_literal = true, exact = true;
        for (std::size_t i = 0; i < gate.operands.size(); ++i) {
            auto q = literal_qubit(rule.pattern.operands[i]);
            if (!q) {
                all_literal = false;
                exact = false;
            } else if (*q != gate.operands[i]) {
                exact = false;
            }
        }
        if (exact) return &rule;
        if (!all_literal && !placeholder) placeholder = &rule;
        if (all_literal && !literal) literal = &rule;
    }
    return placeholder ? placeholder : literal;
}

namespace {

void expand(const Platform &platform, const ir::Gate &gate, std::vector<const DecompositionRule *> &stack,
            std::vector<ir::Gate> &out) {
    const auto *rule = find_decomposition(platform, gate);
    if (!rule) {
        out.push_back(gate);
        return;
    }
    if (std::find(stack.begin(), stack.end(), rule) != stack.end()) {
        throw Error("platform", ErrorCode::DecompositionCycle,
                    "rule '" + rule->key + "' expands into itself via '" + gate.to_string() + "'");
    }
    stack.push_back(rule);
    for (const auto &text : rule->body) {
        ir::Gate g(text.name, {});
        for (const auto &tok : text.operands) {
            auto pos = std::find(rule->pattern.operands.begin(), rule->pattern.operands.end(), tok);
            if (pos == rule->pattern.operands.end()) {
                throw Error("platform", ErrorCode::UnboundOperand,
                            "operand '" + tok + "' in rule '" + rule->key + "' is not bound by its pattern");
            }
            g.operands.push_back(gate.operands[static_cast<std::size_t>(pos - rule->pattern.operands.begin())]);
        }
        if (!ir::standard_gate(g.name)) g.kind = ir::GateKind::custom;
        resolve(platform, g);
        expand(platform, g, stack, out);
    }
    stack.pop_back();
}

} // namespace

std::vector<ir::Gate> apply_custom_decomposition(const Platform &platform, const ir::Gate &gate) {
    std::vector<const DecompositionRule *> stack;
    std::vector<ir::Gate> out;
    expand(platform, gate, stack, out);
    return out;
}

std::size_t duration_cycles(const Platform &platform, const ir::Gate &gate) {
    if (const auto *def = find_instruction(platform, gate)) return def->duration_cycles;
    return 1;
}

InstructionType instruction_type(const Platform &platform, const ir::Gate &gate) {
    if (const auto *def = find_instruction(platform, gate)) return def->type;
    return InstructionType::none;
}

std::int64_t latency_ns(const Platform &platform, const ir::Gate &gate) {
    if (const auto *def = find_instruction(platform, gate)) return def->latency_ns;
    return 0;
}

std::size_t buffer_cycles(const Platform &platform, InstructionType prev, InstructionType next) {
    if (prev == InstructionType::none || next == InstructionType::none) return 0;
    auto key = std::string(to_string(prev)) + "_" + std::string(to_string(next));
    auto it = platform.buffers.find(key);
    if (it == platform.buffers.end() || it->second <= 0) return 0;
    return ceil_div(it->second, platform.cycle_time_ns);
}

std::vector<ResourceClaim> resource_claims(const Platform &platform, const ir::Gate &gate) {
    std::vector<ResourceClaim> claims;
    const auto *def = find_instruction(platform, gate);
    if (!def) return claims;
    for (const auto &use : def->uses) {
        if (selector_matches(use.qubits, gate)) claims.push_back({use.resource, use.units});
    }
    const auto type = std::string(to_string(def->type));
    for (const auto &[resource, rules] : platform.resources.usage) {
        for (const auto &rule : rules) {
            if ((rule.match == type || rule.match == def->name) && selector_matches(rule.qubits, gate)) {
                claims.push_back({resource, rule.units});
            }
        }
    }
    return claims;
}

} // namespace qlc::platform
