/** \file
 * cQASM writer and reader.
 */

#include <cctype>
#include <charconv>
#include <sstream>

#include "qlc/emit.h"
#include "qlc/error.h"

namespace qlc::emit {

namespace {

constexpr std::string_view INDENT = "    ";

std::string number(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

bool range_member(const Gate &g) {
    return g.operands.size() == 1 && !g.angle && g.kind != ir::GateKind::directive;
}

// Unscheduled statements: gate runs over q[i], q[i+1], ... become ranges.
void emit_unscheduled(std::span<const Gate> gates, std::string &out) {
    for (std::size_t i = 0; i < gates.size();) {
        std::size_t j = i + 1;
        if (range_member(gates[i])) {
            while (j < gates.size() && range_member(gates[j]) && gates[j].name == gates[i].name &&
                   gates[j].operands[0] == gates[j - 1].operands[0] + 1) {
                ++j;
            }
        }
        out += INDENT;
        if (j - i >= 2) {
            out += gates[i].name + " q[" + std::to_string(gates[i].operands[0]) + ":" +
                   std::to_string(gates[j - 1].operands[0]) + "]";
        } else {
            out += format_gate(gates[i]);
        }
        out += '\n';
        i = j;
    }
}

void emit_scheduled(const schedule::Schedule &s, std::string &out) {
    for (const auto &[cycle, members] : s.bundles()) {
        out += INDENT;
        if (members.size() == 1) {
            out += format_gate(s.gates[members[0]]);
        } else {
            out += "{ ";
            for (std::size_t k = 0; k < members.size(); ++k) {
                if (k > 0) out += " | ";
                out += format_gate(s.gates[members[k]]);
            }
            out += " }";
        }
        out += '\n';
    }
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail(std::size_t line, const std::string &message) {
    throw Error("emit", ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message);
}

std::size_t parse_index(std::string_view text, std::size_t line) {
    std::size_t value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) fail(line, "bad number '" + std::string(text) + "'");
    return value;
}

// One gate statement; a range operand expands into one gate per qubit.
std::vector<Gate> parse_statement(const std::string &text, std::size_t line) {
    const auto space = text.find_first_of(" \t");
    std::string name = text.substr(0, space);
    for (auto &c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (name.empty()) fail(line, "empty statement");
    Gate proto(name, {});
    if (name == "display") proto.kind = ir::GateKind::directive;
    else if (!ir::standard_gate(name)) proto.kind = ir::GateKind::custom;

    std::optional<std::pair<std::size_t, std::size_t>> range;
    if (space != std::string::npos) {
        std::stringstream rest(text.substr(space));
        std::string token;
        while (std::getline(rest, token, ',')) {
            token = trim(token);
            if (token.empty()) fail(line, "empty operand");
            if (token.rfind("q[", 0) == 0 && token.back() == ']') {
                const auto inner = std::string_view(token).substr(2, token.size() - 3);
                const auto colon = inner.find(':');
                if (colon != std::string_view::npos) {
                    if (range || !proto.operands.empty()) fail(line, "a range must be the only operand");
                    range = {parse_index(inner.substr(0, colon), line), parse_index(inner.substr(colon + 1), line)};
                    if (range->first > range->second) fail(line, "descending range");
                } else {
                    if (range) fail(line, "a range must be the only operand");
                    proto.operands.push_back(parse_index(inner, line));
                }
            } else {
                double angle = 0;
                auto res = std::from_chars(token.data(), token.data() + token.size(), angle);
                if (res.ec != std::errc() || res.ptr != token.data() + token.size() || proto.angle) {
                    fail(line, "unexpected operand '" + token + "'");
                }
                proto.angle = angle;
            }
        }
    }
    if (!range) return {proto};
    std::vector<Gate> out;
    for (std::size_t q = range->first; q <= range->second; ++q) {
        Gate g = proto;
        g.operands = {q};
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace

std::string format_gate(const Gate &gate) {
    std::string out = gate.name;
    for (std::size_t i = 0; i < gate.operands.size(); ++i) {
        out += i == 0 ? " " : ",";
        out += "q[" + std::to_string(gate.operands[i]) + "]";
    }
    if (gate.angle) out += ", " + number(*gate.angle);
    return out;
}

std::string emit_cqasm(const ir::Program &program, std::span<const schedule::Schedule> schedules) {
    std::string out = "version 1.0\nqubits " + std::to_string(program.qubit_count()) + "\n";
    const auto kernels = program.kernels();
    for (std::size_t k = 0; k < kernels.size(); ++k) {
        const auto &kernel = kernels[k];
        out += "\n." + kernel.name();
        if (kernel.iterations()) out += "(" + std::to_string(*kernel.iterations()) + ")";
        out += '\n';
        if (k < schedules.size()) {
            emit_scheduled(schedules[k], out);
        } else {
            emit_unscheduled(kernel.gates(), out);
        }
    }
    return out;
}

CqasmDocument parse_cqasm(std::string_view text) {
    CqasmDocument doc;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0, statement = 0;
    auto current = [&]() -> ParsedKernel & {
        if (doc.kernels.empty()) doc.kernels.push_back({"main", std::nullopt, {}, {}});
        return doc.kernels.back();
    };
    while (std::getline(in, raw)) {
        ++line;
        auto body = trim(raw.substr(0, raw.find('#')));
        if (body.empty()) continue;
        if (body.rfind("version", 0) == 0 && (body.size() == 7 || std::isspace(static_cast<unsigned char>(body[7])))) {
            doc.version = trim(body.substr(7));
            continue;
        }
        if (body.rfind("qubits", 0) == 0 && body.size() > 6 && std::isspace(static_cast<unsigned char>(body[6]))) {
            doc.qubits = parse_index(trim(body.substr(6)), line);
            continue;
        }
        if (body[0] == '.') {
            ParsedKernel k;
            const auto paren = body.find('(');
            k.name = trim(body.substr(1, paren == std::string::npos ? std::string::npos : paren - 1));
            if (k.name.empty()) fail(line, "section without a name");
            if (paren != std::string::npos) {
                if (body.back() != ')') fail(line, "unterminated iteration count");
                k.iterations = parse_index(trim(body.substr(paren + 1, body.size() - paren - 2)), line);
            }
            doc.kernels.push_back(std::move(k));
            continue;
        }
        std::vector<std::string> parts;
        if (body[0] == '{') {
            if (body.back() != '}') fail(line, "unterminated bundle");
            std::stringstream members(body.substr(1, body.size() - 2));
            std::string member;
            while (std::getline(members, member, '|')) parts.push_back(trim(member));
        } else {
            parts.push_back(body);
        }
        auto &kernel = current();
        for (const auto &part : parts) {
            for (auto &g : parse_statement(part, line)) {
                kernel.gates.push_back(std::move(g));
                kernel.statement.push_back(statement);
            }
        }
        ++statement;
    }
    for (const auto &k : doc.kernels) {
        for (const auto &g : k.gates) {
            for (auto q : g.operands) {
                if (doc.qubits > 0 && q >= doc.qubits) {
                    throw Error("emit", ErrorCode::ParseError,
                                "qubit " + std::to_string(q) + " outside the " + std::to_string(doc.qubits) +
                                    " declared qubits");
                }
            }
        }
    }
    return doc;
}

} // namespace qlc::emit
