/** \file
 * Built-in gate set and gate matrices.
 */

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "qlc/error.h"
#include "qlc/ir.h"

namespace qlc::ir {

namespace {

using std::numbers::pi;

const std::vector<StandardGate> &gate_table() {
    static const std::vector<StandardGate> table = {
        {"i", 1, false, true},       {"h", 1, false, true},      {"x", 1, false, true},
        {"y", 1, false, true},       {"z", 1, false, true},      {"rx", 1, true, true},
        {"ry", 1, true, true},       {"rz", 1, true, true},      {"x90", 1, false, true},
        {"y90", 1, false, true},     {"mx90", 1, false, true},   {"my90", 1, false, true},
        {"s", 1, false, true},       {"sdag", 1, false, true},   {"t", 1, false, true},
        {"tdag", 1, false, true},    {"cnot", 2, false, true},   {"toffoli", 3, false, true},
        {"cz", 2, false, true},      {"swap", 2, false, true},   {"measure", 1, false, false},
        {"prepz", 1, false, false},  {"display", 0, false, false},
    };
    return table;
}

struct FixedRotation {
    char axis;
    double angle;
};

// rx180, ry90, rxm90, rz45, ...
std::optional<FixedRotation> parse_fixed_rotation(std::string_view name) {
    if (name.size() < 3 || name[0] != 'r') return std::nullopt;
    char axis = name[1];
    if (axis != 'x' && axis != 'y' && axis != 'z') return std::nullopt;
    std::size_t pos = 2;
    double sign = 1.0;
    if (name[pos] == 'm') {
        sign = -1.0;
        ++pos;
    }
    if (pos >= name.size()) return std::nullopt;
    unsigned degrees = 0;
    auto digits = name.substr(pos);
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), degrees);
    if (ec != std::errc() || end != digits.data() + digits.size()) return std::nullopt;
    return FixedRotation{axis, sign * static_cast<double>(degrees) * pi / 180.0};
}

Matrix rotation(char axis, double theta) {
    switch (axis) {
        case 'x': return rx_matrix(theta);
        case 'y': return ry_matrix(theta);
        default: return rz_matrix(theta);
    }
}

Matrix make2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

} // namespace

std::string canonical_gate_name(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "hadamard") return "h";
    if (lower == "identity") return "i";
    if (lower == "cx") return "cnot";
    if (lower == "ccx") return "toffoli";
    return lower;
}

std::optional<StandardGate> standard_gate(std::string_view name) {
    for (const auto &g : gate_table()) {
        if (g.name == name) return g;
    }
    if (parse_fixed_rotation(name)) return StandardGate{std::string(name), 1, false, true};
    return std::nullopt;
}

Matrix rx_matrix(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return make2(c, Complex(0, -s), Complex(0, -s), c);
}

Matrix ry_matrix(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return make2(c, s, -s, c);
}

Matrix rz_matrix(double theta) {
    return make2(std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2));
}

bool has_matrix(const Gate &gate) {
    if (gate.matrix) return true;
    if (gate.kind == GateKind::custom || gate.kind == GateKind::directive) return false;
    auto info = standard_gate(gate.name);
    return info && info->unitary;
}

Matrix gate_unitary(const Gate &gate) {
    if (gate.matrix) return *gate.matrix;
    auto info = standard_gate(gate.name);
    if (!info || !info->unitary || gate.kind == GateKind::custom) {
        throw Error("ir", ErrorCode::NoMatrixAvailable, "gate '" + gate.name + "' has no matrix");
    }
    const std::string &n = gate.name;
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0, 1);
    if (n == "i") return Matrix::Identity(2, 2);
    if (n == "h") return make2(r, r, r, -r);
    if (n == "x") return make2(0, 1, 1, 0);
    if (n == "y") return make2(0, -i, i, 0);
    if (n == "z") return make2(1, 0, 0, -1);
    if (n == "s") return make2(1, 0, 0, i);
    if (n == "sdag") return make2(1, 0, 0, -i);
    if (n == "t") return make2(1, 0, 0, std::polar(1.0, pi / 4));
    if (n == "tdag") return make2(1, 0, 0, std::polar(1.0, -pi / 4));
    if (n == "rx" || n == "ry" || n == "rz") {
        if (!gate.angle) throw Error("ir", ErrorCode::MissingAngle, "gate '" + n + "' needs an angle");
        return rotation(n[1], *gate.angle);
    }
    if (n == "x90") return rx_matrix(pi / 2);
    if (n == "mx90") return rx_matrix(-pi / 2);
    if (n == "y90") return ry_matrix(pi / 2);
    if (n == "my90") return ry_matrix(-pi / 2);
    if (n == "cnot") {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
        return m;
    }
    if (n == "cz") {
        Matrix m = Matrix::Identity(4, 4);
        m(3, 3) = -1;
        return m;
    }
    if (n == "swap") {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
        return m;
    }
    if (n == "toffoli") {
        Matrix m = Matrix::Identity(8, 8);
        m(6, 6) = m(7, 7) = 0;
        m(6, 7) = m(7, 6) = 1;
        return m;
    }
    auto fixed = parse_fixed_rotation(n);
    return rotation(fixed->axis, fixed->angle);
}

Gate inverse(const Gate &gate) {
    Gate inv = gate;
    if (gate.kind == GateKind::directive) return inv;
    if (gate.matrix) {
        inv.name = gate.name + "_dag";
        inv.matrix = gate.matrix->adjoint();
        return inv;
    }
    const std::string &n = gate.name;
    if (n == "measure" || n == "prepz" || gate.kind == GateKind::custom) {
        throw Error("ir", ErrorCode::NoMatrixAvailable, "gate '" + n + "' has no inverse");
    }
    if (n == "rx" || n == "ry" || n == "rz") {
        inv.angle = -gate.angle.value_or(0.0);
    } else if (n == "s") {
        inv.name = "sdag";
    } else if (n == "sdag") {
        inv.name = "s";
    } else if (n == "t") {
        inv.name = "tdag";
    } else if (n == "tdag") {
        inv.name = "t";
    } else if (n == "x90" || n == "y90") {
        inv.name = "m" + n;
    } else if (n == "mx90" || n == "my90") {
        inv.name = n.substr(1);
    } else if (auto fixed = parse_fixed_rotation(n)) {
        // rxNN <-> rxmNN
        inv.name = n[2] == 'm' ? n.substr(0, 2) + n.substr(3) : n.substr(0, 2) + "m" + n.substr(2);
    }
    return inv;
}

bool is_unitary(const Matrix &m, double tolerance) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    Matrix product = m.adjoint() * m;
    return (product - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tolerance;
}

} // namespace qlc::ir
