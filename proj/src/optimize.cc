/** \file
 * Sliding-window fusion of single-qubit gate runs.
 */

#include <cmath>
#include <numbers>

#include "qlc/decompose.h"
#include "qlc/error.h"
#include "qlc/optimize.h"

namespace qlc::optimize {

namespace {

// Maps an angle to (-pi, pi]; rotations differing by 2 pi differ only in
// global phase.
double normalize_angle(double angle) {
    constexpr double two_pi = 2 * std::numbers::pi;
    double a = std::remainder(angle, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    return a;
}

Matrix run_product(std::span<const Gate> run) {
    Matrix product = Matrix::Identity(2, 2);
    for (const auto &g : run) product = ir::gate_unitary(g) * product;
    return product;
}

Matrix product_on_one_qubit(const std::vector<Gate> &gates) {
    Matrix product = Matrix::Identity(2, 2);
    for (const auto &g : gates) product = ir::gate_unitary(g) * product;
    return product;
}

} // namespace

double unitary_distance(const Matrix &u, const Matrix &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw Error("optimize", ErrorCode::DimMismatch,
                    std::to_string(u.rows()) + "x" + std::to_string(u.cols()) + " vs " + std::to_string(v.rows()) +
                        "x" + std::to_string(v.cols()));
    }
    const ir::Complex overlap = (u.adjoint() * v).trace();
    const double dim = static_cast<double>(u.rows());
    // ||e^{i psi} U - V||_F^2 = 2 dim - 2 |tr(U^dag V)| for unitaries; going
    // through the residual keeps tiny distances from drowning in rounding.
    const Matrix residual = u * std::polar(1.0, std::arg(overlap)) - v;
    return residual.norm() / std::sqrt(2 * dim);
}

bool is_fusable(const Gate &gate) {
    return gate.operands.size() == 1 && !gate.disable_optimization && gate.kind != ir::GateKind::directive &&
           ir::has_matrix(gate);
}

std::optional<std::vector<Gate>> fuse_single_qubit_run(std::span<const Gate> run, double epsilon) {
    if (run.empty()) return std::nullopt;
    const Qubit q = run.front().operands.front();
    const Matrix product = run_product(run);
    if (unitary_distance(product, Matrix::Identity(2, 2)) <= epsilon) return std::vector<Gate>{};

    const auto angles = decompose::zyz_decompose(product);
    std::vector<Gate> replacement;
    for (auto [name, angle] : {std::pair{"rz", angles.delta}, std::pair{"ry", angles.gamma},
                               std::pair{"rz", angles.beta}}) {
        const double a = normalize_angle(angle);
        if (a != 0) replacement.emplace_back(name, std::vector<Qubit>{q}, a);
    }
    // Drop rotations that contribute less than epsilon.
    for (std::size_t i = 0; i < replacement.size();) {
        auto without = replacement;
        without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
        if (unitary_distance(product_on_one_qubit(without), product) <= epsilon) {
            replacement = std::move(without);
        } else {
            ++i;
        }
    }
    if (replacement.size() >= run.size()) return std::nullopt;
    if (unitary_distance(product_on_one_qubit(replacement), product) > epsilon) return std::nullopt;
    return replacement;
}

std::vector<Gate> optimize_circuit(std::span<const Gate> gates, double epsilon, std::size_t window,
                                   OptimizeStats *stats) {
    if (epsilon < 0 || window < 2) {
        throw Error("optimize", ErrorCode::ValidationError, "epsilon must be >= 0 and window >= 2");
    }
    std::vector<Gate> current(gates.begin(), gates.end());
    OptimizeStats local;
    for (std::size_t sweep = 0; sweep < MAX_SWEEPS; ++sweep) {
        const auto gdg = build_gdg(current);
        std::vector<bool> removed(current.size(), false);
        std::vector<std::vector<Gate>> inserted(current.size());
        std::size_t replacements = 0;

        for (Qubit q = 0; q < gdg.qubit_count(); ++q) {
            const auto chain = gdg.chain(q);
            std::size_t begin = 0;
            while (begin < chain.size()) {
                // Maximal run of fusable gates on this chain.
                std::size_t end = begin;
                while (end < chain.size() && is_fusable(current[chain[end]])) ++end;
                std::size_t pos = begin;
                while (pos < end) {
                    bool fused = false;
                    for (std::size_t w = std::min(window, end - pos); w >= 2; --w) {
                        std::vector<Gate> run;
                        for (std::size_t k = pos; k < pos + w; ++k) run.push_back(current[chain[k]]);
                        auto replacement = fuse_single_qubit_run(run, epsilon);
                        if (!replacement) continue;
                        for (std::size_t k = pos; k < pos + w; ++k) removed[chain[k]] = true;
                        inserted[chain[pos]] = std::move(*replacement);
                        ++replacements;
                        pos += w;
                        fused = true;
                        break;
                    }
                    if (!fused) ++pos;
                }
                begin = end == begin ? end + 1 : end;
            }
        }

        ++local.sweeps;
        if (replacements == 0) break;
        local.replacements += replacements;
        std::vector<Gate> next;
        for (std::size_t i = 0; i < current.size(); ++i) {
            for (auto &g : inserted[i]) next.push_back(std::move(g));
            if (!removed[i]) next.push_back(std::move(current[i]));
        }
        current = std::move(next);
    }
    if (stats) *stats = local;
    return current;
}

} // namespace qlc::optimize
