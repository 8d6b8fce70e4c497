/** \file
 * Uniformly controlled rotations and Quantum Shannon Decomposition.
 *
 * Each level splits U on the top qubit with a cosine-sine decomposition into
 * two block-diagonal factors around an Ry multiplexor, then turns each
 * block-diagonal factor into (I x V) Rz-multiplexor (I x W). Recursing on the
 * four half-size unitaries bottoms out in single-qubit ZYZ rotations.
 */

#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "qlc/decompose.h"
#include "qlc/error.h"

namespace qlc::decompose {

namespace {

Gate rotation(Axis axis, Qubit target, double angle) {
    return Gate(axis == Axis::y ? "ry" : "rz", {target}, angle);
}

bool all_zero(const std::vector<double> &angles, double tolerance) {
    for (double a : angles) {
        if (std::abs(a) > tolerance) return false;
    }
    return true;
}

struct Demultiplexed {
    Matrix v;
    std::vector<double> angles;
    Matrix w;
};

// diag(a0, a1) = (I x v) diag(d, d^*) (I x w), with the middle as Rz angles.
Demultiplexed demultiplex(const Matrix &a0, const Matrix &a1) {
    Eigen::ComplexSchur<Matrix> schur(a0 * a1.adjoint());
    const Matrix &t = schur.matrixT();
    Demultiplexed out;
    out.v = schur.matrixU();
    const auto m = t.rows();
    Eigen::VectorXcd d(m);
    out.angles.resize(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const ir::Complex lambda = t(j, j) / std::abs(t(j, j));
        d(j) = std::sqrt(lambda);
        out.angles[j] = -2 * std::arg(d(j));
    }
    out.w = d.asDiagonal() * out.v.adjoint() * a1;
    return out;
}

struct CosineSine {
    Matrix l0, l1, r0, r1;
    std::vector<double> ry_angles;
};

// U = diag(l0, l1) [[C, -S], [S, C]] diag(r0, r1).
CosineSine cosine_sine(const Matrix &u) {
    const auto m = u.rows() / 2;
    const Matrix u00 = u.topLeftCorner(m, m), u01 = u.topRightCorner(m, m);
    const Matrix u10 = u.bottomLeftCorner(m, m), u11 = u.bottomRightCorner(m, m);

    Eigen::JacobiSVD<Matrix> svd(u00, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // Ascending cosines put the large sines first, which keeps the QR below
    // diagonal when some sines vanish.
    const Matrix l0 = svd.matrixU().rowwise().reverse();
    const Matrix vr = svd.matrixV().rowwise().reverse();
    const Eigen::VectorXd c = svd.singularValues().reverse();

    CosineSine out;
    out.l0 = l0;
    out.r0 = vr.adjoint();
    const Matrix y = u10 * vr;
    Eigen::HouseholderQR<Matrix> qr(y);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    Eigen::VectorXd s(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        s(i) = std::abs(r(i, i));
        if (s(i) > 0) q.col(i) *= r(i, i) / s(i);
    }
    out.l1 = q;
    const Eigen::VectorXcd cc = c.cast<ir::Complex>(), sc = s.cast<ir::Complex>();
    out.r1 = cc.asDiagonal() * (out.l1.adjoint() * u11) - sc.asDiagonal() * (out.l0.adjoint() * u01);
    out.ry_angles.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) out.ry_angles[i] = -2 * std::atan2(s(i), c(i));
    return out;
}

void emit_ucr(Axis axis, const std::vector<double> &angles, const std::vector<Qubit> &controls, Qubit target,
              const QsdOptions &options, std::vector<Gate> &out) {
    if (options.shortcuts && all_zero(angles, options.shortcut_tolerance)) return;
    auto gates = decompose_uniformly_controlled_rotation({axis, angles, controls, target});
    out.insert(out.end(), gates.begin(), gates.end());
}

void qsd(const Matrix &u, const std::vector<Qubit> &qubits, const QsdOptions &options, std::vector<Gate> &out) {
    if (qubits.size() == 1) {
        ZYZAngles a;
        const ir::Complex det = u.determinant();
        // Same as zyz_decompose, minus the unitarity check; blocks produced
        // by the recursion carry rounding noise.
        const Matrix v = u * std::polar(1.0, -std::arg(det) / 2);
        const ir::Complex p = v(0, 0), q = v(0, 1);
        a.gamma = 2 * std::atan2(std::abs(q), std::abs(p));
        if (std::abs(q) < 1e-14) {
            a.beta = -2 * std::arg(p);
        } else if (std::abs(p) < 1e-14) {
            a.beta = -2 * std::arg(q);
        } else {
            a.beta = -std::arg(p) - std::arg(q);
            a.delta = -std::arg(p) + std::arg(q);
        }
        if (!(options.shortcuts && std::abs(a.delta) <= options.shortcut_tolerance)) {
            out.push_back(rotation(Axis::z, qubits[0], a.delta));
        }
        if (!(options.shortcuts && std::abs(a.gamma) <= options.shortcut_tolerance)) {
            out.push_back(rotation(Axis::y, qubits[0], a.gamma));
        }
        if (!(options.shortcuts && std::abs(a.beta) <= options.shortcut_tolerance)) {
            out.push_back(rotation(Axis::z, qubits[0], a.beta));
        }
        return;
    }
    const Qubit top = qubits[0];
    const std::vector<Qubit> lower(qubits.begin() + 1, qubits.end());
    const auto cs = cosine_sine(u);
    const auto right = demultiplex(cs.r0, cs.r1);
    const auto left = demultiplex(cs.l0, cs.l1);

    qsd(right.w, lower, options, out);
    emit_ucr(Axis::z, right.angles, lower, top, options, out);
    qsd(right.v, lower, options, out);
    emit_ucr(Axis::y, cs.ry_angles, lower, top, options, out);
    qsd(left.w, lower, options, out);
    emit_ucr(Axis::z, left.angles, lower, top, options, out);
    qsd(left.v, lower, options, out);
}

} // namespace

std::vector<Gate> decompose_uniformly_controlled_rotation(const UniformlyControlledRotation &ucr) {
    const std::size_t k = ucr.controls.size();
    const std::size_t count = std::size_t{1} << k;
    if (ucr.angles.size() != count) {
        throw Error("decompose", ErrorCode::BadAngleCount,
                    std::to_string(k) + " controls need " + std::to_string(count) + " angles, got " +
                        std::to_string(ucr.angles.size()));
    }
    if (k == 0) return {rotation(ucr.axis, ucr.target, ucr.angles[0])};

    auto gray = [](std::size_t i) { return i ^ (i >> 1); };
    std::vector<Gate> out;
    out.reserve(2 * count);
    for (std::size_t i = 0; i < count; ++i) {
        double phi = 0;
        for (std::size_t x = 0; x < count; ++x) {
            phi += (std::popcount(x & gray(i)) % 2 ? -1.0 : 1.0) * ucr.angles[x];
        }
        out.push_back(rotation(ucr.axis, ucr.target, phi / static_cast<double>(count)));
        const std::size_t flipped = gray(i) ^ gray((i + 1) % count);
        const auto bit = static_cast<std::size_t>(std::countr_zero(flipped));
        out.push_back(Gate("cnot", {ucr.controls[k - 1 - bit], ucr.target}));
    }
    return out;
}

std::vector<Gate> qsd_decompose(const Matrix &u, const std::vector<Qubit> &qubits, const QsdOptions &options) {
    const auto dim = static_cast<std::size_t>(u.rows());
    if (u.rows() != u.cols() || dim == 0 || !std::has_single_bit(dim)) {
        throw Error("decompose", ErrorCode::NotPowerOfTwo,
                    "matrix of size " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    if (n == 0 || n != qubits.size()) {
        throw Error("decompose", ErrorCode::DimMismatch,
                    std::to_string(dim) + "x" + std::to_string(dim) + " matrix on " +
                        std::to_string(qubits.size()) + " qubits");
    }
    if (n > MAX_QSD_QUBITS) {
        throw Error("decompose", ErrorCode::TooLarge,
                    std::to_string(n) + " qubits exceeds the limit of " + std::to_string(MAX_QSD_QUBITS));
    }
    if (!ir::is_unitary(u, 1e-9)) {
        throw Error("decompose", ErrorCode::NotUnitary, "input matrix is not unitary");
    }
    std::vector<Gate> out;
    qsd(u, qubits, options, out);
    return out;
}

std::size_t qsd_rotation_count(std::size_t n) {
    const std::size_t four = std::size_t{1} << (2 * n), two = std::size_t{1} << n;
    return (3 * four - 3 * two) / 2;
}

std::size_t qsd_cnot_count(std::size_t n) {
    const std::size_t four = std::size_t{1} << (2 * n), two = std::size_t{1} << n;
    return (3 * four - 6 * two) / 4;
}

} // namespace qlc::decompose
