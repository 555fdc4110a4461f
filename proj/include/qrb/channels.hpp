#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "qrb/clifford.hpp"
#include "qrb/superop.hpp"

namespace qrb {

/// Pauli channel probabilities (l_x, l_y, l_z), sum <= 1.
struct PauliParams {
    Eigen::Vector3d l;
};

/// Axis-angle rotation; the axis is normalized at use sites.
struct RotationParams {
    Eigen::Vector3d axis;
    double angle = 0.0;
};

Superop pauli_channel(const PauliParams& p);
Superop rotation_channel(const RotationParams& r);
Superop amplitude_damping(double gamma);
/// pauli_channel with l = (lambda, lambda, lambda).
Superop depolarizing(double lambda);

/// Gate-independent left and right noise: Gt = L * G * R.
struct GateIndependentLR {
    Superop L, R;
};

/// Pauli-channel pair shorthand for GateIndependentLR.
struct PauliLR {
    PauliParams l, s;
};

/// Per-gate unitary right noise Gt_k = G_k * U(a_k * theta, axis_k).
struct PerGateUnitary {
    std::array<Eigen::Vector3d, kCliffordCount> axes;
    std::array<double, kCliffordCount> scale;
    double theta = 0.0;
};

/// Cliffords compiled into X_{pi/2}/Y_{pi/2} primitives, each primitive
/// carrying the same right rotation noise (angle theta about axis).
struct ProctorPrimitive {
    double theta = 0.0;
    Eigen::Vector3d axis{0, 0, 1};
    std::array<std::string, kCliffordCount> words;
};

/// Fully explicit noisy gate table.
struct CustomGates {
    std::vector<Superop> gates;
};

using NoiseModel =
    std::variant<GateIndependentLR, PauliLR, PerGateUnitary, ProctorPrimitive, CustomGates>;

/// The canonical per-gate primitive words (index-aligned with CliffordGroup);
/// also shipped as data/clifford_xy_words.json.
const std::array<std::string, kCliffordCount>& proctor_default_words();
ProctorPrimitive proctor_model(double theta);

/// Ideal PTM of an XY primitive word (application order, leftmost first).
Superop xy_word_ptm(const std::string& word);
/// Same word with every primitive P replaced by P * U(theta, axis).
Superop xy_word_noisy(const std::string& word, double theta, const Eigen::Vector3d& axis);

std::vector<Superop> noisy_gateset(const CliffordGroup& group, const NoiseModel& model);

/// Angle theta_k of the unitary residual G^dagger Gt, in [0, pi].
double effective_right_unitary_angle(const Superop& G, const Superop& Gt);

} // namespace qrb
