#include "qrb/channels.hpp"

#include <cmath>

namespace qrb {

namespace {

Eigen::Matrix3d cross_matrix(const Eigen::Vector3d& m) {
    Eigen::Matrix3d k;
    k << 0, -m.z(), m.y(), m.z(), 0, -m.x(), -m.y(), m.x(), 0;
    return k;
}

Eigen::Vector3d unit_axis(const Eigen::Vector3d& axis) {
    const double n = axis.norm();
    if (n < 1e-9) throw ZeroAxis("rotation: axis norm too small");
    return axis / n;
}

Superop from_unital(const Eigen::Matrix3d& Eu) {
    return assemble(UnitalDecomp{Eigen::Vector3d::Zero(), Eu});
}

const Superop& x90() {
    static const Superop g = rotation_channel({{1, 0, 0}, M_PI / 2});
    return g;
}

const Superop& y90() {
    static const Superop g = rotation_channel({{0, 1, 0}, M_PI / 2});
    return g;
}

} // namespace

Superop pauli_channel(const PauliParams& p) {
    const auto& l = p.l;
    if (l.minCoeff() < -1e-15 || l.sum() > 1.0 + 1e-12)
        throw InvalidProbability("pauli_channel: need l >= 0 and sum(l) <= 1");
    Eigen::Vector3d lam{1 - 2 * (l.y() + l.z()), 1 - 2 * (l.x() + l.z()),
                        1 - 2 * (l.x() + l.y())};
    return from_unital(lam.asDiagonal());
}

Superop rotation_channel(const RotationParams& r) {
    const Eigen::Vector3d m = unit_axis(r.axis);
    const double c = std::cos(r.angle), s = std::sin(r.angle);
    Eigen::Matrix3d Eu =
        c * Eigen::Matrix3d::Identity() + s * cross_matrix(m) + (1 - c) * (m * m.transpose());
    return from_unital(Eu);
}

Superop amplitude_damping(double gamma) {
    if (gamma < 0.0 || gamma > 1.0)
        throw OutOfRange("amplitude_damping: gamma must be in [0, 1]");
    const double s = std::sqrt(1.0 - gamma);
    UnitalDecomp d;
    d.t = Eigen::Vector3d(0, 0, gamma);
    d.Eu = Eigen::Vector3d(s, s, 1.0 - gamma).asDiagonal();
    return assemble(d);
}

Superop depolarizing(double lambda) {
    return pauli_channel({Eigen::Vector3d::Constant(lambda)});
}

const std::array<std::string, kCliffordCount>& proctor_default_words() {
    // Canonical compilation of each Clifford (by group index) into
    // X_{pi/2}/Y_{pi/2} primitives, leftmost applied first. Frozen against
    // the decomposition gate <theta_k^2> = (3/2) theta^2 and the fourth-order
    // decay coefficient -233/864.
    static const std::array<std::string, kCliffordCount> words = {
        "",        "XXYYY", "XXXYX",   "XXXYYY", "YXXX",  "YYXX", "X",   "YYY",
        "XXX",     "Y",     "XXXYYYX", "YX",     "XX",    "XYYY", "YYYXXX", "XXXY",
        "YYX",     "XYX",   "XYYYX",   "YYXXX",  "XXY",   "XY",   "YYYX",   "YY"};
    return words;
}

ProctorPrimitive proctor_model(double theta) {
    ProctorPrimitive m;
    m.theta = theta;
    m.axis = Eigen::Vector3d(0, 0, 1);
    m.words = proctor_default_words();
    return m;
}

Superop xy_word_ptm(const std::string& word) {
    Mat acc = Mat::Identity(4, 4);
    for (char ch : word) {
        if (ch == 'X')
            acc = x90().mat() * acc;
        else if (ch == 'Y')
            acc = y90().mat() * acc;
        else
            throw Error(std::string("xy word: unknown primitive '") + ch + "'");
    }
    return Superop(acc);
}

Superop xy_word_noisy(const std::string& word, double theta, const Eigen::Vector3d& axis) {
    const Superop noise = rotation_channel({axis, theta});
    Mat acc = Mat::Identity(4, 4);
    for (char ch : word) {
        const Superop& prim = (ch == 'X') ? x90() : y90();
        if (ch != 'X' && ch != 'Y')
            throw Error(std::string("xy word: unknown primitive '") + ch + "'");
        acc = prim.mat() * noise.mat() * acc;
    }
    return Superop(acc);
}

std::vector<Superop> noisy_gateset(const CliffordGroup& group, const NoiseModel& model) {
    std::vector<Superop> out;
    out.reserve(kCliffordCount);

    if (const auto* lr = std::get_if<GateIndependentLR>(&model)) {
        for (const auto& g : group.gates())
            out.push_back(Superop(lr->L.mat() * g.mat() * lr->R.mat()));
    } else if (const auto* plr = std::get_if<PauliLR>(&model)) {
        const Superop L = pauli_channel(plr->l), R = pauli_channel(plr->s);
        for (const auto& g : group.gates()) out.push_back(Superop(L.mat() * g.mat() * R.mat()));
    } else if (const auto* pgu = std::get_if<PerGateUnitary>(&model)) {
        for (int k = 0; k < kCliffordCount; ++k) {
            const Superop u = rotation_channel({pgu->axes[k], pgu->scale[k] * pgu->theta});
            out.push_back(compose(group.gate(k), u));
        }
    } else if (const auto* pp = std::get_if<ProctorPrimitive>(&model)) {
        for (int k = 0; k < kCliffordCount; ++k) {
            const Superop ideal = xy_word_ptm(pp->words[k]);
            if (group.index_of(ideal) != k)
                throw ModelTableIncomplete("proctor: word " + std::to_string(k) +
                                           " does not compose to gate " + std::to_string(k));
            out.push_back(xy_word_noisy(pp->words[k], pp->theta, pp->axis));
        }
    } else if (const auto* cg = std::get_if<CustomGates>(&model)) {
        if (int(cg->gates.size()) != kCliffordCount)
            throw ModelTableIncomplete("custom: table must cover all 24 gate indices");
        out = cg->gates;
    }

    for (int k = 0; k < kCliffordCount; ++k)
        if (!is_cptp(out[k], 1e-10))
            throw NotCPTP("noisy_gateset: gate " + std::to_string(k) + " is not CPTP");
    return out;
}

double effective_right_unitary_angle(const Superop& G, const Superop& Gt) {
    const Superop residual = compose(adjoint(G), Gt);
    const Eigen::Matrix3d ru = residual.unital_block();
    const bool orthogonal =
        (ru.transpose() * ru - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-9;
    if (!orthogonal || residual.translation().norm() > 1e-9)
        throw NotUnitaryResidual("effective angle: G^dagger Gt is not unitary");
    const double c = std::clamp((ru.trace() - 1.0) / 2.0, -1.0, 1.0);
    return std::acos(c);
}

} // namespace qrb
