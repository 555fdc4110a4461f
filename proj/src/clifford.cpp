#include "qrb/clifford.hpp"

#include <cmath>
#include <deque>

namespace qrb {

namespace {

// Unital blocks of Cliffords are signed permutations of the Pauli axes;
// keeping them exact removes floating point from all group logic.
struct SignedPerm {
    std::array<int, 3> perm; // column j maps to row perm[j]
    std::array<int, 3> sign; // with sign[j]

    static SignedPerm identity() { return {{0, 1, 2}, {1, 1, 1}}; }

    // this * other (apply other first)
    SignedPerm compose(const SignedPerm& other) const {
        SignedPerm out{};
        for (int j = 0; j < 3; ++j) {
            out.perm[j] = perm[other.perm[j]];
            out.sign[j] = sign[other.perm[j]] * other.sign[j];
        }
        return out;
    }

    SignedPerm inverse() const {
        SignedPerm out{};
        for (int j = 0; j < 3; ++j) {
            out.perm[perm[j]] = j;
            out.sign[perm[j]] = sign[j];
        }
        return out;
    }

    std::uint32_t fingerprint() const {
        std::uint32_t f = 0;
        for (int j = 0; j < 3; ++j) f = f * 12 + std::uint32_t(perm[j] * 2 + (sign[j] < 0));
        return f;
    }

    Eigen::Matrix3d matrix() const {
        Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
        for (int j = 0; j < 3; ++j) m(perm[j], j) = double(sign[j]);
        return m;
    }

    int det() const {
        const bool even = (perm[0] == 0 && perm[1] == 1) || (perm[0] == 1 && perm[1] == 2) ||
                          (perm[0] == 2 && perm[1] == 0);
        return (even ? 1 : -1) * sign[0] * sign[1] * sign[2];
    }
};

SignedPerm snap(const Eigen::Matrix3d& m) {
    SignedPerm sp{};
    for (int j = 0; j < 3; ++j) {
        int row = -1;
        for (int i = 0; i < 3; ++i) {
            if (std::abs(m(i, j)) > 0.5) {
                row = i;
                break;
            }
        }
        if (row < 0) throw Error("clifford: block is not a signed permutation");
        sp.perm[j] = row;
        sp.sign[j] = m(row, j) > 0 ? 1 : -1;
    }
    return sp;
}

Superop to_superop(const SignedPerm& sp) {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = 1.0;
    m.block<3, 3>(1, 1) = sp.matrix();
    return Superop(m);
}

} // namespace

CliffordGroup CliffordGroup::generate() {
    // H: X->Z, Y->-Y, Z->X;  S: X->Y, Y->-X, Z->Z.
    const SignedPerm h{{2, 1, 0}, {1, -1, 1}};
    const SignedPerm s{{1, 0, 2}, {1, -1, 1}};

    CliffordGroup g;
    std::vector<SignedPerm> elems{SignedPerm::identity()};
    g.index_[elems[0].fingerprint()] = 0;
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        const int idx = frontier.front();
        frontier.pop_front();
        for (const SignedPerm& gen : {h, s}) {
            const SignedPerm cand = gen.compose(elems[idx]);
            const auto fp = cand.fingerprint();
            if (g.index_.count(fp)) continue;
            if (int(elems.size()) >= kCliffordCount)
                throw ClosureOverflow("clifford: closure exceeded 24 elements");
            g.index_[fp] = int(elems.size());
            elems.push_back(cand);
            frontier.push_back(int(elems.size()) - 1);
        }
    }
    if (int(elems.size()) != kCliffordCount)
        throw ClosureOverflow("clifford: closure has " + std::to_string(elems.size()) +
                              " elements, expected 24");

    g.gates_.reserve(kCliffordCount);
    for (const auto& e : elems) {
        if (e.det() != 1) throw ClosureOverflow("clifford: unital block with det != +1");
        g.gates_.push_back(to_superop(e));
    }
    for (int i = 0; i < kCliffordCount; ++i) {
        g.inverse_[i] = g.index_.at(elems[i].inverse().fingerprint());
        for (int j = 0; j < kCliffordCount; ++j)
            g.cayley_[i][j] = g.index_.at(elems[i].compose(elems[j]).fingerprint());
    }
    return g;
}

const CliffordGroup& CliffordGroup::instance() {
    static const CliffordGroup g = generate();
    return g;
}

int CliffordGroup::index_of(const Superop& g) const {
    const SignedPerm sp = snap(g.unital_block());
    const auto it = index_.find(sp.fingerprint());
    if (it == index_.end() ||
        (g.unital_block() - sp.matrix()).cwiseAbs().maxCoeff() > 1e-9 || !g.is_tp() ||
        !g.is_unital())
        throw Error("clifford: PTM is not a Clifford gate");
    return it->second;
}

Superop clifford_twirl(const Superop& E) {
    const auto& group = CliffordGroup::instance();
    Mat acc = Mat::Zero(4, 4);
    for (const auto& g : group.gates()) acc += g.mat() * E.mat() * g.mat().transpose();
    return Superop(acc / double(kCliffordCount));
}

} // namespace qrb
