#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qrb/superop.hpp"

namespace qrb {

inline constexpr int kCliffordCount = 24;

/// The 24-element single-qubit Clifford group as PTMs with exact {-1,0,1}
/// entries. Gate order is breadth-first from the identity over {H, S} words,
/// so indices are stable across runs; the identity is element 0.
class CliffordGroup {
public:
    static CliffordGroup generate();
    static const CliffordGroup& instance();

    const std::vector<Superop>& gates() const { return gates_; }
    const Superop& gate(int i) const { return gates_.at(i); }

    int inverse(int i) const { return inverse_.at(i); }
    /// Index of G_i * G_j (apply j first).
    int compose_idx(int i, int j) const { return cayley_.at(i).at(j); }

    /// Gate index from a PTM fingerprint; throws Error if not a Clifford.
    int index_of(const Superop& g) const;

private:
    CliffordGroup() = default;
    std::vector<Superop> gates_;
    std::array<int, kCliffordCount> inverse_{};
    std::array<std::array<int, kCliffordCount>, kCliffordCount> cayley_{};
    std::unordered_map<std::uint32_t, int> index_;
};

/// (1/24) sum_G G E G^dagger over the Clifford group.
Superop clifford_twirl(const Superop& E);

} // namespace qrb
