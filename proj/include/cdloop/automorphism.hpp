#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdloop/doubling.hpp"
#include "cdloop/involution.hpp"
#include "cdloop/loop.hpp"

namespace cdloop {

enum class AutFlavor {
    Plain,            // loop automorphisms
    Star,             // additionally commute with the involution
    StarFixingEpsilon // star flavor, additionally fix a chosen element
};

/// Full automorphisms are materialized up to this order; above it only
/// the order and a generating set are kept.
inline constexpr std::uint64_t kAutStoreCap = 10000;

struct AutGroup {
    int degree = 0;
    AutFlavor flavor = AutFlavor::Plain;
    std::optional<Elem> epsilon;
    std::uint64_t order = 0;
    std::vector<std::vector<Elem>> elements;   // sorted lexicographically; empty above cap
    std::vector<std::vector<Elem>> generators; // greedy minimal generating subset
    bool elements_stored() const { return order == static_cast<std::uint64_t>(elements.size()); }
};

/// Exact automorphism group by pruned backtracking over generator
/// images. Candidate images are gated by iterated invariant colors
/// (subloop orders, commuting and associating profiles); every accepted
/// map is verified against the full table. Order capped at 256.
AutGroup automorphism_group(const LoopTable& L, const Involution* inv, AutFlavor flavor,
                            std::optional<Elem> epsilon = std::nullopt);

/// Subgroup of Aut(M) (resp. Aut(M,*)) preserving the base-loop index
/// range and the coset Z(L)·j, each as a set.
AutGroup aut_preserving(const DoubleResult& D, AutFlavor flavor);

struct PairCorrespondenceReport {
    std::uint64_t preserving_order = 0;  // |Aut(M; L, Zj)|
    std::uint64_t pair_order = 0;        // |{(σ,p) : σ(γ)γ^{-1} = p*p}|
    std::uint64_t preserving_star_order = 0;
    std::uint64_t pair_star_order = 0;   // with σ(ε) = ε
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

/// Verifies that σ -> (σ|_L, σ(j)/j) is a group isomorphism between the
/// (L, Zj)-preserving automorphisms of M and the parameter pairs
/// (σ, p) with σ(γ)γ^{-1} = p*p, in both the plain and the
/// involution-respecting flavor.
PairCorrespondenceReport pair_correspondence_check(const DoubleResult& D);

/// True when every automorphism of M (of the given flavor) maps S onto S.
bool is_characteristic(const LoopTable& M, const Involution* inv, const Subloop& S,
                       AutFlavor flavor);

struct BitMatrix {
    int k = 0;
    std::array<std::uint8_t, 8> rows{}; // row-major action on F2^k, k <= 8
    bool operator==(const BitMatrix&) const = default;
    bool operator<(const BitMatrix& o) const { return rows < o.rows; }
};

BitMatrix bitmatrix_mul(const BitMatrix& a, const BitMatrix& b);

struct LinearAction {
    int rank = 0;
    std::vector<BitMatrix> matrices; // one per stored automorphism, same order
    bool faithful = false;
    std::uint64_t kernel_order = 0;
    std::uint64_t image_order = 0;
};

/// The induced action of a computed automorphism group on M/Z(M),
/// which must be elementary abelian. Requires stored elements.
LinearAction induced_linear_action(const LoopTable& M, const AutGroup& aut);

} // namespace cdloop
