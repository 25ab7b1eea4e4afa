#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdloop/errors.hpp"

namespace cdloop {

/// Element id inside a fixed loop. Index 0 is always the identity element.
using Elem = std::uint16_t;

inline constexpr Elem kIdentity = 0;

class Involution; // involution.hpp

/// A finite loop as a dense Cayley table. Immutable after construction;
/// left/right division tables are precomputed. All operations are total
/// on valid element ids.
class LoopTable {
public:
    /// Certify a raw square table as a loop. The identity must sit at
    /// index 0; rows and columns must be permutations of [0, n).
    static LoopTable validate(const std::vector<std::vector<int>>& raw,
                              std::vector<std::string> names = {});

    int order() const { return n_; }

    Elem mul(Elem a, Elem b) const { return table_[a * n_ + b]; }

    /// a \ b : the unique x with a·x = b.
    Elem left_div(Elem a, Elem b) const { return ldiv_[a * n_ + b]; }
    /// b / a : the unique x with x·a = b.
    Elem right_div(Elem b, Elem a) const { return rdiv_[b * n_ + a]; }

    /// One-sided inverses: lambda(a)·a = 1 = a·rho(a).
    Elem lambda(Elem a) const { return right_div(kIdentity, a); }
    Elem rho(Elem a) const { return left_div(a, kIdentity); }
    bool invertible(Elem a) const { return lambda(a) == rho(a); }

    /// [a,b]: the unique k with ab = (ba)·k.
    Elem commutator(Elem a, Elem b) const {
        return left_div(mul(b, a), mul(a, b));
    }
    /// [a,b,c]: the unique k with (ab)c = (a(bc))·k.
    Elem associator(Elem a, Elem b, Elem c) const {
        return left_div(mul(a, mul(b, c)), mul(mul(a, b), c));
    }

    /// Power of a central element, computed through the table
    /// (negative exponents use the table inverse).
    Elem central_power(Elem z, int e) const;

    const std::string& name(Elem a) const { return names_[a]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<Elem> find_name(const std::string& s) const;

    bool table_equals(const LoopTable& other) const {
        return n_ == other.n_ && table_ == other.table_;
    }

    const std::vector<Elem>& raw_table() const { return table_; }

private:
    LoopTable() = default;
    int n_ = 0;
    std::vector<Elem> table_;
    std::vector<Elem> ldiv_;
    std::vector<Elem> rdiv_;
    std::vector<std::string> names_;
};

struct OneSidedInverses {
    Elem lambda;
    Elem rho;
    bool invertible;
};

inline OneSidedInverses one_sided_inverses(const LoopTable& L, Elem a) {
    return {L.lambda(a), L.rho(a), L.lambda(a) == L.rho(a)};
}

/// A subset of a loop certified closed under multiplication and both
/// divisions (and an involution, when one was supplied at generation).
struct Subloop {
    std::vector<Elem> members; // sorted
    std::vector<char> mask;    // indexed by element id

    int size() const { return static_cast<int>(members.size()); }
    bool contains(Elem x) const { return mask[x] != 0; }
};

Subloop subloop_from_members(const LoopTable& L, std::vector<Elem> members);

/// Smallest subloop containing `gens`, by fixpoint closure under
/// multiply, both divisions, and optionally an involution.
Subloop generate_subloop(const LoopTable& L, std::span<const Elem> gens,
                         const Involution* close_star = nullptr);

struct Quotient {
    LoopTable table;
    std::vector<Elem> class_of; // element of L -> coset index
};

/// Quotient by a normal subloop. Normality is checked as a congruence:
/// the coset partition must be well defined and multiplication constant
/// on cosets. Throws NotNormal with a witness triple otherwise.
Quotient normal_quotient(const LoopTable& L, const Subloop& N);

struct StructureReport {
    std::vector<Elem> nuc_left, nuc_mid, nuc_right, nucleus;
    std::vector<Elem> commutant, center;
    Subloop derived;          // subloop generated by all commutators and associators
    std::optional<int> dim;   // log2 |L/Z| when L/Z is elementary abelian 2-group
};

/// Brute-force scan of the classical structure sets. `dim` is reported
/// only when L is central-by-abelian and every square is central.
StructureReport structure_sets(const LoopTable& L);

bool is_central(const LoopTable& L, Elem z);

} // namespace cdloop
