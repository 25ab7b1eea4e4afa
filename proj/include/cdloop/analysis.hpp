#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdloop/doubling.hpp"
#include "cdloop/involution.hpp"
#include "cdloop/loop.hpp"

namespace cdloop {

/// One decided property: when it fails, `witness` is the first
/// counterexample tuple in lexicographic element order.
struct Flag {
    bool holds = true;
    std::vector<Elem> witness;
};

struct PropertyReport {
    Flag commutative;
    Flag associative;
    Flag flexible;            // x(yx) = (xy)x
    Flag left_alternative;    // (xx)y = x(xy)
    Flag right_alternative;   // (xy)y = x(yy)
    Flag alternative;
    Flag moufang;             // (zx)(yz) = (z(xy))z
    Flag power_associative;   // <x> is a group for every x
    Flag diassociative;       // <x,y> is a group for every x,y
    Flag central_by_abelian;  // all commutators and associators central
    Flag exp2;                // every x^2 central
    Flag inverse_property;    // x^λ(xy) = y and (xy)y^ρ = x
    Flag weak_inverse;        // x(y·(xy)^ρ) = 1
    Flag anti_automorphic_inverse; // (xy)^λ = y^λ x^λ
    Flag well_defined_inverse;
    Flag anti_commutative;    // [a,b] != 1 whenever a, b, ab noncentral
    std::optional<Flag> anti_symmetric; // needs an involution
};

PropertyReport property_report(const LoopTable& L, const Involution* inv = nullptr);

/// Finite-basis diassociativity test for central-by-abelian loops with
/// exponent-2 quotient: checks the 4^3 associators [u,v,w] with
/// u,v,w in {1,x,y,xy} for every pair (x,y). Throws NotInZAE2 outside
/// that class.
bool diassociative_fast(const LoopTable& L);

struct MoufangDoubleReport {
    Flag loop_moufang;        // (1) L is Moufang
    Flag comm_ccstar;         // (2) [a, cc*] = 1
    Flag comm_c_cstar;        // (3) [c, c*] = 1
    Flag assoc_c_cstar;       // (4) [a, c, c*] = 1
    Flag norm_in_nucleus;     // (5) every cc*c in the nucleus
    bool predicted = false;   // conjunction of (1)-(5)
    bool actual = false;      // direct Moufang check of D(L,*,gamma)
};

/// Evaluates the five double-is-Moufang conditions and compares the
/// prediction against the constructed double. gamma must be symmetric
/// central.
MoufangDoubleReport moufang_double_report(const LoopTable& L, const Involution& inv,
                                          Elem gamma);

/// F2 coordinates of L/Z(L) for loops that are central-by-abelian with
/// every square central. rank <= 8.
struct ClassSpace {
    int rank = 0;
    std::vector<std::uint8_t> coords; // per element: class as bit vector
    std::vector<Elem> basis;          // elements whose classes form the basis
    std::vector<Elem> center;
    Elem rep(std::uint8_t v) const { return reps_[v]; }
    std::vector<Elem> reps_; // smallest element per class
};

ClassSpace class_space(const LoopTable& L); // throws NotInZAE2

/// Elements x such that every 3-dimensional subloop containing x is
/// Moufang. Subloops are enumerated as full preimages of 3-dimensional
/// subspaces of L/Z. Requires dim >= 3 (DimTooSmall) and dim <= 8.
std::vector<Elem> locally_moufang_elements(const LoopTable& M);

struct JPartner {
    Subloop lift;             // full preimage of the partner subspace
    std::vector<Elem> gens;   // canonical generators, base-preferred
};

/// All subspaces U' != U of <U,j>/Z avoiding the class of j, lifted
/// back to subloops of M. `base` guides generator choice in the output.
std::vector<JPartner> j_partners(const LoopTable& M, const Subloop& base,
                                 const Subloop& U, Elem j);

struct OctonionCheck {
    bool is_octonion = false;
    std::optional<Elem> alpha; // common associator of every basis
};

/// A loop is an octonion loop when it is 3-dimensional over its center
/// (central-by-abelian, exponent-2 quotient) and Moufang; all basis
/// associators then agree on one central element of order at most 2.
OctonionCheck octonion_check(const LoopTable& O);

struct KirshReport {
    Elem x, y, z;             // standard generators of Q3
    Elem alpha;               // basis associator inside <x,y,z> (= -1)
    Elem xz, yz, zj;          // the probe triple inside Q4
    Elem probe_associator;    // [xz, yz, zj], must be the identity
    bool triple_in_subloop = false; // (xz, yz, zj) lies in <xj, yj, zj>
    bool classes_independent = false;
    bool formula_agrees = false;    // closed-form associator = direct table value
    bool refutation_established = false;
};

/// Exhibits, inside Q4, a basis triple of <xj, yj, zj> with trivial
/// associator although <x,y,z> is a nonassociative octonion subloop of
/// Q3 -- refuting the claim that <xj,yj,zj> is always a nonassociative
/// octonion subloop. Throws logic_error if the witness cannot be
/// reproduced (which would indicate an implementation bug).
KirshReport kirsh_refutation(const DoubleResult& q3, const DoubleResult& q4);

} // namespace cdloop
