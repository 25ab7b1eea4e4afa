#pragma once

#include <optional>
#include <vector>

#include "cdloop/loop.hpp"

namespace cdloop {

/// An anti-automorphism of order at most 2, certified against a fixed
/// loop. The identity map qualifies exactly when the loop is commutative.
class Involution {
public:
    static Involution validate(const LoopTable& L, std::vector<Elem> perm);

    Elem operator()(Elem x) const { return perm_[x]; }
    const std::vector<Elem>& perm() const { return perm_; }
    bool is_identity() const;

private:
    explicit Involution(std::vector<Elem> p) : perm_(std::move(p)) {}
    std::vector<Elem> perm_;
};

/// The inverse map x -> x^{-1}. Valid on loops with well-defined
/// inverses and the anti-automorphic inverse property (all groups).
Involution inverse_involution(const LoopTable& L);

/// The identity map; valid only on commutative loops.
Involution identity_involution(const LoopTable& L);

struct InvolutionReport {
    bool is_identity = false;
    bool is_central = false;       // a* ∈ Z(L)·a for all a
    bool is_super_central = false; // central and mu(a)^2 = 1 for all a
    bool is_normal = false;        // a*·a ∈ Z(L) for all a
    bool is_anti_symmetric = false; // a* != a off the center
    std::optional<std::vector<Elem>> mu; // a* = mu(a)·a, present iff central
    std::optional<std::vector<Elem>> nu; // nu(a) = a*·a, present iff normal
    std::vector<Elem> symmetric_center;
};

InvolutionReport classify_involution(const LoopTable& L, const Involution& inv);

/// Z(L,*): the symmetric part of the center.
std::vector<Elem> symmetric_center(const LoopTable& L, const Involution& inv);

} // namespace cdloop
