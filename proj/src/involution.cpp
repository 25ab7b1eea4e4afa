#include "cdloop/involution.hpp"

#include <algorithm>
#include <numeric>

namespace cdloop {

Involution Involution::validate(const LoopTable& L, std::vector<Elem> perm) {
    const int n = L.order();
    if (static_cast<int>(perm.size()) != n)
        throw LoopError(ErrorCode::NotAPermutation, "permutation length mismatch");
    std::vector<char> seen(n, 0);
    for (Elem v : perm) {
        if (v >= n || seen[v])
            throw LoopError(ErrorCode::NotAPermutation, "not a permutation", {v});
        seen[v] = 1;
    }
    if (perm[kIdentity] != kIdentity)
        throw LoopError(ErrorCode::MovesIdentity, "involution moves the identity");
    for (Elem a = 0; a < n; a++)
        if (perm[perm[a]] != a)
            throw LoopError(ErrorCode::NotOrderTwo,
                            "square of the map is not the identity at " + L.name(a), {a});
    for (Elem a = 0; a < n; a++)
        for (Elem b = 0; b < n; b++)
            if (perm[L.mul(a, b)] != L.mul(perm[b], perm[a]))
                throw LoopError(ErrorCode::NotAntiHom,
                                "(ab)* != b*a* at (" + L.name(a) + ", " + L.name(b) + ")",
                                {a, b});
    return Involution(std::move(perm));
}

bool Involution::is_identity() const {
    for (size_t i = 0; i < perm_.size(); i++)
        if (perm_[i] != i) return false;
    return true;
}

Involution inverse_involution(const LoopTable& L) {
    std::vector<Elem> p(L.order());
    for (Elem a = 0; a < L.order(); a++) {
        if (!L.invertible(a))
            throw LoopError(ErrorCode::NotOrderTwo,
                            "one-sided inverses differ at " + L.name(a), {a});
        p[a] = L.rho(a);
    }
    return Involution::validate(L, std::move(p));
}

Involution identity_involution(const LoopTable& L) {
    std::vector<Elem> p(L.order());
    std::iota(p.begin(), p.end(), 0);
    return Involution::validate(L, std::move(p));
}

std::vector<Elem> symmetric_center(const LoopTable& L, const Involution& inv) {
    std::vector<Elem> out;
    for (Elem z : structure_sets(L).center)
        if (inv(z) == z) out.push_back(z);
    return out;
}

InvolutionReport classify_involution(const LoopTable& L, const Involution& inv) {
    const int n = L.order();
    StructureReport S = structure_sets(L);
    std::vector<char> central(n, 0);
    for (Elem z : S.center) central[z] = 1;

    InvolutionReport R;
    R.is_identity = inv.is_identity();

    // central: a* = mu(a)·a with mu(a) = a*/a in the center
    std::vector<Elem> mu(n), nu(n);
    bool is_central = true, is_normal = true;
    for (Elem a = 0; a < n; a++) {
        mu[a] = L.right_div(inv(a), a);
        nu[a] = L.mul(inv(a), a);
        if (!central[mu[a]]) is_central = false;
        if (!central[nu[a]]) is_normal = false;
    }
    R.is_central = is_central;
    R.is_normal = is_normal;
    if (is_central) {
        R.mu = mu;
        bool sc = true;
        for (Elem a = 0; a < n; a++)
            if (L.mul(mu[a], mu[a]) != kIdentity) sc = false;
        R.is_super_central = sc;
    }
    if (is_normal) R.nu = nu;

    R.is_anti_symmetric = true;
    for (Elem a = 0; a < n; a++)
        if (!central[a] && inv(a) == a) R.is_anti_symmetric = false;

    for (Elem z : S.center)
        if (inv(z) == z) R.symmetric_center.push_back(z);
    return R;
}

} // namespace cdloop
