#include "cdloop/loop.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cdloop/involution.hpp"

namespace cdloop {

const char* error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::IdentityNotAtZero: return "IdentityNotAtZero";
    case ErrorCode::NotAPermutationRow: return "NotAPermutationRow";
    case ErrorCode::NotAPermutationCol: return "NotAPermutationCol";
    case ErrorCode::NotASubloop: return "NotASubloop";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::MovesIdentity: return "MovesIdentity";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::NotOrderTwo: return "NotOrderTwo";
    case ErrorCode::NotAntiHom: return "NotAntiHom";
    case ErrorCode::MissingInvolution: return "MissingInvolution";
    case ErrorCode::GammaNotCentral: return "GammaNotCentral";
    case ErrorCode::EpsilonNotCentral: return "EpsilonNotCentral";
    case ErrorCode::EpsilonNotOrderTwo: return "EpsilonNotOrderTwo";
    case ErrorCode::EpsilonGammaNotSymmetric: return "EpsilonGammaNotSymmetric";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::OddCenter: return "OddCenter";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::NotInZAE2: return "NotInZAE2";
    case ErrorCode::GammaNotSymmetricCentral: return "GammaNotSymmetricCentral";
    case ErrorCode::DimTooSmall: return "DimTooSmall";
    case ErrorCode::JInU: return "JInU";
    case ErrorCode::QuotientNotElementaryAbelian: return "QuotientNotElementaryAbelian";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::JNotAllowed: return "JNotAllowed";
    }
    return "Unknown";
}

LoopTable LoopTable::validate(const std::vector<std::vector<int>>& raw,
                              std::vector<std::string> names) {
    const int n = static_cast<int>(raw.size());
    if (n == 0)
        throw LoopError(ErrorCode::NotSquare, "empty table");
    for (int i = 0; i < n; i++)
        if (static_cast<int>(raw[i].size()) != n)
            throw LoopError(ErrorCode::NotSquare, "table is not square", {i});
    if (n > 0xFFFF)
        throw LoopError(ErrorCode::OrderCapExceeded, "order too large");

    LoopTable L;
    L.n_ = n;
    L.table_.assign(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            int v = raw[i][j];
            if (v < 0 || v >= n)
                throw LoopError(ErrorCode::NotAPermutationRow,
                                "entry out of range at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")",
                                {i, j});
            L.table_[i * n + j] = static_cast<Elem>(v);
        }

    // identity at index 0: row 0 and column 0 are the identity permutation
    for (int j = 0; j < n; j++)
        if (L.table_[0 * n + j] != j)
            throw LoopError(ErrorCode::IdentityNotAtZero,
                            "row 0 is not the identity permutation", {j});
    for (int i = 0; i < n; i++)
        if (L.table_[i * n + 0] != i)
            throw LoopError(ErrorCode::IdentityNotAtZero,
                            "column 0 is not the identity permutation", {i});

    // rows and columns are permutations (the loop axiom)
    std::vector<char> seen(n);
    for (int i = 0; i < n; i++) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int j = 0; j < n; j++) {
            Elem v = L.table_[i * n + j];
            if (seen[v])
                throw LoopError(ErrorCode::NotAPermutationRow,
                                "row " + std::to_string(i) + " repeats value " +
                                    std::to_string(v),
                                {i});
            seen[v] = 1;
        }
    }
    for (int j = 0; j < n; j++) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int i = 0; i < n; i++) {
            Elem v = L.table_[i * n + j];
            if (seen[v])
                throw LoopError(ErrorCode::NotAPermutationCol,
                                "column " + std::to_string(j) + " repeats value " +
                                    std::to_string(v),
                                {j});
            seen[v] = 1;
        }
    }

    if (names.empty()) {
        names.reserve(n);
        for (int i = 0; i < n; i++) names.push_back("e" + std::to_string(i));
    }
    if (static_cast<int>(names.size()) != n)
        throw LoopError(ErrorCode::NotSquare, "names length does not match order");
    L.names_ = std::move(names);

    // division tables
    L.ldiv_.assign(static_cast<size_t>(n) * n, 0);
    L.rdiv_.assign(static_cast<size_t>(n) * n, 0);
    for (int a = 0; a < n; a++)
        for (int x = 0; x < n; x++) {
            L.ldiv_[a * n + L.table_[a * n + x]] = static_cast<Elem>(x); // a\(a·x) = x
            L.rdiv_[L.table_[x * n + a] * n + a] = static_cast<Elem>(x); // (x·a)/a = x
        }
    return L;
}

Elem LoopTable::central_power(Elem z, int e) const {
    Elem base = z;
    if (e < 0) {
        base = rho(z); // central elements have two-sided inverses
        e = -e;
    }
    Elem r = kIdentity;
    for (int i = 0; i < e; i++) r = mul(r, base);
    return r;
}

std::optional<Elem> LoopTable::find_name(const std::string& s) const {
    for (int i = 0; i < n_; i++)
        if (names_[i] == s) return static_cast<Elem>(i);
    return std::nullopt;
}

bool is_central(const LoopTable& L, Elem z) {
    const int n = L.order();
    for (Elem x = 0; x < n; x++)
        if (L.mul(z, x) != L.mul(x, z)) return false;
    for (Elem x = 0; x < n; x++)
        for (Elem y = 0; y < n; y++) {
            Elem xy = L.mul(x, y);
            if (L.mul(L.mul(z, x), y) != L.mul(z, xy)) return false;
            if (L.mul(L.mul(x, z), y) != L.mul(x, L.mul(z, y))) return false;
            if (L.mul(xy, z) != L.mul(x, L.mul(y, z))) return false;
        }
    return true;
}

Subloop subloop_from_members(const LoopTable& L, std::vector<Elem> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Subloop S;
    S.mask.assign(L.order(), 0);
    for (Elem m : members) S.mask[m] = 1;
    if (!S.mask[kIdentity])
        throw LoopError(ErrorCode::NotASubloop, "subloop misses the identity");
    for (Elem a : members)
        for (Elem b : members)
            if (!S.mask[L.mul(a, b)])
                throw LoopError(ErrorCode::NotASubloop,
                                "set not closed under multiplication", {a, b});
    S.members = std::move(members);
    return S;
}

Subloop generate_subloop(const LoopTable& L, std::span<const Elem> gens,
                         const Involution* close_star) {
    const int n = L.order();
    std::vector<char> in(n, 0);
    std::vector<Elem> work;
    auto push = [&](Elem x) {
        if (!in[x]) {
            in[x] = 1;
            work.push_back(x);
        }
    };
    push(kIdentity);
    for (Elem g : gens) {
        if (g >= n)
            throw LoopError(ErrorCode::NotAPermutation, "generator id out of range", {g});
        push(g);
    }
    // fixpoint closure under multiply, both divisions, and the involution
    for (size_t i = 0; i < work.size(); i++) {
        Elem a = work[i];
        if (close_star) push((*close_star)(a));
        for (size_t k = 0; k <= i; k++) {
            Elem b = work[k];
            push(L.mul(a, b));
            push(L.mul(b, a));
            push(L.left_div(a, b));
            push(L.left_div(b, a));
            push(L.right_div(a, b));
            push(L.right_div(b, a));
        }
    }
    Subloop S;
    S.mask = std::move(in);
    for (int x = 0; x < n; x++)
        if (S.mask[x]) S.members.push_back(static_cast<Elem>(x));
    return S;
}

Quotient normal_quotient(const LoopTable& L, const Subloop& N) {
    const int n = L.order();
    // re-certify the subloop (cheap, and callers may hand-build handles)
    for (Elem a : N.members)
        for (Elem b : N.members)
            if (!N.contains(L.mul(a, b)))
                throw LoopError(ErrorCode::NotASubloop, "N is not a subloop", {a, b});

    // coset partition by left translates xN, identity coset first
    std::vector<Elem> class_of(n, 0xFFFF);
    std::map<std::vector<Elem>, Elem> key_to_class;
    std::vector<Elem> rep;
    for (int x = 0; x < n; x++) {
        std::vector<Elem> coset;
        coset.reserve(N.members.size());
        for (Elem m : N.members) coset.push_back(L.mul(static_cast<Elem>(x), m));
        std::sort(coset.begin(), coset.end());
        auto [it, fresh] = key_to_class.try_emplace(coset, static_cast<Elem>(rep.size()));
        if (fresh) rep.push_back(static_cast<Elem>(x));
        class_of[x] = it->second;
    }
    // partition well-defined: y in xN implies yN = xN
    for (int x = 0; x < n; x++)
        for (Elem m : N.members)
            if (class_of[L.mul(static_cast<Elem>(x), m)] != class_of[x])
                throw LoopError(ErrorCode::NotNormal,
                                "coset partition not well defined", {x, m});
    // congruence: multiplication constant on cosets (both sides)
    for (int x = 0; x < n; x++)
        for (int y = 0; y < n; y++) {
            Elem xy = L.mul(static_cast<Elem>(x), static_cast<Elem>(y));
            for (Elem m : N.members) {
                if (class_of[L.mul(L.mul(static_cast<Elem>(x), m), static_cast<Elem>(y))] !=
                    class_of[xy])
                    throw LoopError(ErrorCode::NotNormal, "not a congruence", {x, y, m});
                if (class_of[L.mul(static_cast<Elem>(x), L.mul(static_cast<Elem>(y), m))] !=
                    class_of[xy])
                    throw LoopError(ErrorCode::NotNormal, "not a congruence", {x, y, m});
            }
        }

    const int q = static_cast<int>(rep.size());
    std::vector<std::vector<int>> qt(q, std::vector<int>(q));
    std::vector<std::string> qnames(q);
    for (int i = 0; i < q; i++) {
        qnames[i] = "[" + L.name(rep[i]) + "]";
        for (int j = 0; j < q; j++) qt[i][j] = class_of[L.mul(rep[i], rep[j])];
    }
    Quotient Q{LoopTable::validate(qt, std::move(qnames)), std::move(class_of)};
    return Q;
}

StructureReport structure_sets(const LoopTable& L) {
    const int n = L.order();
    StructureReport R;
    std::vector<char> nl(n, 1), nm(n, 1), nr(n, 1), kc(n, 1);
    for (Elem a = 0; a < n; a++) {
        for (Elem x = 0; x < n && kc[a]; x++)
            if (L.mul(a, x) != L.mul(x, a)) kc[a] = 0;
        for (Elem x = 0; x < n && (nl[a] || nm[a] || nr[a]); x++)
            for (Elem y = 0; y < n; y++) {
                if (L.mul(L.mul(a, x), y) != L.mul(a, L.mul(x, y))) nl[a] = 0;
                if (L.mul(L.mul(x, a), y) != L.mul(x, L.mul(a, y))) nm[a] = 0;
                if (L.mul(L.mul(x, y), a) != L.mul(x, L.mul(y, a))) nr[a] = 0;
            }
    }
    for (Elem a = 0; a < n; a++) {
        if (nl[a]) R.nuc_left.push_back(a);
        if (nm[a]) R.nuc_mid.push_back(a);
        if (nr[a]) R.nuc_right.push_back(a);
        if (nl[a] && nm[a] && nr[a]) R.nucleus.push_back(a);
        if (kc[a]) R.commutant.push_back(a);
        if (nl[a] && nm[a] && nr[a] && kc[a]) R.center.push_back(a);
    }

    std::vector<Elem> gens;
    std::vector<char> central(n, 0);
    for (Elem z : R.center) central[z] = 1;
    bool za = true, e2 = true;
    for (Elem a = 0; a < n; a++) {
        if (!central[L.mul(a, a)]) e2 = false;
        for (Elem b = 0; b < n; b++) {
            Elem c2 = L.commutator(a, b);
            if (c2 != kIdentity) gens.push_back(c2);
            if (!central[c2]) za = false;
            for (Elem c = 0; c < n; c++) {
                Elem s = L.associator(a, b, c);
                if (s != kIdentity) gens.push_back(s);
                if (!central[s]) za = false;
            }
        }
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    R.derived = generate_subloop(L, gens);

    if (za && e2) {
        int idx = n / static_cast<int>(R.center.size());
        int d = 0;
        while ((1 << d) < idx) d++;
        R.dim = d; // |L/Z| is a power of 2 here: exponent-2 abelian quotient
    }
    return R;
}

} // namespace cdloop
