#include "cdloop/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cdloop {

namespace {

std::vector<char> central_mask(const LoopTable& L) {
    std::vector<char> m(L.order(), 0);
    for (Elem z : structure_sets(L).center) m[z] = 1;
    return m;
}

bool subset_associative(const LoopTable& L, const std::vector<Elem>& S) {
    for (Elem a : S)
        for (Elem b : S)
            for (Elem c : S)
                if (L.mul(L.mul(a, b), c) != L.mul(a, L.mul(b, c))) return false;
    return true;
}

bool subset_moufang(const LoopTable& L, const std::vector<Elem>& S) {
    for (Elem z : S)
        for (Elem x : S)
            for (Elem y : S)
                if (L.mul(L.mul(z, x), L.mul(y, z)) !=
                    L.mul(L.mul(z, L.mul(x, y)), z))
                    return false;
    return true;
}

} // namespace

PropertyReport property_report(const LoopTable& L, const Involution* inv) {
    const int n = L.order();
    PropertyReport R;

    auto scan2 = [&](Flag& f, auto&& pred) {
        for (Elem a = 0; a < n && f.holds; a++)
            for (Elem b = 0; b < n; b++)
                if (!pred(a, b)) {
                    f.holds = false;
                    f.witness = {a, b};
                    break;
                }
    };
    auto scan3 = [&](Flag& f, auto&& pred) {
        for (Elem a = 0; a < n && f.holds; a++)
            for (Elem b = 0; b < n && f.holds; b++)
                for (Elem c = 0; c < n; c++)
                    if (!pred(a, b, c)) {
                        f.holds = false;
                        f.witness = {a, b, c};
                        break;
                    }
    };

    scan2(R.commutative, [&](Elem a, Elem b) { return L.mul(a, b) == L.mul(b, a); });
    scan3(R.associative, [&](Elem a, Elem b, Elem c) {
        return L.mul(L.mul(a, b), c) == L.mul(a, L.mul(b, c));
    });
    scan2(R.flexible, [&](Elem x, Elem y) {
        return L.mul(x, L.mul(y, x)) == L.mul(L.mul(x, y), x);
    });
    scan2(R.left_alternative, [&](Elem x, Elem y) {
        return L.mul(L.mul(x, x), y) == L.mul(x, L.mul(x, y));
    });
    scan2(R.right_alternative, [&](Elem x, Elem y) {
        return L.mul(L.mul(x, y), y) == L.mul(x, L.mul(y, y));
    });
    R.alternative.holds = R.left_alternative.holds && R.right_alternative.holds;
    if (!R.alternative.holds)
        R.alternative.witness = R.left_alternative.holds ? R.right_alternative.witness
                                                         : R.left_alternative.witness;
    scan3(R.moufang, [&](Elem z, Elem x, Elem y) {
        return L.mul(L.mul(z, x), L.mul(y, z)) == L.mul(L.mul(z, L.mul(x, y)), z);
    });

    for (Elem x = 0; x < n && R.power_associative.holds; x++) {
        Elem g[1] = {x};
        if (!subset_associative(L, generate_subloop(L, g).members))
            R.power_associative = {false, {x}};
    }
    for (Elem x = 0; x < n && R.diassociative.holds; x++)
        for (Elem y = 0; y < n; y++) {
            Elem g[2] = {x, y};
            if (!subset_associative(L, generate_subloop(L, g).members)) {
                R.diassociative = {false, {x, y}};
                break;
            }
        }

    std::vector<char> central = central_mask(L);
    for (Elem a = 0; a < n && R.central_by_abelian.holds; a++)
        for (Elem b = 0; b < n && R.central_by_abelian.holds; b++) {
            if (!central[L.commutator(a, b)]) {
                R.central_by_abelian = {false, {a, b}};
                break;
            }
            for (Elem c = 0; c < n; c++)
                if (!central[L.associator(a, b, c)]) {
                    R.central_by_abelian = {false, {a, b, c}};
                    break;
                }
        }
    for (Elem x = 0; x < n && R.exp2.holds; x++)
        if (!central[L.mul(x, x)]) R.exp2 = {false, {x}};

    scan2(R.inverse_property, [&](Elem x, Elem y) {
        return L.mul(L.lambda(x), L.mul(x, y)) == y &&
               L.mul(L.mul(x, y), L.rho(y)) == x;
    });
    scan2(R.weak_inverse, [&](Elem x, Elem y) {
        return L.mul(x, L.mul(y, L.rho(L.mul(x, y)))) == kIdentity;
    });
    scan2(R.anti_automorphic_inverse, [&](Elem x, Elem y) {
        return L.lambda(L.mul(x, y)) == L.mul(L.lambda(y), L.lambda(x));
    });
    for (Elem x = 0; x < n && R.well_defined_inverse.holds; x++)
        if (L.lambda(x) != L.rho(x)) R.well_defined_inverse = {false, {x}};

    scan2(R.anti_commutative, [&](Elem a, Elem b) {
        Elem ab = L.mul(a, b);
        if (central[a] || central[b] || central[ab]) return true;
        return L.mul(b, a) != ab;
    });

    if (inv) {
        Flag as;
        for (Elem a = 0; a < n && as.holds; a++)
            if (!central[a] && (*inv)(a) == a) as = {false, {a}};
        R.anti_symmetric = as;
    }
    return R;
}

bool diassociative_fast(const LoopTable& L) {
    const int n = L.order();
    std::vector<char> central = central_mask(L);
    for (Elem a = 0; a < n; a++) {
        if (!central[L.mul(a, a)])
            throw LoopError(ErrorCode::NotInZAE2, "a square is not central", {a});
        for (Elem b = 0; b < n; b++) {
            if (!central[L.commutator(a, b)])
                throw LoopError(ErrorCode::NotInZAE2, "a commutator is not central",
                                {a, b});
            for (Elem c = 0; c < n; c++)
                if (!central[L.associator(a, b, c)])
                    throw LoopError(ErrorCode::NotInZAE2, "an associator is not central",
                                    {a, b, c});
        }
    }
    // 4^3 associators on {1, x, y, xy} decide <x,y> for every pair
    for (Elem x = 0; x < n; x++)
        for (Elem y = 0; y < n; y++) {
            const Elem w[4] = {kIdentity, x, y, L.mul(x, y)};
            for (Elem u : w)
                for (Elem v : w)
                    for (Elem t : w)
                        if (L.associator(u, v, t) != kIdentity) return false;
        }
    return true;
}

MoufangDoubleReport moufang_double_report(const LoopTable& L, const Involution& inv,
                                          Elem gamma) {
    if (!is_central(L, gamma) || inv(gamma) != gamma)
        throw LoopError(ErrorCode::GammaNotSymmetricCentral,
                        "gamma must be symmetric central", {gamma});
    const int n = L.order();
    MoufangDoubleReport R;
    PropertyReport base = property_report(L, &inv);
    R.loop_moufang = base.moufang;
    for (Elem a = 0; a < n && R.comm_ccstar.holds; a++)
        for (Elem c = 0; c < n; c++)
            if (L.commutator(a, L.mul(c, inv(c))) != kIdentity) {
                R.comm_ccstar = {false, {a, c}};
                break;
            }
    for (Elem c = 0; c < n && R.comm_c_cstar.holds; c++)
        if (L.commutator(c, inv(c)) != kIdentity) R.comm_c_cstar = {false, {c}};
    for (Elem a = 0; a < n && R.assoc_c_cstar.holds; a++)
        for (Elem c = 0; c < n; c++)
            if (L.associator(a, c, inv(c)) != kIdentity) {
                R.assoc_c_cstar = {false, {a, c}};
                break;
            }
    StructureReport S = structure_sets(L);
    std::vector<char> nuc(n, 0);
    for (Elem a : S.nucleus) nuc[a] = 1;
    for (Elem c = 0; c < n && R.norm_in_nucleus.holds; c++)
        if (!nuc[L.mul(L.mul(c, inv(c)), c)]) R.norm_in_nucleus = {false, {c}};

    R.predicted = R.loop_moufang.holds && R.comm_ccstar.holds && R.comm_c_cstar.holds &&
                  R.assoc_c_cstar.holds && R.norm_in_nucleus.holds;

    DoubleResult D = double_loop(L, inv, DoublingParams{gamma, std::nullopt});
    R.actual = property_report(D.table).moufang.holds;
    return R;
}

ClassSpace class_space(const LoopTable& L) {
    const int n = L.order();
    StructureReport S = structure_sets(L);
    if (!S.dim)
        throw LoopError(ErrorCode::NotInZAE2,
                        "quotient by the center is not elementary abelian");
    if (*S.dim > 8)
        throw LoopError(ErrorCode::OrderCapExceeded, "rank above the supported cap",
                        {*S.dim});
    ClassSpace C;
    C.rank = *S.dim;
    C.center = S.center;
    std::vector<char> central(n, 0);
    for (Elem z : S.center) central[z] = 1;

    // classes mod Z: x ~ y iff x in Z·y, i.e. y\x central... use coset of center
    std::vector<int> class_id(n, -1);
    std::vector<Elem> class_rep;
    for (Elem x = 0; x < n; x++) {
        if (class_id[x] >= 0) continue;
        int id = static_cast<int>(class_rep.size());
        class_rep.push_back(x);
        for (Elem z : S.center) class_id[L.mul(z, x)] = id;
    }
    // assign F2 coordinates by greedy basis over the class group
    const int classes = static_cast<int>(class_rep.size());
    std::vector<int> coord_of_class(classes, -1);
    coord_of_class[class_id[kIdentity]] = 0;
    std::vector<Elem> rep_of_coord(static_cast<size_t>(1) << C.rank, 0xFFFF);
    rep_of_coord[0] = kIdentity;
    int used = 0;
    for (Elem x = 0; x < n && used < C.rank; x++) {
        if (coord_of_class[class_id[x]] >= 0) continue;
        C.basis.push_back(x);
        int bit = 1 << used;
        used++;
        // close: every known coordinate v gains v|bit via multiplication
        for (int v = 0; v < bit; v++) {
            if (rep_of_coord[v] == 0xFFFF) continue;
            Elem y = L.mul(rep_of_coord[v], x);
            coord_of_class[class_id[y]] = v | bit;
            rep_of_coord[v | bit] = y;
        }
    }
    C.coords.resize(n);
    for (Elem x = 0; x < n; x++)
        C.coords[x] = static_cast<std::uint8_t>(coord_of_class[class_id[x]]);
    // smallest element per coordinate vector
    C.reps_.assign(static_cast<size_t>(1) << C.rank, 0xFFFF);
    for (Elem x = 0; x < n; x++)
        if (C.reps_[C.coords[x]] == 0xFFFF) C.reps_[C.coords[x]] = x;
    return C;
}

namespace {

// all 3-dimensional subspaces of F2^rank, each as the sorted list of its
// 7 nonzero vectors
std::vector<std::vector<int>> three_dim_subspaces(int rank) {
    std::vector<std::vector<int>> out;
    std::set<std::vector<int>> seen;
    const int top = 1 << rank;
    for (int a = 1; a < top; a++)
        for (int b = a + 1; b < top; b++) {
            if ((a ^ b) < b) continue; // keep canonical-ish, dedup below anyway
            for (int c = b + 1; c < top; c++) {
                if (c == (a ^ b)) continue;
                std::vector<int> span = {a, b, a ^ b, c, a ^ c, b ^ c, a ^ b ^ c};
                std::sort(span.begin(), span.end());
                if (seen.insert(span).second) out.push_back(std::move(span));
            }
        }
    return out;
}

std::vector<Elem> preimage_members(const LoopTable& L, const ClassSpace& C,
                                   const std::vector<int>& span_nonzero) {
    std::vector<char> in_span(static_cast<size_t>(1) << C.rank, 0);
    in_span[0] = 1;
    for (int v : span_nonzero) in_span[v] = 1;
    std::vector<Elem> members;
    for (Elem x = 0; x < L.order(); x++)
        if (in_span[C.coords[x]]) members.push_back(x);
    return members;
}

} // namespace

std::vector<Elem> locally_moufang_elements(const LoopTable& M) {
    ClassSpace C = class_space(M);
    if (C.rank < 3)
        throw LoopError(ErrorCode::DimTooSmall, "dimension below 3", {C.rank});

    std::vector<char> excluded(M.order(), 0);
    for (const auto& span : three_dim_subspaces(C.rank)) {
        std::vector<Elem> S = preimage_members(M, C, span);
        // a full preimage is a genuine 3-dimensional subloop unless some
        // class turns central inside it
        bool genuine = true;
        for (int v : span) {
            Elem r = 0xFFFF;
            for (Elem x : S)
                if (C.coords[x] == v) {
                    r = x;
                    break;
                }
            bool cent = true;
            for (Elem y : S) {
                if (M.mul(r, y) != M.mul(y, r)) cent = false;
                for (Elem z : S) {
                    if (M.associator(r, y, z) != kIdentity ||
                        M.associator(y, r, z) != kIdentity ||
                        M.associator(y, z, r) != kIdentity) {
                        cent = false;
                        break;
                    }
                }
                if (!cent) break;
            }
            if (cent) {
                genuine = false;
                break;
            }
        }
        if (!genuine) continue;
        if (subset_moufang(M, S)) continue;
        // a non-Moufang 3-dimensional subloop excludes all its elements,
        // and in particular every central element of M
        for (Elem x = 0; x < M.order(); x++)
            if (C.coords[x] == 0 || std::find(span.begin(), span.end(),
                                              static_cast<int>(C.coords[x])) != span.end())
                excluded[x] = 1;
    }
    std::vector<Elem> out;
    for (Elem x = 0; x < M.order(); x++)
        if (!excluded[x]) out.push_back(x);
    return out;
}

std::vector<JPartner> j_partners(const LoopTable& M, const Subloop& base,
                                 const Subloop& U, Elem j) {
    ClassSpace C = class_space(M);
    // image of U must be a subspace avoiding the class of j
    std::set<int> uvecs;
    for (Elem x : U.members) uvecs.insert(C.coords[x]);
    const int jv = C.coords[j];
    if (uvecs.count(jv))
        throw LoopError(ErrorCode::JInU, "class of j meets U", {j});
    for (int a : uvecs)
        for (int b : uvecs)
            if (!uvecs.count(a ^ b))
                throw LoopError(ErrorCode::NotASubloop, "U image is not a subspace",
                                {a, b});
    // W = <U, j>
    std::set<int> wvecs;
    for (int a : uvecs) {
        wvecs.insert(a);
        wvecs.insert(a ^ jv);
    }

    // a subspace of index 2 in W is the kernel of a nonzero functional;
    // express W in a basis and sweep all functionals
    std::vector<int> wbasis;
    {
        std::set<int> spanned = {0};
        for (int v : wvecs) {
            if (spanned.count(v)) continue;
            wbasis.push_back(v);
            std::set<int> grown = spanned;
            for (int s : spanned) grown.insert(s ^ v);
            spanned = std::move(grown);
        }
    }
    const int wdim = static_cast<int>(wbasis.size());
    std::map<int, int> wcoords; // vector in W -> coefficients over wbasis
    for (int mask = 0; mask < (1 << wdim); mask++) {
        int x = 0;
        for (int i = 0; i < wdim; i++)
            if (mask & (1 << i)) x ^= wbasis[i];
        wcoords[x] = mask;
    }
    std::vector<JPartner> out;
    for (int phi = 1; phi < (1 << wdim); phi++) {
        std::set<int> cand;
        for (int v : wvecs)
            if (__builtin_parity(phi & wcoords[v]) == 0) cand.insert(v);
        if (cand.count(jv) || cand == uvecs) continue;

        std::vector<int> nonzero;
        for (int v : cand)
            if (v) nonzero.push_back(v);
        JPartner P;
        P.lift = subloop_from_members(M, preimage_members(M, C, nonzero));
        // canonical generators: greedy basis, preferring representatives
        // inside `base`, then by smallest id; vectors containing j's class
        // component pair with base reps times j
        std::set<int> spanned = {0};
        for (int v : nonzero) {
            if (spanned.count(v)) continue;
            Elem best = 0xFFFF;
            for (Elem x : P.lift.members)
                if (C.coords[x] == v) {
                    if (base.contains(x)) {
                        best = x;
                        break;
                    }
                    if (best == 0xFFFF) best = x;
                }
            P.gens.push_back(best);
            std::set<int> grown = spanned;
            for (int s : spanned) grown.insert(s ^ v);
            spanned = std::move(grown);
        }
        out.push_back(std::move(P));
    }
    std::sort(out.begin(), out.end(), [](const JPartner& a, const JPartner& b) {
        return a.gens < b.gens;
    });
    return out;
}

OctonionCheck octonion_check(const LoopTable& O) {
    OctonionCheck R;
    StructureReport S = structure_sets(O);
    if (!S.dim || *S.dim != 3) return R;
    if (!property_report(O).moufang.holds) return R;
    ClassSpace C = class_space(O);
    std::optional<Elem> alpha;
    for (int a = 1; a < 8; a++)
        for (int b = 1; b < 8; b++) {
            if (b == a) continue;
            for (int c = 1; c < 8; c++) {
                if (c == a || c == b || c == (a ^ b)) continue;
                Elem k =
                    O.associator(C.rep(static_cast<std::uint8_t>(a)),
                                 C.rep(static_cast<std::uint8_t>(b)),
                                 C.rep(static_cast<std::uint8_t>(c)));
                if (!alpha) alpha = k;
                if (*alpha != k)
                    throw std::logic_error("octonion loop with non-constant associator");
            }
        }
    if (O.mul(*alpha, *alpha) != kIdentity)
        throw std::logic_error("octonion associator of order above 2");
    R.is_octonion = true;
    R.alpha = alpha;
    return R;
}

KirshReport kirsh_refutation(const DoubleResult& q3, const DoubleResult& q4) {
    const LoopTable& Q3 = q3.table;
    const LoopTable& Q4 = q4.table;
    if (Q3.order() != 16 || Q4.order() != 32)
        throw std::logic_error("kirsh_refutation expects Q3 and Q4");

    KirshReport R;
    R.x = 2;  // j1
    R.y = 4;  // j2
    R.z = 8;  // j3
    OctonionCheck oc = octonion_check(Q3); // <x,y,z> generates all of Q3
    if (!oc.is_octonion || !oc.alpha)
        throw std::logic_error("Q3 failed the octonion predicate");
    R.alpha = *oc.alpha;

    const Elem j = q4.j; // 16
    auto tj = [&](Elem a) { return static_cast<Elem>(Q3.order() + a); };
    R.xz = Q4.mul(R.x, R.z);
    R.yz = Q4.mul(R.y, R.z);
    R.zj = Q4.mul(R.z, j);
    Elem gens[3] = {tj(R.x), tj(R.y), tj(R.z)};
    Subloop S = generate_subloop(Q4, gens);
    R.triple_in_subloop =
        S.contains(R.xz) && S.contains(R.yz) && S.contains(R.zj);

    ClassSpace C = class_space(Q4);
    int va = C.coords[R.xz], vb = C.coords[R.yz], vc = C.coords[R.zj];
    R.classes_independent = va && vb && vc && vb != va && vc != va && vc != vb &&
                            vc != (va ^ vb);

    R.probe_associator = Q4.associator(R.xz, R.yz, R.zj);

    // closed-form cross-check: [a,b,cj] = [a*,b*,c*][b*,a*] over Q3
    const Involution& s = q4.base_star;
    Elem formula = Q3.mul(Q3.associator(s(R.xz), s(R.yz), s(R.z)),
                          Q3.commutator(s(R.yz), s(R.xz)));
    R.formula_agrees = formula == R.probe_associator;

    R.refutation_established = R.alpha != kIdentity && R.triple_in_subloop &&
                               R.classes_independent &&
                               R.probe_associator == kIdentity && R.formula_agrees;
    if (!R.refutation_established)
        throw std::logic_error("refutation witness could not be reproduced");
    return R;
}

} // namespace cdloop
