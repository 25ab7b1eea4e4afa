#include "cdloop/doubling.hpp"

#include <algorithm>

#include "cdloop/catalog.hpp"

namespace cdloop {

namespace {

std::string join_gen(const std::string& base, std::string_view gen) {
    if (base == "1") return std::string(gen);
    if (base == "-1") return "-" + std::string(gen);
    return base + "*" + std::string(gen);
}

} // namespace

DoublingParams validate_params(const LoopTable& L, const Involution& star, Elem gamma,
                               std::optional<Elem> epsilon) {
    if (gamma >= L.order() || !is_central(L, gamma))
        throw LoopError(ErrorCode::GammaNotCentral, "gamma is not central", {gamma});
    if (epsilon) {
        Elem e = *epsilon;
        if (e >= L.order() || !is_central(L, e))
            throw LoopError(ErrorCode::EpsilonNotCentral, "epsilon is not central", {e});
        if (L.mul(e, e) != kIdentity)
            throw LoopError(ErrorCode::EpsilonNotOrderTwo, "epsilon^2 != 1", {e});
        Elem eg = L.mul(e, gamma);
        if (star(eg) != eg)
            throw LoopError(ErrorCode::EpsilonGammaNotSymmetric,
                            "(epsilon·gamma)* != epsilon·gamma", {e, gamma});
    }
    return DoublingParams{gamma, epsilon};
}

DoubleResult double_loop(const LoopTable& L, const Involution& star,
                         const DoublingParams& params, std::string_view gen_name) {
    const int n = L.order();
    const Elem g = params.gamma;
    std::vector<std::vector<int>> t(2 * n, std::vector<int>(2 * n));
    std::vector<std::string> names(2 * n);
    for (Elem a = 0; a < n; a++) {
        names[a] = L.name(a);
        names[n + a] = join_gen(L.name(a), gen_name);
        for (Elem b = 0; b < n; b++) {
            t[a][b] = L.mul(a, b);
            t[a][n + b] = n + L.mul(b, a);              // a(bj) = (ba)j
            t[n + a][b] = n + L.mul(a, star(b));        // (aj)b = (ab*)j
            t[n + a][n + b] = L.mul(g, L.mul(star(b), a)); // (aj)(bj) = gamma·b*a
        }
    }
    DoubleResult D{L, star, LoopTable::validate(t, std::move(names)), std::nullopt,
                   static_cast<Elem>(n), params};
    if (params.epsilon) {
        Elem e = *params.epsilon;
        std::vector<Elem> p(2 * n);
        for (Elem a = 0; a < n; a++) {
            p[a] = star(a);
            p[n + a] = static_cast<Elem>(n + L.mul(e, a)); // (aj)* = (eps·a)j
        }
        D.star = Involution::validate(D.table, std::move(p));
    }
    return D;
}

std::vector<DoubleResult> double_iterate(const LoopTable& L, const Involution& star,
                                         std::span<const Elem> gammas,
                                         std::span<const std::optional<Elem>> epsilons) {
    if (gammas.size() != epsilons.size())
        throw LoopError(ErrorCode::NotSquare, "gamma/epsilon sequences differ in length");
    std::vector<DoubleResult> chain;
    const LoopTable* cur = &L;
    const Involution* inv = &star;
    for (size_t i = 0; i < gammas.size(); i++) {
        if (!inv)
            throw LoopError(ErrorCode::MissingInvolution,
                            "previous step dropped the involution at step " +
                                std::to_string(i),
                            {static_cast<int>(i)});
        DoublingParams p;
        try {
            p = validate_params(*cur, *inv, gammas[i], epsilons[i]);
        } catch (LoopError& e) {
            throw LoopError(e.code(),
                            "step " + std::to_string(i) + ": " + e.what(),
                            {static_cast<int>(i)});
        }
        chain.push_back(double_loop(*cur, *inv, p, "j" + std::to_string(i + 1)));
        cur = &chain.back().table;
        inv = chain.back().star ? &*chain.back().star : nullptr;
    }
    return chain;
}

std::vector<DoubleResult> build_qn(int n) {
    if (n < 1 || n > 8)
        throw LoopError(ErrorCode::OrderCapExceeded, "Q_n supported for 1 <= n <= 8", {n});
    LoopTable z2 = LoopTable::validate({{0, 1}, {1, 0}}, {"1", "-1"});
    Involution id = identity_involution(z2);
    std::vector<Elem> gammas(n, static_cast<Elem>(1));
    std::vector<std::optional<Elem>> eps(n, static_cast<Elem>(1));
    return double_iterate(z2, id, gammas, eps);
}

std::pair<LoopTable, Involution> qn_pair(int n) {
    if (n == 0) {
        LoopTable z2 = LoopTable::validate({{0, 1}, {1, 0}}, {"1", "-1"});
        Involution id = identity_involution(z2);
        return {z2, id};
    }
    auto chain = build_qn(n);
    return {chain.back().table, *chain.back().star};
}

DoubleResult build_chein(const LoopTable& G) {
    const int n = G.order();
    for (Elem a = 0; a < n; a++)
        for (Elem b = 0; b < n; b++)
            for (Elem c = 0; c < n; c++)
                if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
                    throw LoopError(ErrorCode::NotAssociative, "not a group", {a, b, c});
    Involution inv = inverse_involution(G);
    DoublingParams p = validate_params(G, inv, kIdentity, kIdentity);
    return double_loop(G, inv, p);
}

std::vector<DoubleResult> build_general(int m, std::span<const int> gamma_exponents) {
    if (m < 2 || m % 2 != 0)
        throw LoopError(ErrorCode::OddCenter, "center order must be even", {m});
    LoopTable zm = cyclic_group(m);
    Involution id = identity_involution(zm);
    Elem minus_one = static_cast<Elem>(m / 2);
    std::vector<Elem> gammas;
    std::vector<std::optional<Elem>> eps;
    for (int e : gamma_exponents) {
        gammas.push_back(static_cast<Elem>(((e % m) + m) % m));
        eps.push_back(minus_one);
    }
    return double_iterate(zm, id, gammas, eps);
}

TripleTableReport verify_triple_table(const DoubleResult& D) {
    const LoopTable& L = D.base;
    const LoopTable& M = D.table;
    const Involution& s = D.base_star;
    const int n = L.order();
    const Elem g = D.params.gamma;
    const Elem gs = s(g);
    TripleTableReport R;

    auto lj = [&](Elem a) { return static_cast<Elem>(n + a); };
    for (Elem a = 0; a < n; a++)
        for (Elem b = 0; b < n; b++)
            for (Elem c = 0; c < n; c++) {
                // per row: {x, y, z, formula for (xy)z, formula for x(yz)}
                const Elem sb = s(b), sc = s(c);
                struct Row {
                    Elem x, y, z, lhs, rhs;
                };
                const Row rows[8] = {
                    {a, b, c, L.mul(L.mul(a, b), c), L.mul(a, L.mul(b, c))},
                    {a, b, lj(c), lj(L.mul(c, L.mul(a, b))), lj(L.mul(L.mul(c, b), a))},
                    {a, lj(b), c, lj(L.mul(L.mul(b, a), sc)), lj(L.mul(L.mul(b, sc), a))},
                    {a, lj(b), lj(c), L.mul(g, L.mul(sc, L.mul(b, a))),
                     L.mul(g, L.mul(a, L.mul(sc, b)))},
                    {lj(a), b, c, lj(L.mul(L.mul(a, sb), sc)), lj(L.mul(a, L.mul(sc, sb)))},
                    {lj(a), b, lj(c), L.mul(g, L.mul(sc, L.mul(a, sb))),
                     L.mul(g, L.mul(L.mul(sb, sc), a))},
                    {lj(a), lj(b), c, L.mul(g, L.mul(L.mul(sb, a), c)),
                     L.mul(g, L.mul(L.mul(c, sb), a))},
                    {lj(a), lj(b), lj(c), lj(L.mul(g, L.mul(c, L.mul(sb, a)))),
                     lj(L.mul(gs, L.mul(a, L.mul(sb, c))))},
                };
                for (int r = 0; r < 8; r++) {
                    R.checks++;
                    Elem direct_l = M.mul(M.mul(rows[r].x, rows[r].y), rows[r].z);
                    Elem direct_r = M.mul(rows[r].x, M.mul(rows[r].y, rows[r].z));
                    if (direct_l != rows[r].lhs || direct_r != rows[r].rhs)
                        R.mismatches.push_back({r + 1, a, b, c});
                }
            }
    return R;
}

DoubleFormulaReport verify_double_formulas(const DoubleResult& D) {
    const LoopTable& L = D.base;
    const LoopTable& M = D.table;
    const Involution& s = D.base_star;
    const int n = L.order();
    const int m = M.order();
    DoubleFormulaReport R;

    auto lj = [&](Elem a) { return static_cast<Elem>(n + a); };
    auto inv_c = [&](Elem z) { return L.rho(z); }; // central: two-sided inverse

    // [M,M] ⊆ L and [M,M,M] ⊆ L
    for (Elem x = 0; x < m; x++)
        for (Elem y = 0; y < m; y++) {
            R.checks++;
            if (M.commutator(x, y) >= n) R.mismatches.push_back({"MM_in_L", x, y, 0});
            for (Elem z = 0; z < m; z++) {
                R.checks++;
                if (M.associator(x, y, z) >= n)
                    R.mismatches.push_back({"MMM_in_L", x, y, z});
            }
        }

    // commutator identities, for all a,b in L:
    //   [a,bj]·(ab*) = a*b*,  [aj,b]·(b*a*) = ba*,  b*a = (a*b)·[aj,bj],
    //   and [bj,a*] = [a,bj].
    for (Elem a = 0; a < n; a++)
        for (Elem b = 0; b < n; b++) {
            const Elem sa = s(a), sb = s(b);
            R.checks += 4;
            Elem k1 = M.commutator(a, lj(b));
            if (L.mul(k1, L.mul(a, sb)) != L.mul(sa, sb))
                R.mismatches.push_back({"comm1", a, b, 0});
            Elem k2 = M.commutator(lj(a), b);
            if (L.mul(k2, L.mul(sb, sa)) != L.mul(b, sa))
                R.mismatches.push_back({"comm2", a, b, 0});
            Elem k3 = M.commutator(lj(a), lj(b));
            if (L.mul(L.mul(sa, b), k3) != L.mul(sb, a))
                R.mismatches.push_back({"comm3", a, b, 0});
            if (M.commutator(lj(b), sa) != k1)
                R.mismatches.push_back({"comm_star", a, b, 0});
        }

    // associator formulas need central commutators/associators in L
    StructureReport S = structure_sets(L);
    std::vector<char> central(n, 0);
    for (Elem z : S.center) central[z] = 1;
    bool za = true;
    for (Elem x : S.derived.members)
        if (!central[x]) za = false;
    R.associator_block_run = za;
    if (!za) return R;

    const Elem g = D.params.gamma;
    const Elem gfac = L.mul(s(g), inv_c(g)); // gamma* · gamma^{-1}
    for (Elem a = 0; a < n; a++)
        for (Elem b = 0; b < n; b++)
            for (Elem c = 0; c < n; c++) {
                const Elem sa = s(a), sb = s(b), sc = s(c);
                auto A3 = [&](Elem x, Elem y, Elem z) { return L.associator(x, y, z); };
                auto C2 = [&](Elem x, Elem y) { return L.commutator(x, y); };
                struct F {
                    const char* which;
                    Elem lhs, rhs;
                };
                const F fs[8] = {
                    {"assoc_r1", M.associator(a, b, c), A3(a, b, c)},
                    {"assoc_r2", M.associator(a, b, lj(c)),
                     L.mul(A3(sa, sb, sc), C2(sb, sa))},
                    {"assoc_r3", M.associator(a, lj(b), c),
                     L.mul(L.mul(inv_c(A3(c, sa, sb)), A3(sa, c, sb)), C2(c, sa))},
                    {"assoc_r4", M.associator(a, lj(b), lj(c)),
                     L.mul(L.mul(L.mul(inv_c(A3(sc, a, b)), A3(a, sc, b)), C2(sc, a)),
                           C2(b, a))},
                    {"assoc_r5", M.associator(lj(a), b, c),
                     L.mul(inv_c(A3(c, b, sa)), C2(c, b))},
                    {"assoc_r6", M.associator(lj(a), b, lj(c)),
                     L.mul(L.mul(inv_c(A3(sc, sb, a)), C2(a, sb)), C2(sc, sb))},
                    {"assoc_r7", M.associator(lj(a), lj(b), c),
                     L.mul(L.mul(L.mul(A3(sb, a, c), inv_c(A3(sb, c, a))), C2(sb, c)),
                           C2(a, c))},
                    {"assoc_r8", M.associator(lj(a), lj(b), lj(c)),
                     L.mul(L.mul(L.mul(gfac, inv_c(A3(sc, b, sa))), C2(L.mul(sa, b), sc)),
                           C2(sa, b))},
                };
                for (const F& f : fs) {
                    R.checks++;
                    if (f.lhs != f.rhs) R.mismatches.push_back({f.which, a, b, c});
                }
            }
    return R;
}

} // namespace cdloop
