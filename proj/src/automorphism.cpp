#include "cdloop/automorphism.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cdloop/analysis.hpp"

namespace cdloop {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t mix2(std::uint64_t a, std::uint64_t b) {
    return mix64(a * 0x100000001B3ull + mix64(b));
}

// size of the multiplicative closure of {x, y}, capped
int pair_closure_size(const LoopTable& L, Elem x, Elem y, int cap,
                      std::vector<char>& in, std::vector<Elem>& work) {
    work.clear();
    auto push = [&](Elem v) {
        if (!in[v]) {
            in[v] = 1;
            work.push_back(v);
        }
    };
    push(kIdentity);
    push(x);
    push(y);
    for (size_t i = 0; i < work.size() && static_cast<int>(work.size()) <= cap; i++)
        for (size_t k = 0; k <= i; k++) {
            push(L.mul(work[i], work[k]));
            push(L.mul(work[k], work[i]));
        }
    int sz = static_cast<int>(work.size());
    for (Elem v : work) in[v] = 0;
    return std::min(sz, cap + 1);
}

// iterated invariant refinement; colors are preserved by every
// automorphism of the requested flavor
std::vector<std::uint32_t> element_colors(const LoopTable& L, const Involution* star,
                                          bool use_star, std::optional<Elem> eps,
                                          std::vector<std::uint8_t>* pair_size_out) {
    const int n = L.order();
    StructureReport S = structure_sets(L);
    std::vector<char> cent(n, 0), com(n, 0), nl(n, 0), nm(n, 0), nr(n, 0);
    for (Elem z : S.center) cent[z] = 1;
    for (Elem z : S.commutant) com[z] = 1;
    for (Elem z : S.nuc_left) nl[z] = 1;
    for (Elem z : S.nuc_mid) nm[z] = 1;
    for (Elem z : S.nuc_right) nr[z] = 1;

    // pairwise subloop sizes, kept for search-time pruning as well
    std::vector<std::uint8_t> psize(static_cast<size_t>(n) * n, 0);
    {
        std::vector<char> buf(n, 0);
        std::vector<Elem> work;
        for (Elem x = 0; x < n; x++)
            for (Elem y = 0; y <= x; y++) {
                int sz = pair_closure_size(L, x, y, 24, buf, work);
                psize[x * n + y] = static_cast<std::uint8_t>(std::min(sz, 255));
                psize[y * n + x] = psize[x * n + y];
            }
    }
    if (pair_size_out) *pair_size_out = psize;

    // loops with an elementary abelian central quotient carry a strong
    // geometric invariant: how many 3-dimensional subloops through an
    // element fail the Moufang identity
    std::vector<int> moufang_defect(n, 0);
    if (n >= 16) {
        try {
            ClassSpace C = class_space(L);
            if (C.rank >= 3) {
                const int top = 1 << C.rank;
                std::vector<std::vector<Elem>> by_class(top);
                for (Elem x = 0; x < n; x++) by_class[C.coords[x]].push_back(x);
                std::set<std::vector<int>> seen;
                std::vector<int> bad_through(top, 0);
                for (int a = 1; a < top; a++)
                    for (int b = a + 1; b < top; b++) {
                        if ((a ^ b) < b) continue;
                        for (int c = b + 1; c < top; c++) {
                            if (c == (a ^ b)) continue;
                            std::vector<int> span = {a,     b,     a ^ b, c,
                                                     a ^ c, b ^ c, a ^ b ^ c};
                            std::sort(span.begin(), span.end());
                            if (!seen.insert(span).second) continue;
                            std::vector<Elem> S = by_class[0];
                            for (int v : span)
                                S.insert(S.end(), by_class[v].begin(), by_class[v].end());
                            bool mo = true;
                            for (Elem z : S) {
                                for (Elem x : S) {
                                    for (Elem y : S)
                                        if (L.mul(L.mul(z, x), L.mul(y, z)) !=
                                            L.mul(L.mul(z, L.mul(x, y)), z)) {
                                            mo = false;
                                            break;
                                        }
                                    if (!mo) break;
                                }
                                if (!mo) break;
                            }
                            if (!mo)
                                for (int v : span) bad_through[v]++;
                        }
                    }
                for (Elem x = 0; x < n; x++) moufang_defect[x] = bad_through[C.coords[x]];
            }
        } catch (const LoopError&) {
            // outside ZA ∩ E2 (or rank too large): profile stays flat
        }
    }

    std::vector<std::uint64_t> key(n);
    for (Elem x = 0; x < n; x++) {
        Elem only[1] = {x};
        std::uint64_t h = 0;
        h = mix2(h, x == kIdentity);
        h = mix2(h, generate_subloop(L, only).size());
        h = mix2(h, cent[x] | (com[x] << 1) | (nl[x] << 2) | (nm[x] << 3) | (nr[x] << 4));
        h = mix2(h, cent[L.mul(x, x)]);
        int cc = 0;
        for (Elem y = 0; y < n; y++)
            if (L.mul(x, y) == L.mul(y, x)) cc++;
        h = mix2(h, cc);
        std::uint64_t prof = 0;
        for (Elem y = 0; y < n; y++) prof += mix64(psize[x * n + y]);
        h = mix2(h, prof);
        h = mix2(h, moufang_defect[x]);
        if (use_star) {
            h = mix2(h, (*star)(x) == x);
            h = mix2(h, (*star)(x) == L.lambda(x));
        }
        if (eps) h = mix2(h, x == *eps);
        key[x] = h;
    }
    // associating profiles, one cubic pass
    {
        std::vector<std::uint32_t> aL(n, 0), aM(n, 0), aR(n, 0);
        for (Elem a = 0; a < n; a++)
            for (Elem b = 0; b < n; b++) {
                Elem ab = L.mul(a, b);
                for (Elem c = 0; c < n; c++)
                    if (L.mul(ab, c) == L.mul(a, L.mul(b, c))) {
                        aL[a]++;
                        aM[b]++;
                        aR[c]++;
                    }
            }
        for (Elem x = 0; x < n; x++)
            key[x] = mix2(mix2(mix2(key[x], aL[x]), aM[x]), aR[x]);
    }

    auto dense = [&](std::vector<std::uint64_t>& k) {
        std::vector<std::uint64_t> uniq(k.begin(), k.end());
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<std::uint32_t> c(n);
        for (int i = 0; i < n; i++)
            c[i] = static_cast<std::uint32_t>(
                std::lower_bound(uniq.begin(), uniq.end(), k[i]) - uniq.begin());
        return c;
    };
    std::vector<std::uint32_t> color = dense(key);

    for (int round = 0; round < 16; round++) {
        size_t before =
            std::set<std::uint32_t>(color.begin(), color.end()).size();
        // color-restricted associativity profiles, one cubic pass
        std::vector<std::uint64_t> hL(n, 0), hM(n, 0), hR(n, 0);
        for (Elem a = 0; a < n; a++)
            for (Elem b = 0; b < n; b++) {
                Elem ab = L.mul(a, b);
                std::uint64_t cab = mix2(color[a], color[b]);
                for (Elem c = 0; c < n; c++)
                    if (L.mul(ab, c) == L.mul(a, L.mul(b, c))) {
                        hL[a] += mix2(color[b], color[c]);
                        hM[b] += mix2(color[a], color[c]);
                        hR[c] += cab;
                    }
            }
        std::vector<std::uint64_t> next(n);
        for (Elem x = 0; x < n; x++) {
            std::uint64_t h = color[x];
            h = mix2(h, color[L.mul(x, x)]);
            h = mix2(h, color[L.lambda(x)]);
            h = mix2(h, color[L.rho(x)]);
            if (use_star) h = mix2(h, color[(*star)(x)]);
            std::uint64_t row = 0, col = 0, cm = 0, ps = 0;
            for (Elem y = 0; y < n; y++) {
                row += mix2(color[y], color[L.mul(x, y)]);
                col += mix2(color[y], color[L.mul(y, x)]);
                if (L.mul(x, y) == L.mul(y, x)) cm += mix64(color[y] + 17);
                ps += mix2(color[y], psize[x * n + y]);
            }
            h = mix2(h, row);
            h = mix2(h, col);
            h = mix2(h, cm);
            h = mix2(h, ps);
            h = mix2(h, hL[x]);
            h = mix2(h, hM[x]);
            h = mix2(h, hR[x]);
            next[x] = h;
        }
        std::vector<std::uint32_t> nc = dense(next);
        size_t after = std::set<std::uint32_t>(nc.begin(), nc.end()).size();
        color = std::move(nc);
        if (after == before) break;
    }
    return color;
}

struct Search {
    const LoopTable& L;
    int n;
    const Involution* star;
    bool use_star;
    std::vector<std::uint32_t> color;
    std::vector<std::uint8_t> psize; // pairwise subloop sizes (capped)
    std::vector<Elem> gens;
    std::vector<int> phi, psi;
    std::vector<Elem> dom;
    std::vector<std::vector<Elem>> found;

    bool assign(Elem x, Elem y, std::vector<Elem>& trail) {
        if (phi[x] != -1) return phi[x] == y;
        if (psi[y] != -1 || color[x] != color[y]) return false;
        phi[x] = y;
        psi[y] = x;
        trail.push_back(x);
        dom.push_back(x);
        return true;
    }

    // close the partial map under products (and the involution)
    bool propagate(Elem g, Elem b, std::vector<Elem>& trail, size_t from) {
        if (!assign(g, b, trail)) return false;
        for (size_t i = from; i < dom.size(); i++) {
            Elem a = dom[i];
            Elem fa = static_cast<Elem>(phi[a]);
            if (use_star && !assign((*star)(a), (*star)(fa), trail)) return false;
            for (size_t k = 0; k < dom.size(); k++) {
                Elem c = dom[k];
                Elem fc = static_cast<Elem>(phi[c]);
                if (!assign(L.mul(a, c), L.mul(fa, fc), trail)) return false;
                if (!assign(L.mul(c, a), L.mul(fc, fa), trail)) return false;
            }
        }
        return true;
    }

    void undo(std::vector<Elem>& trail, size_t dom_size) {
        for (Elem x : trail) {
            psi[phi[x]] = -1;
            phi[x] = -1;
        }
        dom.resize(dom_size);
    }

    void run(size_t depth) {
        if (depth == gens.size()) {
            for (Elem a = 0; a < n; a++)
                for (Elem c = 0; c < n; c++)
                    if (phi[L.mul(a, c)] != L.mul(static_cast<Elem>(phi[a]),
                                                  static_cast<Elem>(phi[c])))
                        return;
            if (use_star)
                for (Elem a = 0; a < n; a++)
                    if (phi[(*star)(a)] != (*star)(static_cast<Elem>(phi[a]))) return;
            std::vector<Elem> perm(n);
            for (int i = 0; i < n; i++) perm[i] = static_cast<Elem>(phi[i]);
            found.push_back(std::move(perm));
            return;
        }
        Elem g = gens[depth];
        if (phi[g] != -1) { // already forced by earlier propagation
            run(depth + 1);
            return;
        }
        for (Elem b = 0; b < n; b++) {
            if (color[b] != color[g] || psi[b] != -1) continue;
            bool compatible = true;
            for (Elem u : dom)
                if (psize[u * n + g] != psize[phi[u] * n + b]) {
                    compatible = false;
                    break;
                }
            if (!compatible) continue;
            std::vector<Elem> trail;
            size_t dsz = dom.size();
            if (propagate(g, b, trail, dsz)) run(depth + 1);
            undo(trail, dsz);
        }
    }
};

std::vector<std::vector<Elem>> greedy_generators(const std::vector<std::vector<Elem>>& elems,
                                                 int n) {
    std::vector<Elem> id(n);
    for (int i = 0; i < n; i++) id[i] = static_cast<Elem>(i);
    std::set<std::vector<Elem>> closed = {id};
    std::vector<std::vector<Elem>> gens;
    auto compose = [&](const std::vector<Elem>& f, const std::vector<Elem>& g) {
        std::vector<Elem> r(n);
        for (int i = 0; i < n; i++) r[i] = f[g[i]];
        return r;
    };
    for (const auto& e : elems) {
        if (closed.count(e)) continue;
        gens.push_back(e);
        // re-close
        std::vector<std::vector<Elem>> work(closed.begin(), closed.end());
        for (size_t i = 0; i < work.size(); i++)
            for (const auto& g : gens) {
                auto w = compose(work[i], g);
                if (closed.insert(w).second) work.push_back(std::move(w));
                w = compose(g, work[i]);
                if (closed.insert(w).second) work.push_back(std::move(w));
            }
        if (closed.size() == elems.size()) break;
    }
    return gens;
}

} // namespace

AutGroup automorphism_group(const LoopTable& L, const Involution* inv, AutFlavor flavor,
                            std::optional<Elem> epsilon) {
    const int n = L.order();
    if (n > 256)
        throw LoopError(ErrorCode::OrderCapExceeded, "automorphism search capped at 256",
                        {n});
    const bool use_star = flavor != AutFlavor::Plain;
    if (use_star && !inv)
        throw LoopError(ErrorCode::MissingInvolution,
                        "star flavor needs an involution");
    if (flavor == AutFlavor::StarFixingEpsilon && !epsilon)
        throw LoopError(ErrorCode::MissingInvolution, "missing epsilon to fix");

    std::vector<std::uint8_t> psize;
    std::vector<std::uint32_t> colors =
        element_colors(L, inv, use_star,
                       flavor == AutFlavor::StarFixingEpsilon ? epsilon : std::nullopt,
                       &psize);
    Search s{L,
             n,
             inv,
             use_star,
             std::move(colors),
             std::move(psize),
             {},
             std::vector<int>(n, -1),
             std::vector<int>(n, -1),
             {},
             {}};

    // generating sequence by greedy closure, then most-constrained first
    {
        std::vector<char> in(n, 0);
        std::vector<Elem> cur;
        auto grow = [&](Elem g) {
            cur.push_back(g);
            Subloop S = generate_subloop(L, cur);
            std::fill(in.begin(), in.end(), 0);
            for (Elem m : S.members) in[m] = 1;
        };
        in[0] = 1;
        for (int x = 0; x < n; x++)
            if (!in[x]) grow(static_cast<Elem>(x));
        std::vector<int> class_size(n, 0);
        for (int x = 0; x < n; x++)
            for (int y = 0; y < n; y++)
                if (s.color[x] == s.color[y]) class_size[x]++;
        std::stable_sort(cur.begin(), cur.end(), [&](Elem a, Elem b) {
            return class_size[a] < class_size[b];
        });
        s.gens = std::move(cur);
    }

    std::vector<Elem> trail;
    s.propagate(kIdentity, kIdentity, trail, 0);
    if (flavor == AutFlavor::StarFixingEpsilon) {
        size_t from = s.dom.size();
        if (!s.propagate(*epsilon, *epsilon, trail, from))
            throw std::logic_error("epsilon cannot be fixed");
    }
    s.run(0);

    std::sort(s.found.begin(), s.found.end());
    AutGroup G;
    G.degree = n;
    G.flavor = flavor;
    G.epsilon = epsilon;
    G.order = s.found.size();
    G.generators = greedy_generators(s.found, n);
    if (G.order <= kAutStoreCap) G.elements = std::move(s.found);
    return G;
}

AutGroup aut_preserving(const DoubleResult& D, AutFlavor flavor) {
    const LoopTable& M = D.table;
    const Involution* mstar = D.star ? &*D.star : nullptr;
    AutGroup full = automorphism_group(M, mstar, flavor);
    if (!full.elements_stored())
        throw LoopError(ErrorCode::OrderCapExceeded,
                        "aut_preserving needs stored elements");
    const int nbase = D.base.order();
    std::vector<char> zj(M.order(), 0);
    for (Elem z : structure_sets(D.base).center)
        zj[M.mul(z, D.j)] = 1;

    AutGroup G;
    G.degree = M.order();
    G.flavor = flavor;
    for (auto& perm : full.elements) {
        bool keep = true;
        for (int x = 0; x < nbase && keep; x++)
            if (perm[x] >= nbase) keep = false;
        for (Elem x = 0; x < M.order() && keep; x++)
            if (zj[x] && !zj[perm[x]]) keep = false;
        if (keep) G.elements.push_back(perm);
    }
    G.order = G.elements.size();
    G.generators = greedy_generators(G.elements, M.order());
    return G;
}

PairCorrespondenceReport pair_correspondence_check(const DoubleResult& D) {
    PairCorrespondenceReport R;
    const LoopTable& L = D.base;
    const LoopTable& M = D.table;
    const Involution& s = D.base_star;
    const int n = L.order();
    const Elem g = D.params.gamma;
    const Elem ginv = L.rho(g);
    std::vector<Elem> Z = structure_sets(L).center;

    if (!D.star) {
        R.issues.push_back("double carries no involution");
        return R;
    }
    const Elem eps = *D.params.epsilon;

    AutGroup autL = automorphism_group(L, &s, AutFlavor::Star);
    if (!autL.elements_stored()) {
        R.issues.push_back("Aut(L,*) too large to enumerate");
        return R;
    }

    auto condition = [&](const std::vector<Elem>& sigma, Elem p) {
        return L.mul(sigma[g], ginv) == L.mul(s(p), p);
    };
    auto reconstruct = [&](const std::vector<Elem>& sigma, Elem p) {
        std::vector<Elem> perm(M.order());
        for (Elem a = 0; a < n; a++) {
            perm[a] = sigma[a];
            perm[n + a] = static_cast<Elem>(n + L.mul(p, sigma[a])); // σ(aj) = (pσ(a))j
        }
        return perm;
    };

    for (int star_side = 0; star_side < 2; star_side++) {
        AutFlavor flavor = star_side ? AutFlavor::Star : AutFlavor::Plain;
        AutGroup A = aut_preserving(D, flavor);
        std::set<std::vector<Elem>> aset(A.elements.begin(), A.elements.end());

        // enumerate the parameter side
        std::vector<std::pair<std::vector<Elem>, Elem>> pairs;
        for (const auto& sigma : autL.elements) {
            if (star_side && sigma[eps] != eps) continue;
            for (Elem p : Z)
                if (condition(sigma, p)) pairs.push_back({sigma, p});
        }
        std::uint64_t& lhs = star_side ? R.preserving_star_order : R.preserving_order;
        std::uint64_t& rhs = star_side ? R.pair_star_order : R.pair_order;
        lhs = A.order;
        rhs = pairs.size();
        const char* tag = star_side ? "star" : "plain";

        if (lhs != rhs)
            R.issues.push_back(std::string(tag) + ": side orders differ");
        // forward: restriction lands in the parameter set, injectively
        std::set<std::pair<std::vector<Elem>, Elem>> seen;
        for (const auto& perm : A.elements) {
            std::vector<Elem> sigma(perm.begin(), perm.begin() + n);
            Elem p = M.right_div(perm[D.j], D.j);
            if (p >= n || !condition(sigma, p)) {
                R.issues.push_back(std::string(tag) + ": image violates the condition");
                break;
            }
            bool respects = true;
            for (Elem a = 0; a < n; a++)
                if (sigma[s(a)] != s(sigma[a])) respects = false;
            if (!respects) {
                R.issues.push_back(std::string(tag) +
                                   ": restriction does not respect the involution");
                break;
            }
            if (!seen.insert({sigma, p}).second) {
                R.issues.push_back(std::string(tag) + ": map not injective");
                break;
            }
        }
        // backward: every parameter pair reconstructs into the subgroup
        for (const auto& [sigma, p] : pairs)
            if (!aset.count(reconstruct(sigma, p))) {
                R.issues.push_back(std::string(tag) +
                                   ": reconstructed map is not a preserving automorphism");
                break;
            }
        // group law on the parameter side: (σ1,p1)(σ2,p2) = (σ1σ2, p1·σ1(p2));
        // exhaustive up to order 400, strided sample above
        std::vector<size_t> idx;
        const size_t cnt = A.elements.size();
        if (cnt <= 400)
            for (size_t i = 0; i < cnt; i++) idx.push_back(i);
        else
            for (size_t i = 0; i < cnt; i += cnt / 20 + 1) idx.push_back(i);
        bool law_ok = true;
        for (size_t i : idx) {
            for (size_t k : idx) {
                const auto& f = A.elements[i];
                const auto& h = A.elements[k];
                std::vector<Elem> fh(M.order());
                for (int x = 0; x < M.order(); x++) fh[x] = f[h[x]];
                Elem pf = M.right_div(f[D.j], D.j);
                Elem ph = M.right_div(h[D.j], D.j);
                Elem pfh = M.right_div(fh[D.j], D.j);
                if (pfh != L.mul(pf, static_cast<Elem>(f[ph]))) {
                    law_ok = false;
                    break;
                }
            }
            if (!law_ok) break;
        }
        if (!law_ok) R.issues.push_back(std::string(tag) + ": semidirect law violated");
    }
    return R;
}

bool is_characteristic(const LoopTable& M, const Involution* inv, const Subloop& S,
                       AutFlavor flavor) {
    AutGroup G = automorphism_group(M, inv, flavor);
    const auto& maps = G.elements_stored() ? G.elements : G.generators;
    for (const auto& perm : maps)
        for (Elem x : S.members)
            if (!S.contains(perm[x])) return false;
    return true;
}

BitMatrix bitmatrix_mul(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix r;
    r.k = a.k;
    // row i of r = sum of rows of b selected by row i of a
    for (int i = 0; i < a.k; i++) {
        std::uint8_t acc = 0;
        for (int j = 0; j < a.k; j++)
            if (a.rows[i] & (1 << j)) acc ^= b.rows[j];
        r.rows[i] = acc;
    }
    return r;
}

LinearAction induced_linear_action(const LoopTable& M, const AutGroup& aut) {
    if (!aut.elements_stored())
        throw LoopError(ErrorCode::OrderCapExceeded,
                        "linear action needs stored automorphisms");
    ClassSpace C = [&] {
        try {
            return class_space(M);
        } catch (const LoopError&) {
            throw LoopError(ErrorCode::QuotientNotElementaryAbelian,
                            "M/Z(M) is not an elementary abelian 2-group");
        }
    }();
    LinearAction A;
    A.rank = C.rank;
    std::set<BitMatrix> image;
    std::uint64_t kernel = 0;
    for (const auto& perm : aut.elements) {
        BitMatrix m;
        m.k = C.rank;
        bool identity_action = true;
        for (int i = 0; i < C.rank; i++) {
            // column i: image of the i-th basis class, stored transposed
            // as rows for the row-vector convention v -> v·M… keep rows:
            // row i = coords of σ(basis_i)
            m.rows[i] = C.coords[perm[C.basis[i]]];
            if (m.rows[i] != (1 << i)) identity_action = false;
        }
        if (identity_action) kernel++;
        image.insert(m);
        A.matrices.push_back(m);
    }
    A.kernel_order = kernel;
    A.image_order = image.size();
    A.faithful = kernel == 1;
    return A;
}

} // namespace cdloop
