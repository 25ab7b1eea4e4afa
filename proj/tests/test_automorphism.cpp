#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "corpus.hpp"

#include "cdloop/analysis.hpp"
#include "cdloop/automorphism.hpp"

using namespace cdloop;

namespace {

// independent oracle: enumerate all permutations fixing the identity
// (for tiny loops) and keep the table isomorphisms
std::vector<std::vector<Elem>> brute_aut_tiny(const LoopTable& L) {
    const int n = L.order();
    std::vector<Elem> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<Elem>> out;
    do {
        bool ok = true;
        for (Elem a = 0; a < n && ok; a++)
            for (Elem b = 0; b < n; b++)
                if (perm[L.mul(a, b)] != L.mul(perm[a], perm[b])) {
                    ok = false;
                    break;
                }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return out;
}

// independent oracle for medium loops: images of a generating triple,
// extended by table closure, no invariant pruning at all
std::uint64_t brute_aut_generated(const LoopTable& L, const std::vector<Elem>& gens) {
    const int n = L.order();
    std::vector<int> phi(n, -1), psi(n, -1);
    std::vector<Elem> dom;
    std::uint64_t count = 0;

    auto assign = [&](auto&& self, Elem x, Elem y, std::vector<Elem>& trail) -> bool {
        if (phi[x] != -1) return phi[x] == y;
        if (psi[y] != -1) return false;
        phi[x] = y;
        psi[y] = x;
        trail.push_back(x);
        dom.push_back(x);
        (void)self;
        return true;
    };
    auto close = [&](Elem g, Elem b, std::vector<Elem>& trail, size_t from) -> bool {
        if (!assign(assign, g, b, trail)) return false;
        for (size_t i = from; i < dom.size(); i++)
            for (size_t k = 0; k < dom.size(); k++) {
                Elem a = dom[i], c = dom[k];
                if (!assign(assign, L.mul(a, c),
                            L.mul(static_cast<Elem>(phi[a]), static_cast<Elem>(phi[c])),
                            trail))
                    return false;
                if (!assign(assign, L.mul(c, a),
                            L.mul(static_cast<Elem>(phi[c]), static_cast<Elem>(phi[a])),
                            trail))
                    return false;
            }
        return true;
    };
    auto rec = [&](auto&& self, size_t d) -> void {
        if (d == gens.size()) {
            for (Elem a = 0; a < n; a++)
                for (Elem b = 0; b < n; b++)
                    if (phi[L.mul(a, b)] !=
                        L.mul(static_cast<Elem>(phi[a]), static_cast<Elem>(phi[b])))
                        return;
            count++;
            return;
        }
        for (Elem b = 0; b < n; b++) {
            std::vector<Elem> trail;
            size_t dsz = dom.size();
            if (close(gens[d], b, trail, dsz)) self(self, d + 1);
            for (Elem x : trail) {
                psi[phi[x]] = -1;
                phi[x] = -1;
            }
            dom.resize(dsz);
        }
    };
    std::vector<Elem> trail;
    close(0, 0, trail, 0);
    rec(rec, 0);
    return count;
}

} // namespace

TEST_CASE("search agrees with exhaustive permutation enumeration on tiny loops") {
    for (const LoopTable& L : {cyclic_group(4), cyclic_group(5), elementary_abelian(2),
                               sym3(), order6_nonassociative()}) {
        auto brute = brute_aut_tiny(L);
        AutGroup G = automorphism_group(L, nullptr, AutFlavor::Plain);
        CHECK(G.order == brute.size());
        CHECK(G.elements == brute); // both sorted lexicographically
    }
    CHECK(automorphism_group(elementary_abelian(2), nullptr, AutFlavor::Plain).order == 6);
    CHECK(automorphism_group(cyclic_group(4), nullptr, AutFlavor::Plain).order == 2);
}

TEST_CASE("search agrees with the unpruned generator-image oracle on Q3") {
    auto [q3, q3s] = qn_pair(3);
    std::uint64_t brute = brute_aut_generated(q3, {1, 2, 4, 8});
    AutGroup G = automorphism_group(q3, &q3s, AutFlavor::Plain);
    CHECK(G.order == brute);
    CHECK(G.order == 1344);
}

TEST_CASE("automorphism orders of the doubling chain") {
    auto [q2, q2s] = qn_pair(2);
    CHECK(automorphism_group(q2, &q2s, AutFlavor::Plain).order == 24);
    for (int n = 3; n <= 6; n++) {
        auto [qn, qns] = qn_pair(n);
        AutGroup G = automorphism_group(qn, &qns, AutFlavor::Plain);
        CHECK(G.order == (1344ull << (n - 3)));
    }
}

TEST_CASE("star-respecting groups coincide with the plain ones on the chain") {
    for (int n = 2; n <= 4; n++) {
        auto [qn, qns] = qn_pair(n);
        AutGroup plain = automorphism_group(qn, &qns, AutFlavor::Plain);
        AutGroup star = automorphism_group(qn, &qns, AutFlavor::Star);
        CHECK(plain.order == star.order);
    }
}

TEST_CASE("fixing an element cuts the group to its stabilizer") {
    LoopTable v4 = elementary_abelian(2);
    Involution id = identity_involution(v4);
    AutGroup all = automorphism_group(v4, &id, AutFlavor::Star);
    CHECK(all.order == 6);
    AutGroup fix = automorphism_group(v4, &id, AutFlavor::StarFixingEpsilon, Elem(1));
    CHECK(fix.order == 2);
    for (const auto& p : fix.elements) CHECK(p[1] == 1);
}

TEST_CASE("group closure of the returned elements") {
    auto [q3, q3s] = qn_pair(3);
    AutGroup G = automorphism_group(q3, &q3s, AutFlavor::Plain);
    REQUIRE(G.elements_stored());
    std::set<std::vector<Elem>> all(G.elements.begin(), G.elements.end());
    // products of sampled pairs stay inside; inverses exist
    const size_t stride = 97;
    for (size_t i = 0; i < G.elements.size(); i += stride)
        for (size_t k = 0; k < G.elements.size(); k += stride) {
            std::vector<Elem> fg(G.degree);
            for (int x = 0; x < G.degree; x++) fg[x] = G.elements[i][G.elements[k][x]];
            CHECK(all.count(fg));
        }
    for (size_t i = 0; i < G.elements.size(); i += stride) {
        std::vector<Elem> inv(G.degree);
        for (int x = 0; x < G.degree; x++) inv[G.elements[i][x]] = static_cast<Elem>(x);
        CHECK(all.count(inv));
    }
    // generators generate
    std::set<std::vector<Elem>> closed;
    std::vector<Elem> idp(G.degree);
    std::iota(idp.begin(), idp.end(), 0);
    closed.insert(idp);
    std::vector<std::vector<Elem>> work = {idp};
    for (size_t i = 0; i < work.size(); i++)
        for (const auto& g : G.generators) {
            std::vector<Elem> w(G.degree);
            for (int x = 0; x < G.degree; x++) w[x] = work[i][g[x]];
            if (closed.insert(w).second) work.push_back(w);
        }
    CHECK(closed.size() == G.order);
}

TEST_CASE("preserving subgroup and the parameter correspondence") {
    auto chain = build_qn(4);
    const DoubleResult& q4 = chain[3];
    AutGroup full = automorphism_group(q4.table, &*q4.star, AutFlavor::Plain);
    AutGroup pres = aut_preserving(q4, AutFlavor::Plain);
    CHECK(pres.order == full.order); // Q3 and Zj4 are stable under everything

    const DoubleResult& q3 = chain[2];
    AutGroup pres3 = aut_preserving(q3, AutFlavor::Plain);
    CHECK(pres3.order == 48); // |Aut(Q2,*)| · |{p : sigma(gamma)/gamma = p*p}| = 24·2
    CHECK(pres3.order < automorphism_group(q3.table, &*q3.star, AutFlavor::Plain).order);

    PairCorrespondenceReport R4 = pair_correspondence_check(q4);
    CHECK_MESSAGE(R4.ok(), [&] {
        std::string s;
        for (auto& i : R4.issues) s += i + "; ";
        return s;
    }());
    CHECK(R4.preserving_order == R4.pair_order);
    CHECK(R4.preserving_star_order == R4.pair_star_order);

    PairCorrespondenceReport R3 = pair_correspondence_check(q3);
    CHECK(R3.ok());
    CHECK(R3.preserving_order == R3.pair_order);

    // tiny case D(Z2, id, 1, 1)
    LoopTable z2 = cyclic_group(2);
    Involution id = identity_involution(z2);
    DoubleResult tiny = double_loop(z2, id, validate_params(z2, id, 0, Elem(0)));
    PairCorrespondenceReport RT = pair_correspondence_check(tiny);
    CHECK(RT.ok());
    CHECK(RT.preserving_order == RT.pair_order);
    CHECK(RT.preserving_order == 2);
}

TEST_CASE("characteristic subloops") {
    auto [q4, q4s] = qn_pair(4);
    auto [q3, q3s] = qn_pair(3);
    std::vector<Elem> lo;
    for (Elem x = 0; x < 16; x++) lo.push_back(x);
    CHECK(is_characteristic(q4, &q4s, subloop_from_members(q4, lo), AutFlavor::Plain));
    lo.resize(8);
    CHECK_FALSE(is_characteristic(q3, &q3s, subloop_from_members(q3, lo), AutFlavor::Plain));
    // the center is characteristic
    CHECK(is_characteristic(q3, &q3s, subloop_from_members(q3, {0, 1}), AutFlavor::Plain));
    LoopTable l6 = order6_nonassociative();
    Involution l6s = order6_involution(l6);
    CHECK(is_characteristic(l6, &l6s, subloop_from_members(l6, {0, 1}), AutFlavor::Plain));
}

TEST_CASE("induced linear action on the class space") {
    auto [q3, q3s] = qn_pair(3);
    AutGroup G = automorphism_group(q3, &q3s, AutFlavor::Plain);
    LinearAction A = induced_linear_action(q3, G);
    CHECK(A.rank == 3);
    CHECK(A.image_order == 168); // full GL3(F2)
    CHECK(A.kernel_order == 8);  // the central sign maps
    CHECK_FALSE(A.faithful);

    // homomorphism property on sampled pairs
    const size_t stride = 131;
    for (size_t i = 0; i < G.elements.size(); i += stride)
        for (size_t k = 0; k < G.elements.size(); k += stride) {
            std::vector<Elem> fg(G.degree);
            for (int x = 0; x < G.degree; x++) fg[x] = G.elements[i][G.elements[k][x]];
            auto it = std::lower_bound(G.elements.begin(), G.elements.end(), fg);
            REQUIRE(it != G.elements.end());
            size_t pos = static_cast<size_t>(it - G.elements.begin());
            // composition maps to the product of matrices: row convention
            // makes M(f∘g) = M(g)·M(f)
            CHECK(A.matrices[pos] == bitmatrix_mul(A.matrices[k], A.matrices[i]));
        }

    // the identity automorphism sits at the identity matrix
    std::vector<Elem> idp(G.degree);
    std::iota(idp.begin(), idp.end(), 0);
    auto it = std::lower_bound(G.elements.begin(), G.elements.end(), idp);
    size_t pos = static_cast<size_t>(it - G.elements.begin());
    for (int i = 0; i < 3; i++) CHECK(A.matrices[pos].rows[i] == (1 << i));

    // Q4: the kernel contains the sign flip of the top generator
    auto [q4, q4s] = qn_pair(4);
    AutGroup G4 = automorphism_group(q4, &q4s, AutFlavor::Plain);
    LinearAction A4 = induced_linear_action(q4, G4);
    CHECK_FALSE(A4.faithful);
    std::vector<Elem> flip(32);
    std::iota(flip.begin(), flip.end(), 0);
    for (Elem a = 0; a < 16; a++) {
        flip[16 + a] = static_cast<Elem>(16 + q4.mul(1, a)); // a·j4 -> (-a)·j4
    }
    CHECK(std::binary_search(G4.elements.begin(), G4.elements.end(), flip));

    LoopTable l6 = order6_nonassociative();
    Involution l6s = order6_involution(l6);
    AutGroup GL6 = automorphism_group(l6, &l6s, AutFlavor::Plain);
    CHECK_THROWS_AS(induced_linear_action(l6, GL6), LoopError);
}

TEST_CASE("every automorphism of a two-step double stabilizes j' modulo the center") {
    for (int n : {4, 5}) {
        auto [qn, qns] = qn_pair(n);
        AutGroup G = automorphism_group(qn, &qns, AutFlavor::Plain);
        const Elem jtop = static_cast<Elem>(qn.order() / 2);
        for (const auto& p : G.elements)
            CHECK((p[jtop] == jtop || p[jtop] == qn.mul(1, jtop)));
    }
}

TEST_CASE("flag decomposition of Aut(Q5)") {
    auto [q5, q5s] = qn_pair(5);
    AutGroup G = automorphism_group(q5, &q5s, AutFlavor::Plain);
    REQUIRE(G.elements_stored());
    auto [q3, q3s] = qn_pair(3);
    const Elem j4 = 16, j5 = 32;
    for (const auto& p : G.elements) {
        // the flag Q3 ⊂ Q4 ⊂ Q5 is preserved
        for (Elem x = 0; x < 16; x++) CHECK(p[x] < 16);
        for (Elem x = 16; x < 32; x++) CHECK((p[x] >= 16 && p[x] < 32));
        // the restriction respects the involution on Q3
        for (Elem x = 0; x < 16; x++) CHECK(p[q3s(x)] == q3s(p[x]));
        // scalars: p_i = sigma(j_i)/j_i central of square 1; epsilon fixed
        Elem p1 = q5.right_div(p[j4], j4);
        Elem p2 = q5.right_div(p[j5], j5);
        CHECK((p1 == 0 || p1 == 1));
        CHECK((p2 == 0 || p2 == 1));
        CHECK(p[1] == 1);
        // reconstruction from (sigma|Q3, p1, p2) returns the map
        for (Elem a = 0; a < 16; a++)
            CHECK(p[16 + a] == 16 + q5.mul(p1, p[a]));
        for (Elem x = 0; x < 32; x++)
            CHECK(p[32 + x] == 32 + q5.mul(p2, p[x]));
    }
}

TEST_CASE("order cap") {
    std::vector<std::vector<int>> big(300, std::vector<int>(300));
    for (int i = 0; i < 300; i++)
        for (int j = 0; j < 300; j++) big[i][j] = (i + j) % 300;
    LoopTable L = LoopTable::validate(big);
    CHECK_THROWS_AS(automorphism_group(L, nullptr, AutFlavor::Plain), LoopError);
}

TEST_CASE("the star flavor restricts to the centralizer of the involution") {
    // V4 with a transposition involution: plain group S3, star flavor
    // keeps only the maps commuting with the swap
    LoopTable v4 = elementary_abelian(2);
    Involution swap = Involution::validate(v4, {0, 2, 1, 3});
    AutGroup plain = automorphism_group(v4, &swap, AutFlavor::Plain);
    AutGroup star = automorphism_group(v4, &swap, AutFlavor::Star);
    CHECK(plain.order == 6);
    CHECK(star.order == 2);
    for (const auto& p : star.elements)
        for (Elem x = 0; x < 4; x++) CHECK(p[swap(x)] == swap(p[x]));
}

TEST_CASE("above the storage cap only order and generators are kept") {
    auto [q6, q6s] = qn_pair(6);
    AutGroup G = automorphism_group(q6, &q6s, AutFlavor::Plain);
    CHECK(G.order == 10752);
    CHECK_FALSE(G.elements_stored());
    CHECK(G.elements.empty());
    CHECK_FALSE(G.generators.empty());
}

TEST_CASE("search agrees with the unpruned generator-image oracle on Q4") {
    auto [q4, q4s] = qn_pair(4);
    std::uint64_t brute = brute_aut_generated(q4, {1, 2, 4, 8, 16});
    AutGroup G = automorphism_group(q4, &q4s, AutFlavor::Plain);
    CHECK(G.order == brute);
    CHECK(G.order == 2688);
}
