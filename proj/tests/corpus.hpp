#pragma once

// Shared constructions for the test suite.

#include <utility>
#include <vector>

#include "cdloop/catalog.hpp"
#include "cdloop/doubling.hpp"
#include "cdloop/involution.hpp"
#include "cdloop/loop.hpp"

namespace cdloop::testing {

struct NamedLoop {
    std::string name;
    LoopTable loop;
    Involution inv;
};

/// Loops carrying certified involutions, spanning groups, Q_n stages and
/// the nonassociative examples.
inline std::vector<NamedLoop> involution_corpus() {
    std::vector<NamedLoop> out;
    auto add = [&](std::string n, LoopTable L, Involution i) {
        out.push_back({std::move(n), std::move(L), std::move(i)});
    };
    LoopTable z2 = cyclic_group(2), z3 = cyclic_group(3), z4 = cyclic_group(4),
              z8 = cyclic_group(8), v4 = elementary_abelian(2), v8 = elementary_abelian(3);
    add("Z2-id", z2, identity_involution(z2));
    add("Z3-id", z3, identity_involution(z3));
    add("Z4-id", z4, identity_involution(z4));
    add("Z4-inv", z4, inverse_involution(z4));
    add("Z8-inv", z8, inverse_involution(z8));
    add("V4-id", v4, identity_involution(v4));
    add("V8-id", v8, identity_involution(v8));
    LoopTable s3 = sym3(), d4 = dihedral4();
    add("S3-inv", s3, inverse_involution(s3));
    add("D4-inv", d4, inverse_involution(d4));
    auto [q2, q2s] = qn_pair(2);
    add("Q2-inv", q2, q2s);
    auto [q3, q3s] = qn_pair(3);
    add("Q3-star", q3, q3s);
    LoopTable l6 = order6_nonassociative();
    add("L6-swap", l6, order6_involution(l6));
    LoopTable c8 = commutative_dim2();
    add("C8-id", c8, identity_involution(c8));
    LoopTable g32 = rank3_central_group32();
    add("G32-inv", g32, inverse_involution(g32));
    return out;
}

/// Valid (loop, involution, gamma, epsilon) doubling instances.
struct DoublingInstance {
    std::string name;
    LoopTable loop;
    Involution inv;
    Elem gamma;
    Elem epsilon;
};

inline std::vector<DoublingInstance> doubling_corpus() {
    std::vector<DoublingInstance> out;
    auto add = [&](std::string n, const LoopTable& L, const Involution& i, Elem g, Elem e) {
        validate_params(L, i, g, e);
        out.push_back({std::move(n), L, i, g, e});
    };
    LoopTable z2 = cyclic_group(2), z4 = cyclic_group(4), z8 = cyclic_group(8);
    add("Z2-id-1-1", z2, identity_involution(z2), 0, 0);
    add("Z2-id--1--1", z2, identity_involution(z2), 1, 1);
    add("Z4-id-g-1", z4, identity_involution(z4), 1, 0);
    add("Z4-inv--1--1", z4, inverse_involution(z4), 2, 2);
    add("Z4-inv-1-1", z4, inverse_involution(z4), 0, 0);
    add("Z4-inv-1--1", z4, inverse_involution(z4), 0, 2);
    add("Z8-inv-1-1", z8, inverse_involution(z8), 0, 0);
    add("Z8-inv-1--1", z8, inverse_involution(z8), 0, 4);
    auto [q2, q2s] = qn_pair(2);
    add("Q2--1--1", q2, q2s, 1, 1);
    add("Q2-1-1", q2, q2s, 0, 0);
    add("Q2-1--1", q2, q2s, 0, 1);
    auto [q3, q3s] = qn_pair(3);
    add("Q3--1--1", q3, q3s, 1, 1);
    add("Q3-1-1", q3, q3s, 0, 0);
    LoopTable l6 = order6_nonassociative();
    Involution l6s = order6_involution(l6);
    add("L6-1-1", l6, l6s, 0, 0);
    add("L6--1--1", l6, l6s, 1, 1);
    add("L6--1-1", l6, l6s, 1, 0);
    LoopTable c8 = commutative_dim2();
    add("C8-id--1--1", c8, identity_involution(c8), 1, 1);
    LoopTable s3 = sym3();
    add("S3-inv-1-1", s3, inverse_involution(s3), 0, 0);
    return out;
}

} // namespace cdloop::testing
