#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdloop/involution.hpp"
#include "cdloop/loop.hpp"

namespace cdloop {

/// Parameters of one doubling step. gamma must be central; when epsilon
/// is present the involution extends to the double by (aj)* = (eps·a)j,
/// which requires eps central, eps² = 1 and (eps·gamma)* = eps·gamma.
/// Without epsilon the double is built as a plain loop (no involution),
/// which is the only way to reach non-symmetric gamma.
struct DoublingParams {
    Elem gamma = kIdentity;
    std::optional<Elem> epsilon;
};

DoublingParams validate_params(const LoopTable& L, const Involution& star, Elem gamma,
                               std::optional<Elem> epsilon);

/// The double M = L ∪ Lj with the fixed layout: base element a keeps its
/// index, a·j sits at n + a, and j = n. Multiplication:
///   a·(bj) = (ba)j,  (aj)·b = (ab*)j,  (aj)·(bj) = gamma·(b*a).
struct DoubleResult {
    LoopTable base;
    Involution base_star;
    LoopTable table;
    std::optional<Involution> star; // extended involution, present iff epsilon
    Elem j = 0;                     // == base.order()
    DoublingParams params;

    Elem embed(Elem a) const { return a; }
    Elem times_j(Elem a) const { return static_cast<Elem>(base.order() + a); }
};

DoubleResult double_loop(const LoopTable& L, const Involution& star,
                         const DoublingParams& params, std::string_view gen_name = "j");

/// Left-to-right iterated doubling; step i revalidates (gamma_i, eps_i)
/// inside the current loop. Element ids are stable under the embedding,
/// so parameters may be given as ids of any earlier stage.
std::vector<DoubleResult> double_iterate(const LoopTable& L, const Involution& star,
                                         std::span<const Elem> gammas,
                                         std::span<const std::optional<Elem>> epsilons);

/// Q_n chain: Q_0 = {±1} with the identity involution, every step
/// gamma = epsilon = -1. Order of Q_n is 2^{n+1}; n <= 8.
std::vector<DoubleResult> build_qn(int n);

/// Q_n as a plain (loop, involution) pair; accepts n = 0.
std::pair<LoopTable, Involution> qn_pair(int n);

/// Chein double M(G,2) = D(G, x -> x^{-1}, 1, 1) of a group.
DoubleResult build_chein(const LoopTable& G);

/// Iterated doubles over the cyclic center Z_m (m even), starting from
/// Z_m with the identity involution; step i uses gamma = g^{e_i} and
/// epsilon = g^{m/2} (the order-2 element playing the role of -1).
std::vector<DoubleResult> build_general(int m, std::span<const int> gamma_exponents);

struct TripleTableMismatch {
    int row; // 1..8
    Elem a, b, c;
};

struct TripleTableReport {
    std::uint64_t checks = 0;
    std::vector<TripleTableMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// For all a,b,c in the base loop, evaluates the eight (xy)z / x(yz)
/// rows with x,y,z drawn from {base, base·j}, both directly in M and
/// via the closed-form products in L, and reports any disagreement.
TripleTableReport verify_triple_table(const DoubleResult& D);

struct FormulaMismatch {
    std::string which;
    Elem a, b, c;
};

struct DoubleFormulaReport {
    std::uint64_t checks = 0;
    bool associator_block_run = false; // requires the base to be central-by-abelian
    std::vector<FormulaMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Checks the commutator identities of the double for all pairs, the
/// eight associator formulas for all triples (when the base loop is
/// central-by-abelian), and containment [M,M], [M,M,M] ⊆ L.
DoubleFormulaReport verify_double_formulas(const DoubleResult& D);

} // namespace cdloop
