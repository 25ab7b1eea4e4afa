#pragma once

#include "cdloop/involution.hpp"
#include "cdloop/loop.hpp"

namespace cdloop {

/// Cyclic group Z_m, element k = g^k, identity at 0.
LoopTable cyclic_group(int m);

/// Elementary abelian group of order 2^k (xor table), k <= 8.
LoopTable elementary_abelian(int k);

/// Direct product with identity-first indexing: (a,b) -> a*|B| + b.
LoopTable direct_product(const LoopTable& A, const LoopTable& B);

/// Symmetric group S3 as a Cayley table.
LoopTable sym3();

/// Dihedral group of order 8.
LoopTable dihedral4();

/// The order-6 nonassociative loop {±1, ±s, ±s²} with s·s² = 1 and
/// s²·s = -1: a central extension of Z3 by {±1}. Its swap involution
/// s <-> s² is normal but not central.
LoopTable order6_nonassociative();
Involution order6_involution(const LoopTable& L6);

/// Commutative order-8 loop {±1, ±a1, ±a2, ±a3} with ai² = -1 and
/// ai·aj = ak; two-dimensional over its center but not alternative.
LoopTable commutative_dim2();

/// A group of order 32 with center Z2 x Z2 and elementary abelian
/// quotient of rank 3 (bilinear-cocycle central extension). Its basis
/// associators are trivial, so it passes the octonion predicate with
/// alpha = 1.
LoopTable rank3_central_group32();

} // namespace cdloop
