#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cdloop/doubling.hpp"
#include "cdloop/involution.hpp"
#include "cdloop/loop.hpp"

namespace cdloop {

/// Terms of the quasigroup-with-involution language. Grammar:
/// single-letter or [bracketed] variables, `1`, the reserved letter `j`,
/// infix `.` `/` `\` (one binary operation per parenthesis level),
/// postfix `*` binding tightest, explicit parentheses everywhere else.
struct Term {
    enum class Kind { Var, One, J, Mul, RDiv, LDiv, Star };
    Kind kind;
    std::string var;                      // Kind::Var
    std::shared_ptr<const Term> a, b;     // children; Star uses a only
};

using TermPtr = std::shared_ptr<const Term>;

TermPtr make_var(std::string name);
TermPtr make_one();
TermPtr make_j();
TermPtr make_mul(TermPtr a, TermPtr b);
TermPtr make_rdiv(TermPtr a, TermPtr b); // a / b
TermPtr make_ldiv(TermPtr a, TermPtr b); // a \ b
TermPtr make_star(TermPtr t);

TermPtr parse_term(std::string_view text);

struct Identity {
    TermPtr lhs, rhs;
    std::vector<std::string> variables; // order of first occurrence
};

Identity parse_identity(std::string_view text);

/// Canonical fully-parenthesized form; parse(print(t)) == t.
std::string print_term(const TermPtr& t);
std::string print_identity(const Identity& id);

bool term_equal(const TermPtr& a, const TermPtr& b);

/// Push stars down to the letters: (xy)* -> y*x*, (x/y)* -> y*\x*,
/// (y\x)* -> x*/y*, x** -> x.
TermPtr normalize_stars(const TermPtr& t);

/// Degrees of a term: dj and deps live in Z2, dgamma in Z. Variables in
/// `j_marks` are treated as elements of Lj.
struct DegreeVector {
    int dj = 0;
    int dgamma = 0;
    int deps = 0;
    bool operator==(const DegreeVector&) const = default;
};

DegreeVector degrees(const TermPtr& t, const std::set<std::string>& j_marks = {});

/// Both sides agree in gamma- and epsilon-degree under the marking.
bool is_homogeneous(const Identity& id, const std::set<std::string>& marking = {});

Elem eval_term(const LoopTable& L, const Involution* inv,
               const std::map<std::string, Elem>& assignment, const TermPtr& t);

struct IdentityCheck {
    bool holds = true;
    std::map<std::string, Elem> witness; // first failure, lexicographic
};

IdentityCheck check_identity(const LoopTable& L, const Involution* inv,
                             const Identity& id);

struct VarietySpec {
    std::string name;
    std::vector<Identity> identities;
};

VarietySpec make_variety(std::string name, const std::vector<std::string>& lines);

bool variety_membership(const LoopTable& L, const Involution& inv, const VarietySpec& V);

/// Membership of the double D(L,*,1,1) in V.
bool derivative_membership(const LoopTable& L, const Involution& inv,
                           const VarietySpec& V);

/// One marking's component identity over the base loop; `satisfiable`
/// is false when the two sides land in different halves of the double
/// (the component can never hold).
struct ExpandedIdentity {
    bool satisfiable = true;
    std::optional<Identity> id;
};

/// Symbolic expansion of a j-free identity over the doubled carrier
/// with gamma = epsilon = 1: one component per marking of the
/// variables, deduplicated by printed form, stars pushed to letters.
std::vector<ExpandedIdentity> expand_derivative_identities(const Identity& id);

struct ScalingCheck {
    bool holds = false;
    DegreeVector deg;
    Elem value_11 = 0, value_ge = 0, expected = 0;
};

/// Evaluates t in D(L,*,1,1) and in D(L,*,gamma,epsilon) under one
/// assignment into L, and checks
///   pi_{gamma,eps}(t) = pi_{1,1}(t) · gamma^{deg_gamma} · eps^{deg_eps}.
ScalingCheck homogeneity_scaling_check(const LoopTable& L, const Involution& inv,
                                       Elem gamma, Elem epsilon, const TermPtr& t,
                                       const std::map<std::string, Elem>& assignment);

/// Evaluate a term inside a built double: variables map into the base
/// loop, `j` is the doubling generator.
Elem eval_in_double(const DoubleResult& D, const std::map<std::string, Elem>& assignment,
                    const TermPtr& t);

namespace varieties {
VarietySpec commutative();
VarietySpec associative();
VarietySpec moufang();
VarietySpec left_alternative();
VarietySpec iden();     // x* = x
VarietySpec exp2();     // every square central
VarietySpec normal();   // every x*x central
VarietySpec inverse_property();
VarietySpec anti_automorphic_inverse();
} // namespace varieties

} // namespace cdloop
