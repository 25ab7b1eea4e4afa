#include "cdloop/terms.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace cdloop {

TermPtr make_var(std::string name) {
    return std::make_shared<Term>(Term{Term::Kind::Var, std::move(name), nullptr, nullptr});
}
TermPtr make_one() { return std::make_shared<Term>(Term{Term::Kind::One, "", nullptr, nullptr}); }
TermPtr make_j() { return std::make_shared<Term>(Term{Term::Kind::J, "", nullptr, nullptr}); }
TermPtr make_mul(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(Term{Term::Kind::Mul, "", std::move(a), std::move(b)});
}
TermPtr make_rdiv(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(Term{Term::Kind::RDiv, "", std::move(a), std::move(b)});
}
TermPtr make_ldiv(TermPtr a, TermPtr b) {
    return std::make_shared<Term>(Term{Term::Kind::LDiv, "", std::move(a), std::move(b)});
}
TermPtr make_star(TermPtr t) {
    return std::make_shared<Term>(Term{Term::Kind::Star, "", std::move(t), nullptr});
}

namespace {

struct Parser {
    std::string_view s;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw LoopError(ErrorCode::SyntaxError, msg + " at position " + std::to_string(pos),
                        {static_cast<int>(pos)});
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            pos++;
            return true;
        }
        return false;
    }

    TermPtr primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            pos++;
            TermPtr t = expr();
            if (!eat(')')) fail("expected ')'");
            return t;
        }
        if (c == '[') {
            pos++;
            size_t start = pos;
            while (pos < s.size() && s[pos] != ']') pos++;
            if (pos >= s.size()) fail("unterminated '['");
            std::string name(s.substr(start, pos - start));
            pos++;
            if (name.empty()) fail("empty variable name");
            return make_var(std::move(name));
        }
        if (c == '1') {
            pos++;
            return make_one();
        }
        if (c == 'j') {
            pos++;
            return make_j();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            pos++;
            return make_var(std::string(1, c));
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    TermPtr unary() {
        TermPtr t = primary();
        while (true) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                pos++;
                t = make_star(std::move(t));
            } else {
                break;
            }
        }
        return t;
    }

    TermPtr expr() {
        TermPtr left = unary();
        skip_ws();
        if (pos < s.size() && (s[pos] == '.' || s[pos] == '/' || s[pos] == '\\')) {
            char op = s[pos];
            pos++;
            TermPtr right = unary();
            skip_ws();
            if (pos < s.size() && (s[pos] == '.' || s[pos] == '/' || s[pos] == '\\'))
                fail("chained operators need explicit parentheses");
            switch (op) {
            case '.': return make_mul(std::move(left), std::move(right));
            case '/': return make_rdiv(std::move(left), std::move(right));
            default: return make_ldiv(std::move(left), std::move(right));
            }
        }
        return left;
    }
};

void collect_vars(const TermPtr& t, std::vector<std::string>& out) {
    switch (t->kind) {
    case Term::Kind::Var:
        if (std::find(out.begin(), out.end(), t->var) == out.end()) out.push_back(t->var);
        break;
    case Term::Kind::Mul:
    case Term::Kind::RDiv:
    case Term::Kind::LDiv:
        collect_vars(t->a, out);
        collect_vars(t->b, out);
        break;
    case Term::Kind::Star: collect_vars(t->a, out); break;
    default: break;
    }
}

bool has_j(const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::J: return true;
    case Term::Kind::Mul:
    case Term::Kind::RDiv:
    case Term::Kind::LDiv: return has_j(t->a) || has_j(t->b);
    case Term::Kind::Star: return has_j(t->a);
    default: return false;
    }
}

} // namespace

TermPtr parse_term(std::string_view text) {
    Parser p{text};
    TermPtr t = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return t;
}

Identity parse_identity(std::string_view text) {
    size_t eq = text.find('=');
    if (eq == std::string_view::npos)
        throw LoopError(ErrorCode::SyntaxError, "identity needs '='", {0});
    if (text.find('=', eq + 1) != std::string_view::npos)
        throw LoopError(ErrorCode::SyntaxError, "identity has several '='",
                        {static_cast<int>(eq)});
    Identity id;
    id.lhs = parse_term(text.substr(0, eq));
    id.rhs = parse_term(text.substr(eq + 1));
    collect_vars(id.lhs, id.variables);
    collect_vars(id.rhs, id.variables);
    return id;
}

std::string print_term(const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::Var: {
        // bare form only for names the grammar reads back as variables
        const std::string& v = t->var;
        bool bare = v.size() == 1 && std::isalpha(static_cast<unsigned char>(v[0])) &&
                    v[0] != 'j';
        return bare ? v : "[" + v + "]";
    }
    case Term::Kind::One: return "1";
    case Term::Kind::J: return "j";
    case Term::Kind::Mul: return "(" + print_term(t->a) + "." + print_term(t->b) + ")";
    case Term::Kind::RDiv: return "(" + print_term(t->a) + "/" + print_term(t->b) + ")";
    case Term::Kind::LDiv: return "(" + print_term(t->a) + "\\" + print_term(t->b) + ")";
    case Term::Kind::Star: return print_term(t->a) + "*";
    }
    return "?";
}

std::string print_identity(const Identity& id) {
    return print_term(id.lhs) + " = " + print_term(id.rhs);
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Term::Kind::Var: return a->var == b->var;
    case Term::Kind::One:
    case Term::Kind::J: return true;
    case Term::Kind::Star: return term_equal(a->a, b->a);
    default: return term_equal(a->a, b->a) && term_equal(a->b, b->b);
    }
}

TermPtr normalize_stars(const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::One:
    case Term::Kind::J: return t;
    case Term::Kind::Mul: return make_mul(normalize_stars(t->a), normalize_stars(t->b));
    case Term::Kind::RDiv: return make_rdiv(normalize_stars(t->a), normalize_stars(t->b));
    case Term::Kind::LDiv: return make_ldiv(normalize_stars(t->a), normalize_stars(t->b));
    case Term::Kind::Star: {
        const TermPtr& u = t->a;
        switch (u->kind) {
        case Term::Kind::Star: return normalize_stars(u->a);
        case Term::Kind::Mul: // (xy)* = y*x*
            return make_mul(normalize_stars(make_star(u->b)),
                            normalize_stars(make_star(u->a)));
        case Term::Kind::RDiv: // (x/y)* = y* \ x*
            return make_ldiv(normalize_stars(make_star(u->b)),
                             normalize_stars(make_star(u->a)));
        case Term::Kind::LDiv: // (y\x)* = x* / y*
            return make_rdiv(normalize_stars(make_star(u->b)),
                             normalize_stars(make_star(u->a)));
        case Term::Kind::One: return make_one();
        default: return make_star(u); // letter or j: atomic
        }
    }
    }
    return t;
}

DegreeVector degrees(const TermPtr& t, const std::set<std::string>& j_marks) {
    switch (t->kind) {
    case Term::Kind::Var:
        return j_marks.count(t->var) ? DegreeVector{1, 0, 0} : DegreeVector{0, 0, 0};
    case Term::Kind::One: return {0, 0, 0};
    case Term::Kind::J: return {1, 0, 0};
    case Term::Kind::Mul: {
        DegreeVector p = degrees(t->a, j_marks), q = degrees(t->b, j_marks);
        return {(p.dj + q.dj) & 1, p.dgamma + q.dgamma + p.dj * q.dj,
                (p.deps + q.deps) & 1};
    }
    case Term::Kind::RDiv: { // numerator first: t = a / b
        DegreeVector p = degrees(t->a, j_marks), q = degrees(t->b, j_marks);
        return {(p.dj - q.dj) & 1, p.dgamma - q.dgamma - q.dj * (1 - p.dj),
                (p.deps - q.deps) & 1};
    }
    case Term::Kind::LDiv: { // t = a \ b, numerator is b
        DegreeVector q = degrees(t->a, j_marks), p = degrees(t->b, j_marks);
        return {(p.dj - q.dj) & 1, p.dgamma - q.dgamma - q.dj * (1 - p.dj),
                (p.deps - q.deps) & 1};
    }
    case Term::Kind::Star: {
        // deps gains dj mod 2: (aj)* = (eps·a)j and stars cancel in pairs
        DegreeVector p = degrees(t->a, j_marks);
        return {p.dj, p.dgamma, (p.deps + p.dj) & 1};
    }
    }
    return {};
}

bool is_homogeneous(const Identity& id, const std::set<std::string>& marking) {
    DegreeVector l = degrees(id.lhs, marking), r = degrees(id.rhs, marking);
    return l.dgamma == r.dgamma && l.deps == r.deps;
}

Elem eval_term(const LoopTable& L, const Involution* inv,
               const std::map<std::string, Elem>& assignment, const TermPtr& t) {
    switch (t->kind) {
    case Term::Kind::Var: {
        auto it = assignment.find(t->var);
        if (it == assignment.end())
            throw LoopError(ErrorCode::UnboundVariable, "unbound variable " + t->var);
        return it->second;
    }
    case Term::Kind::One: return kIdentity;
    case Term::Kind::J:
        throw LoopError(ErrorCode::JNotAllowed, "j outside a doubling context");
    case Term::Kind::Mul:
        return L.mul(eval_term(L, inv, assignment, t->a),
                     eval_term(L, inv, assignment, t->b));
    case Term::Kind::RDiv:
        return L.right_div(eval_term(L, inv, assignment, t->a),
                           eval_term(L, inv, assignment, t->b));
    case Term::Kind::LDiv:
        return L.left_div(eval_term(L, inv, assignment, t->a),
                          eval_term(L, inv, assignment, t->b));
    case Term::Kind::Star:
        if (!inv)
            throw LoopError(ErrorCode::MissingInvolution, "term uses * but no involution");
        return (*inv)(eval_term(L, inv, assignment, t->a));
    }
    return kIdentity;
}

IdentityCheck check_identity(const LoopTable& L, const Involution* inv,
                             const Identity& id) {
    const int n = L.order();
    const size_t k = id.variables.size();
    std::vector<Elem> vals(k, 0);
    std::map<std::string, Elem> assign;
    while (true) {
        for (size_t i = 0; i < k; i++) assign[id.variables[i]] = vals[i];
        if (eval_term(L, inv, assign, id.lhs) != eval_term(L, inv, assign, id.rhs))
            return {false, assign};
        // advance odometer, last variable fastest
        size_t i = k;
        while (i > 0) {
            i--;
            if (++vals[i] < n) break;
            vals[i] = 0;
            if (i == 0) return {true, {}};
        }
        if (k == 0) return {true, {}};
    }
}

VarietySpec make_variety(std::string name, const std::vector<std::string>& lines) {
    VarietySpec V;
    V.name = std::move(name);
    for (const auto& l : lines) V.identities.push_back(parse_identity(l));
    return V;
}

bool variety_membership(const LoopTable& L, const Involution& inv, const VarietySpec& V) {
    for (const auto& id : V.identities)
        if (!check_identity(L, &inv, id).holds) return false;
    return true;
}

bool derivative_membership(const LoopTable& L, const Involution& inv,
                           const VarietySpec& V) {
    DoublingParams p = validate_params(L, inv, kIdentity, kIdentity);
    DoubleResult D = double_loop(L, inv, p);
    return variety_membership(D.table, *D.star, V);
}

namespace {

struct SymPair {
    TermPtr t;
    int bit; // 0: base component, 1: Lj component
};

// rewrite over the doubled carrier with gamma = epsilon = 1
SymPair sym_eval(const TermPtr& t, const std::map<std::string, int>& marks) {
    switch (t->kind) {
    case Term::Kind::Var: {
        int b = marks.count(t->var) ? marks.at(t->var) : 0;
        return {make_var(t->var), b};
    }
    case Term::Kind::One: return {make_one(), 0};
    case Term::Kind::J: return {make_one(), 1};
    case Term::Kind::Mul: {
        SymPair p = sym_eval(t->a, marks), q = sym_eval(t->b, marks);
        if (p.bit == 0 && q.bit == 0) return {make_mul(p.t, q.t), 0};
        if (p.bit == 0 && q.bit == 1) return {make_mul(q.t, p.t), 1}; // a(bj) = (ba)j
        if (p.bit == 1 && q.bit == 0)
            return {make_mul(p.t, make_star(q.t)), 1}; // (aj)b = (ab*)j
        return {make_mul(make_star(q.t), p.t), 0};     // (aj)(bj) = b*a
    }
    case Term::Kind::RDiv: {
        SymPair p = sym_eval(t->a, marks), q = sym_eval(t->b, marks);
        if (p.bit == 0 && q.bit == 0) return {make_rdiv(p.t, q.t), 0};
        if (p.bit == 0 && q.bit == 1)
            return {make_ldiv(make_star(q.t), p.t), 1}; // a/(bj) = (b*\a)j
        if (p.bit == 1 && q.bit == 0)
            return {make_rdiv(p.t, make_star(q.t)), 1}; // (bj)/a = (b/a*)j
        return {make_ldiv(q.t, p.t), 0};                // (aj)/(bj) = b\a
    }
    case Term::Kind::LDiv: {
        SymPair p = sym_eval(t->a, marks), q = sym_eval(t->b, marks);
        if (p.bit == 0 && q.bit == 0) return {make_ldiv(p.t, q.t), 0};
        if (p.bit == 0 && q.bit == 1)
            return {make_rdiv(q.t, p.t), 1}; // a\(bj) = (b/a)j
        if (p.bit == 1 && q.bit == 0)
            return {make_ldiv(make_star(p.t), make_star(q.t)), 1}; // (bj)\a = (b*\a*)j
        return {make_rdiv(make_star(q.t), make_star(p.t)), 0};     // (aj)\(bj) = b*/a*
    }
    case Term::Kind::Star: {
        SymPair p = sym_eval(t->a, marks);
        if (p.bit == 0) return {make_star(p.t), 0};
        return p; // (aj)* = (eps·a)j with eps = 1
    }
    }
    return {make_one(), 0};
}

} // namespace

std::vector<ExpandedIdentity> expand_derivative_identities(const Identity& id) {
    if (has_j(id.lhs) || has_j(id.rhs))
        throw LoopError(ErrorCode::JNotAllowed, "identity must be j-free");
    const size_t k = id.variables.size();
    std::vector<ExpandedIdentity> out;
    std::set<std::string> seen;
    for (size_t mask = 0; mask < (size_t{1} << k); mask++) {
        std::map<std::string, int> marks;
        for (size_t i = 0; i < k; i++)
            if (mask & (size_t{1} << i)) marks[id.variables[i]] = 1;
        SymPair l = sym_eval(id.lhs, marks), r = sym_eval(id.rhs, marks);
        if (l.bit != r.bit) {
            if (seen.insert("FALSE").second) out.push_back({false, std::nullopt});
            continue;
        }
        Identity comp;
        comp.lhs = normalize_stars(l.t);
        comp.rhs = normalize_stars(r.t);
        collect_vars(comp.lhs, comp.variables);
        collect_vars(comp.rhs, comp.variables);
        if (seen.insert(print_identity(comp)).second)
            out.push_back({true, std::move(comp)});
    }
    return out;
}

Elem eval_in_double(const DoubleResult& D, const std::map<std::string, Elem>& assignment,
                    const TermPtr& t) {
    const Involution* s = D.star ? &*D.star : nullptr;
    std::function<Elem(const TermPtr&)> go = [&](const TermPtr& u) -> Elem {
        switch (u->kind) {
        case Term::Kind::Var: {
            auto it = assignment.find(u->var);
            if (it == assignment.end())
                throw LoopError(ErrorCode::UnboundVariable, "unbound variable " + u->var);
            return it->second;
        }
        case Term::Kind::One: return kIdentity;
        case Term::Kind::J: return D.j;
        case Term::Kind::Mul: return D.table.mul(go(u->a), go(u->b));
        case Term::Kind::RDiv: return D.table.right_div(go(u->a), go(u->b));
        case Term::Kind::LDiv: return D.table.left_div(go(u->a), go(u->b));
        case Term::Kind::Star:
            if (!s)
                throw LoopError(ErrorCode::MissingInvolution,
                                "double carries no involution");
            return (*s)(go(u->a));
        }
        return kIdentity;
    };
    return go(t);
}

ScalingCheck homogeneity_scaling_check(const LoopTable& L, const Involution& inv,
                                       Elem gamma, Elem epsilon, const TermPtr& t,
                                       const std::map<std::string, Elem>& assignment) {
    DoubleResult D11 = double_loop(L, inv, validate_params(L, inv, kIdentity, kIdentity));
    DoubleResult Dge = double_loop(L, inv, validate_params(L, inv, gamma, epsilon));

    ScalingCheck R;
    R.deg = degrees(t);
    R.value_11 = eval_in_double(D11, assignment, t);
    R.value_ge = eval_in_double(Dge, assignment, t);
    Elem scale = L.mul(L.central_power(gamma, R.deg.dgamma),
                       L.central_power(epsilon, R.deg.deps));
    R.expected = Dge.table.mul(R.value_11, scale);
    R.holds = R.value_ge == R.expected;
    return R;
}

namespace varieties {

VarietySpec commutative() { return make_variety("commutative", {"x.y = y.x"}); }
VarietySpec associative() {
    return make_variety("associative", {"(x.y).z = x.(y.z)"});
}
VarietySpec moufang() { return make_variety("moufang", {"(z.x).(y.z) = (z.(x.y)).z"}); }
VarietySpec left_alternative() {
    return make_variety("left-alternative", {"(x.x).y = x.(x.y)"});
}
VarietySpec iden() { return make_variety("iden", {"x* = x"}); }
VarietySpec exp2() {
    return make_variety("exp2", {
                                    "(x.x).y = y.(x.x)",
                                    "((x.x).y).z = (x.x).(y.z)",
                                    "(y.(x.x)).z = y.((x.x).z)",
                                    "(y.z).(x.x) = y.(z.(x.x))",
                                });
}
VarietySpec normal() {
    return make_variety("normal", {
                                      "(x*.x).y = y.(x*.x)",
                                      "((x*.x).y).z = (x*.x).(y.z)",
                                      "(y.(x*.x)).z = y.((x*.x).z)",
                                      "(y.z).(x*.x) = y.(z.(x*.x))",
                                  });
}
VarietySpec inverse_property() {
    return make_variety("inverse-property",
                        {"(1/x).(x.y) = y", "(x.y).(y\\1) = x"});
}
VarietySpec anti_automorphic_inverse() {
    return make_variety("anti-automorphic-inverse", {"1/(x.y) = (1/y).(1/x)"});
}

} // namespace varieties

} // namespace cdloop
