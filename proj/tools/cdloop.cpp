// cdloop: build, analyze and verify finite loops with involution.
//
// Verbs: show, check, double, qn, chein, general, analyze, aut,
//        variety, term, kirsh, paper-check.
// Exit codes: 0 success, 1 property failure, 2 usage error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdloop/analysis.hpp"
#include "cdloop/automorphism.hpp"
#include "cdloop/catalog.hpp"
#include "cdloop/doubling.hpp"
#include "cdloop/io.hpp"
#include "cdloop/suite.hpp"
#include "cdloop/terms.hpp"

using nlohmann::ordered_json;
using namespace cdloop;

namespace {

void write_json_out(const std::string& path, const ordered_json& j) {
    if (path.empty()) return;
    std::ofstream f(path);
    f << j.dump(2) << "\n";
}

Elem resolve_name(const LoopTable& L, const std::string& s) {
    if (auto e = L.find_name(s)) return *e;
    throw CLI::ValidationError("--gamma/--epsilon", "no element named '" + s + "'");
}

std::string flag_str(const LoopTable& L, const Flag& f) {
    if (f.holds) return "true";
    std::string s = "false (witness:";
    for (Elem w : f.witness) s += " " + L.name(w);
    return s + ")";
}

std::string elems_str(const LoopTable& L, const std::vector<Elem>& xs) {
    std::string s = "{";
    for (size_t i = 0; i < xs.size(); i++) {
        if (i) s += ", ";
        s += L.name(xs[i]);
    }
    return s + "}";
}

ordered_json flag_json(const Flag& f) {
    ordered_json j;
    j["holds"] = f.holds;
    if (!f.holds) j["witness"] = f.witness;
    return j;
}

int cmd_analyze(const std::string& file, bool fast_dias, const std::string& md_gamma,
                const std::string& json_out) {
    LoopDocument doc = read_loop_path(file);
    const LoopTable& L = doc.loop;
    const Involution* inv = doc.star ? &*doc.star : nullptr;

    PropertyReport P = property_report(L, inv);
    StructureReport S = structure_sets(L);
    ordered_json j;
    j["order"] = L.order();

    std::cout << "order: " << L.order() << "\n";
    std::cout << "properties:\n";
    auto show = [&](const char* name, const Flag& f) {
        std::cout << "  " << name << ": " << flag_str(L, f) << "\n";
        j["properties"][name] = flag_json(f);
    };
    show("commutative", P.commutative);
    show("associative", P.associative);
    show("flexible", P.flexible);
    show("left_alternative", P.left_alternative);
    show("right_alternative", P.right_alternative);
    show("alternative", P.alternative);
    show("moufang", P.moufang);
    show("power_associative", P.power_associative);
    show("diassociative", P.diassociative);
    show("central_by_abelian", P.central_by_abelian);
    show("exp2", P.exp2);
    show("inverse_property", P.inverse_property);
    show("weak_inverse", P.weak_inverse);
    show("anti_automorphic_inverse", P.anti_automorphic_inverse);
    show("well_defined_inverse", P.well_defined_inverse);
    show("anti_commutative", P.anti_commutative);
    if (P.anti_symmetric) show("anti_symmetric", *P.anti_symmetric);

    std::cout << "structure:\n";
    std::cout << "  nucleus: " << elems_str(L, S.nucleus) << "\n";
    std::cout << "  commutant: " << elems_str(L, S.commutant) << "\n";
    std::cout << "  center: " << elems_str(L, S.center) << "\n";
    std::cout << "  derived subloop order: " << S.derived.size() << "\n";
    std::cout << "  dim: " << (S.dim ? std::to_string(*S.dim) : "undefined") << "\n";
    j["structure"]["nucleus"] = S.nucleus;
    j["structure"]["commutant"] = S.commutant;
    j["structure"]["center"] = S.center;
    j["structure"]["derived_order"] = S.derived.size();
    if (S.dim) j["structure"]["dim"] = *S.dim;
    else j["structure"]["dim"] = nullptr;

    if (inv) {
        InvolutionReport R = classify_involution(L, *inv);
        std::cout << "involution:\n";
        std::cout << "  is_identity: " << (R.is_identity ? "true" : "false") << "\n";
        std::cout << "  is_central: " << (R.is_central ? "true" : "false") << "\n";
        std::cout << "  is_super_central: " << (R.is_super_central ? "true" : "false")
                  << "\n";
        std::cout << "  is_normal: " << (R.is_normal ? "true" : "false") << "\n";
        std::cout << "  is_anti_symmetric: " << (R.is_anti_symmetric ? "true" : "false")
                  << "\n";
        std::cout << "  symmetric_center: " << elems_str(L, R.symmetric_center) << "\n";
        j["involution"] = {{"is_identity", R.is_identity},
                           {"is_central", R.is_central},
                           {"is_super_central", R.is_super_central},
                           {"is_normal", R.is_normal},
                           {"is_anti_symmetric", R.is_anti_symmetric},
                           {"symmetric_center", R.symmetric_center}};
    }

    OctonionCheck oc = octonion_check(L);
    std::cout << "octonion: " << (oc.is_octonion ? "true" : "false");
    if (oc.alpha) std::cout << " (alpha = " << L.name(*oc.alpha) << ")";
    std::cout << "\n";
    j["octonion"]["is_octonion"] = oc.is_octonion;
    if (oc.alpha) j["octonion"]["alpha"] = *oc.alpha;

    if (fast_dias) {
        bool fd = diassociative_fast(L);
        std::cout << "diassociative_fast: " << (fd ? "true" : "false")
                  << (fd == P.diassociative.holds ? " (agrees)" : " (DISAGREES)") << "\n";
        j["diassociative_fast"] = fd;
        if (fd != P.diassociative.holds) return 1;
    }
    if (!md_gamma.empty()) {
        if (!inv) throw CLI::ValidationError("--moufang-double", "loop has no involution");
        MoufangDoubleReport R = moufang_double_report(L, *inv, resolve_name(L, md_gamma));
        std::cout << "moufang-double (gamma = " << md_gamma << "):\n";
        std::cout << "  (1) loop moufang: " << flag_str(L, R.loop_moufang) << "\n";
        std::cout << "  (2) [a,cc*] = 1: " << flag_str(L, R.comm_ccstar) << "\n";
        std::cout << "  (3) [c,c*] = 1: " << flag_str(L, R.comm_c_cstar) << "\n";
        std::cout << "  (4) [a,c,c*] = 1: " << flag_str(L, R.assoc_c_cstar) << "\n";
        std::cout << "  (5) cc*c in nucleus: " << flag_str(L, R.norm_in_nucleus) << "\n";
        std::cout << "  predicted: " << (R.predicted ? "true" : "false")
                  << ", actual: " << (R.actual ? "true" : "false") << "\n";
        j["moufang_double"] = {{"predicted", R.predicted}, {"actual", R.actual}};
        if (R.predicted != R.actual) return 1;
    }
    write_json_out(json_out, j);
    return 0;
}

int cmd_aut(const std::string& file, bool star, const std::string& fix_eps,
            bool linear_action, const std::string& json_out) {
    LoopDocument doc = read_loop_path(file);
    const LoopTable& L = doc.loop;
    const Involution* inv = doc.star ? &*doc.star : nullptr;
    AutFlavor flavor = AutFlavor::Plain;
    std::optional<Elem> eps;
    if (!fix_eps.empty()) {
        flavor = AutFlavor::StarFixingEpsilon;
        eps = resolve_name(L, fix_eps);
    } else if (star) {
        flavor = AutFlavor::Star;
    }
    AutGroup G = automorphism_group(L, inv, flavor, eps);
    std::cout << "order: " << G.order << "\n";
    std::cout << "generators (" << G.generators.size() << "):\n";
    for (const auto& g : G.generators) {
        std::cout << " ";
        for (Elem v : g) std::cout << " " << v;
        std::cout << "\n";
    }
    ordered_json j;
    j["order"] = G.order;
    j["generators"] = G.generators;
    if (linear_action) {
        LinearAction A = induced_linear_action(L, G);
        std::cout << "linear action: rank " << A.rank << ", faithful "
                  << (A.faithful ? "true" : "false") << ", kernel order "
                  << A.kernel_order << ", image order " << A.image_order << "\n";
        j["linear_action"] = {{"rank", A.rank},
                              {"faithful", A.faithful},
                              {"kernel_order", A.kernel_order},
                              {"image_order", A.image_order}};
    }
    write_json_out(json_out, j);
    return 0;
}

int cmd_variety_check(const std::string& file, const std::string& ids,
                      const std::string& json_out) {
    LoopDocument doc = read_loop_path(file);
    const Involution* inv = doc.star ? &*doc.star : nullptr;
    std::ifstream f(ids);
    if (!f) throw CLI::ValidationError("--ids", "cannot open " + ids);
    std::string line;
    bool all_hold = true;
    ordered_json j = ordered_json::array();
    while (std::getline(f, line)) {
        std::string trimmed = line.substr(0, line.find('#'));
        if (trimmed.find_first_not_of(" \t\r") == std::string::npos) continue;
        Identity id = parse_identity(trimmed);
        IdentityCheck r = check_identity(doc.loop, inv, id);
        std::cout << print_identity(id) << " : " << (r.holds ? "holds" : "fails");
        ordered_json e;
        e["identity"] = print_identity(id);
        e["holds"] = r.holds;
        if (!r.holds) {
            std::cout << " (witness:";
            for (const auto& [v, x] : r.witness) {
                std::cout << " " << v << "=" << doc.loop.name(x);
                e["witness"][v] = x;
            }
            std::cout << ")";
            all_hold = false;
        }
        std::cout << "\n";
        j.push_back(e);
    }
    write_json_out(json_out, j);
    return all_hold ? 0 : 1;
}

int cmd_variety_derive(const std::string& ids, const std::string& json_out) {
    std::ifstream f(ids);
    if (!f) throw CLI::ValidationError("--ids", "cannot open " + ids);
    std::string line;
    ordered_json j = ordered_json::array();
    while (std::getline(f, line)) {
        std::string trimmed = line.substr(0, line.find('#'));
        if (trimmed.find_first_not_of(" \t\r") == std::string::npos) continue;
        Identity id = parse_identity(trimmed);
        std::cout << "# " << print_identity(id) << "\n";
        ordered_json comps = ordered_json::array();
        for (const auto& e : expand_derivative_identities(id)) {
            if (!e.satisfiable) {
                std::cout << "unsatisfiable\n";
                comps.push_back(nullptr);
            } else {
                std::cout << print_identity(*e.id) << "\n";
                comps.push_back(print_identity(*e.id));
            }
        }
        j.push_back({{"identity", print_identity(id)}, {"components", comps}});
    }
    write_json_out(json_out, j);
    return 0;
}

int cmd_paper_check(const std::string& only, const std::string& json_out) {
    auto results = run_suite(only);
    bool all = true;
    ordered_json j = ordered_json::array();
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << " ("
                  << std::fixed << std::setprecision(0) << r.millis << " ms)\n";
        if (!r.detail.empty()) std::cout << r.detail;
        if (!r.pass) all = false;
        j.push_back({{"name", r.name}, {"pass", r.pass}, {"millis", r.millis},
                     {"detail", r.detail}});
    }
    std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
    write_json_out(json_out, j);
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite loops with involution: doubling, analysis, automorphisms"};
    app.require_subcommand(1);
    std::string json_out;
    auto with_json = [&](CLI::App* sub) {
        sub->add_option("--json-out", json_out, "mirror results to a JSON file");
    };

    // show / check
    std::string file = "-";
    auto* show = app.add_subcommand("show", "print a loop file");
    show->add_option("file", file);
    auto* check = app.add_subcommand("check", "validate a loop file");
    check->add_option("file", file);

    // double
    auto* dbl = app.add_subcommand("double", "Cayley-Dickson double of a loop file");
    std::string d_gamma, d_eps = "none", gen_name = "j";
    dbl->add_option("file", file);
    dbl->add_option("--gamma", d_gamma, "central element, by name")->required();
    dbl->add_option("--epsilon", d_eps, "central element by name, or 'none'");
    dbl->add_option("--gen-name", gen_name, "name of the new generator");

    // qn
    auto* qn = app.add_subcommand("qn", "the loop Q_n of the iterated doubling");
    int qn_n = 3;
    qn->add_option("n", qn_n)->required();

    // chein
    auto* chein = app.add_subcommand("chein", "Chein double M(G,2) of a group file");
    chein->add_option("file", file);

    // general
    auto* general = app.add_subcommand("general", "iterated doubles over a cyclic center");
    int gen_m = 2;
    std::string gammas_csv;
    general->add_option("--m", gen_m, "center order (even)")->required();
    general->add_option("--gammas", gammas_csv, "comma-separated exponents")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "property and structure report");
    bool fast_dias = false;
    bool md = false;
    std::string md_gamma;
    analyze->add_option("file", file);
    analyze->add_flag("--fast-dias", fast_dias, "run the finite-basis diassociativity test");
    analyze->add_flag("--moufang-double", md, "evaluate the Moufang-double conditions");
    analyze->add_option("--gamma", md_gamma, "gamma for --moufang-double");
    with_json(analyze);

    // aut
    auto* aut = app.add_subcommand("aut", "automorphism group");
    bool star = false, linact = false;
    std::string fix_eps;
    aut->add_option("file", file);
    aut->add_flag("--star", star, "respect the involution");
    aut->add_option("--fix-epsilon", fix_eps, "fix this element (implies --star)");
    aut->add_flag("--linear-action", linact, "induced action on L/Z");
    with_json(aut);

    // variety
    auto* variety = app.add_subcommand("variety", "identity tooling");
    variety->require_subcommand(1);
    auto* vcheck = variety->add_subcommand("check", "check identities on a loop");
    std::string ids_file;
    vcheck->add_option("file", file);
    vcheck->add_option("--ids", ids_file, "identity file, one per line")->required();
    with_json(vcheck);
    auto* vderive = variety->add_subcommand("derive", "expand identities over the double");
    vderive->add_option("--ids", ids_file, "identity file, one per line")->required();
    with_json(vderive);

    // term
    auto* term = app.add_subcommand("term", "term tooling");
    term->require_subcommand(1);
    auto* tdeg = term->add_subcommand("degrees", "degree vector of a term");
    std::string term_text, marks_csv;
    tdeg->add_option("text", term_text)->required();
    tdeg->add_option("--marks", marks_csv, "variables treated as Lj elements");
    with_json(tdeg);

    // kirsh
    auto* kirsh = app.add_subcommand(
        "kirsh", "exhibit the trivial-associator triple inside <xj,yj,zj> of Q4");
    with_json(kirsh);

    // paper-check
    auto* pcheck = app.add_subcommand("paper-check", "run the verification suite");
    std::string only;
    pcheck->add_option("--only", only, "run only checks whose name contains this");
    with_json(pcheck);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*show) {
            LoopDocument doc = read_loop_path(file);
            std::cout << "order: " << doc.loop.order() << "\n";
            std::cout << "names:";
            for (const auto& n : doc.loop.names()) std::cout << " " << n;
            std::cout << "\ntable:\n";
            for (int i = 0; i < doc.loop.order(); i++) {
                std::cout << " ";
                for (int j = 0; j < doc.loop.order(); j++)
                    std::cout << " " << doc.loop.mul(static_cast<Elem>(i),
                                                     static_cast<Elem>(j));
                std::cout << "\n";
            }
            if (doc.star) {
                std::cout << "involution:";
                for (Elem x = 0; x < doc.loop.order(); x++)
                    std::cout << " " << (*doc.star)(x);
                std::cout << "\n";
            }
            return 0;
        }
        if (*check) {
            LoopDocument doc = read_loop_path(file);
            std::cout << "ok: loop of order " << doc.loop.order()
                      << (doc.star ? " with involution" : "") << "\n";
            return 0;
        }
        if (*dbl) {
            LoopDocument doc = read_loop_path(file);
            if (!doc.star)
                throw LoopError(ErrorCode::MissingInvolution,
                                "doubling needs an involution in the loop file");
            Elem g = resolve_name(doc.loop, d_gamma);
            std::optional<Elem> e;
            if (d_eps != "none") e = resolve_name(doc.loop, d_eps);
            DoublingParams p = validate_params(doc.loop, *doc.star, g, e);
            DoubleResult D = double_loop(doc.loop, *doc.star, p, gen_name);
            std::cout << write_loop(D.table, D.star ? &*D.star : nullptr);
            return 0;
        }
        if (*qn) {
            auto [L, s] = qn_pair(qn_n);
            std::cout << write_loop(L, &s);
            return 0;
        }
        if (*chein) {
            LoopDocument doc = read_loop_path(file);
            DoubleResult D = build_chein(doc.loop);
            std::cout << write_loop(D.table, D.star ? &*D.star : nullptr);
            return 0;
        }
        if (*general) {
            std::vector<int> exps;
            std::stringstream ss(gammas_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) exps.push_back(std::stoi(tok));
            auto chain = build_general(gen_m, exps);
            if (chain.empty())
                throw LoopError(ErrorCode::NotSquare, "need at least one exponent");
            const DoubleResult& D = chain.back();
            std::cout << write_loop(D.table, D.star ? &*D.star : nullptr);
            return 0;
        }
        if (*analyze) return cmd_analyze(file, fast_dias, md ? md_gamma : "", json_out);
        if (*aut) return cmd_aut(file, star, fix_eps, linact, json_out);
        if (*variety) {
            if (*vcheck) return cmd_variety_check(file, ids_file, json_out);
            return cmd_variety_derive(ids_file, json_out);
        }
        if (*term) {
            TermPtr t = parse_term(term_text);
            std::set<std::string> marks;
            std::stringstream ss(marks_csv);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) marks.insert(tok);
            DegreeVector d = degrees(t, marks);
            std::cout << "dj: " << d.dj << ", dgamma: " << d.dgamma
                      << ", deps: " << d.deps << "\n";
            write_json_out(json_out,
                           {{"dj", d.dj}, {"dgamma", d.dgamma}, {"deps", d.deps}});
            return 0;
        }
        if (*kirsh) {
            auto chain = build_qn(4);
            KirshReport R = kirsh_refutation(chain[2], chain[3]);
            const LoopTable& Q4 = chain[3].table;
            std::cout << "generators of Q3: " << Q4.name(R.x) << " " << Q4.name(R.y)
                      << " " << Q4.name(R.z) << "\n";
            std::cout << "octonion alpha in <x,y,z>: " << Q4.name(R.alpha) << "\n";
            std::cout << "probe triple: (" << Q4.name(R.xz) << ", " << Q4.name(R.yz)
                      << ", " << Q4.name(R.zj) << ")\n";
            std::cout << "it lies in <xj,yj,zj>: "
                      << (R.triple_in_subloop ? "yes" : "no") << "\n";
            std::cout << "its classes are independent: "
                      << (R.classes_independent ? "yes" : "no") << "\n";
            std::cout << "[xz, yz, zj] = " << Q4.name(R.probe_associator) << "\n";
            std::cout << "closed-form cross-check: "
                      << (R.formula_agrees ? "agrees" : "DISAGREES") << "\n";
            std::cout << "so <xj,yj,zj> is not a nonassociative octonion subloop\n";
            write_json_out(json_out,
                           {{"x", R.x},
                            {"y", R.y},
                            {"z", R.z},
                            {"alpha", R.alpha},
                            {"probe", {R.xz, R.yz, R.zj}},
                            {"probe_associator", R.probe_associator},
                            {"triple_in_subloop", R.triple_in_subloop},
                            {"classes_independent", R.classes_independent},
                            {"formula_agrees", R.formula_agrees},
                            {"refutation_established", R.refutation_established}});
            return 0;
        }
        if (*pcheck) return cmd_paper_check(only, json_out);
    } catch (const LoopError& e) {
        std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
