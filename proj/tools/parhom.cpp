// parhom: batch front-end for partial group (co)homology computations.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parhom/config.hpp"
#include "parhom/homology.hpp"

using json = nlohmann::ordered_json;
using namespace parhom;

namespace {

struct Options {
    std::string spec_path;
    int max_degree = 3;
    std::string ring_text;
    bool as_json = false;
    std::string subgroup_text;
    bool names = false;
    bool table = false;
};

Ring parse_ring_flag(const std::string& t) {
    if (t == "Z") return Ring::Z();
    if (t == "Q") return Ring::Q();
    std::string body;
    if (t.rfind("GF", 0) == 0) body = t.substr(2);
    if (!body.empty() && body.front() == '(' && body.back() == ')')
        body = body.substr(1, body.size() - 2);
    if (!body.empty()) {
        long long p = std::stoll(body);
        try {
            return Ring::GF(p);
        } catch (const Error&) {
            throw ValidationError("p must be prime, got " + std::to_string(p));
        }
    }
    throw ValidationError("unknown ring '" + t + "' (use Z, Q or GFp)");
}

Ring ring_of(const Options& opt, const ProblemSpec& spec) {
    if (!opt.ring_text.empty()) return parse_ring_flag(opt.ring_text);
    if (spec.ring) return *spec.ring;
    throw ValidationError("no ring: add a [ring] section or pass --ring");
}

std::vector<int> subgroup_ids_of(const Options& opt, const ProblemSpec& spec) {
    if (!opt.subgroup_text.empty()) {
        std::vector<int> ids;
        std::string cur;
        for (char c : opt.subgroup_text + ",") {
            if (c == ',') {
                if (!cur.empty()) ids.push_back(std::stoi(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        return ids;
    }
    if (spec.subgroup_ids) return *spec.subgroup_ids;
    throw ValidationError("no subgroup: add a [subgroup] section or pass --subgroup");
}

json summary_row(int degree, const HomologySummary& h, const std::string& side) {
    json torsion = json::array();
    for (const Int& t : h.torsion) torsion.push_back(t.str());
    return json{{"degree", degree},
                {"betti", h.betti},
                {"torsion", torsion},
                {"side", side}};
}

void emit(const Options& opt, const json& doc, const std::string& table_text) {
    if (opt.as_json)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << table_text;
}

std::string summary_table(const std::vector<HomologySummary>& h,
                          const std::string& label) {
    std::string out;
    for (std::size_t n = 0; n < h.size(); ++n)
        out += label + "_" + std::to_string(n) + " = " + h[n].str() + "\n";
    return out;
}

json spec_header(const std::string& command, const ProblemSpec& spec,
                 const Ring& ring) {
    return json{{"command", command},
                {"group", spec.group->description()},
                {"order", spec.group->order()},
                {"ring", ring.name()}};
}

int cmd_validate(const Options& opt) {
    ProblemSpec spec = parse_spec(opt.spec_path);
    json doc{{"command", "validate"},
             {"group", spec.group->description()},
             {"order", spec.group->order()}};
    std::string text = "group: " + spec.group->description() + " of order " +
                       std::to_string(spec.group->order()) + " OK\n";
    if (spec.module) {
        Ring ring = ring_of(opt, spec);
        doc["ring"] = ring.name();
        BuiltModule m = build_module(spec, ring);
        std::size_t r = m.rep ? m.rep->rank() : m.action->rank;
        doc["module"] = json{{"kind", spec.module->kind}, {"rank", r}};
        text += "module: kind " + spec.module->kind + ", rank " +
                std::to_string(r) + ", axioms OK\n";
    }
    doc["valid"] = true;
    emit(opt, doc, text);
    return 0;
}

int cmd_semigroup(const Options& opt) {
    ProblemSpec spec = parse_spec(opt.spec_path);
    const FiniteGroup& g = *spec.group;
    std::vector<SElem> S = enumerate_S(g);
    std::size_t dimB = enumerate_idempotents(g).size();
    auto sname = [&](const SElem& z) {
        std::string s;
        for (int a = 0; a < g.order(); ++a)
            if (z.idem & (1u << a)) s += "e_{" + g.name(a) + "}";
        s += "[" + g.name(z.grp) + "]";
        return s;
    };
    json doc = spec_header("semigroup", spec,
                           spec.ring ? *spec.ring : Ring::Q());
    doc.erase("ring");
    doc["semigroup_order"] = S.size();
    doc["dim_B"] = dimB;
    std::string text = "|S(G)| = " + std::to_string(S.size()) +
                       "\ndim B = " + std::to_string(dimB) + "\n";
    if (opt.names) {
        json names = json::array();
        text += "group element names:\n";
        for (int a = 0; a < g.order(); ++a) {
            names.push_back(g.name(a));
            text += "  " + std::to_string(a) + ": " + g.name(a) + "\n";
        }
        doc["names"] = names;
    }
    if (opt.table) {
        json rows = json::array();
        text += "multiplication table of S(G):\n";
        std::map<SElem, std::size_t> index;
        for (std::size_t i = 0; i < S.size(); ++i) index[S[i]] = i;
        for (const SElem& x : S) {
            json row = json::array();
            for (const SElem& y : S) row.push_back(index.at(sg_mul(g, x, y)));
            rows.push_back(row);
            text += "  " + sname(x) + ":";
            for (const SElem& y : S)
                text += " " + std::to_string(index.at(sg_mul(g, x, y)));
            text += "\n";
        }
        doc["table"] = rows;
    }
    emit(opt, doc, text);
    return 0;
}

json matrix_json(const ExactMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

int cmd_globalize(const Options& opt) {
    ProblemSpec spec = parse_spec(opt.spec_path);
    Ring ring = ring_of(opt, spec);
    BuiltModule m = build_module(spec, ring);
    Globalization gl = m.rep ? globalize(*m.rep) : globalize(*m.action);
    GlobalizationReport rep =
        m.rep ? verify_globalization(*m.rep, gl.Lambda, gl.iota)
              : verify_globalization(*m.action, gl.Lambda, gl.iota);
    ExactMatrix ker = kernel_basis(gl.iota);
    // sign-normalize columns for stable output
    for (std::size_t j = 0; j < ker.cols(); ++j)
        for (std::size_t i = 0; i < ker.rows(); ++i)
            if (!ker.entry_zero(i, j)) {
                if (ker.at(i, j).value() < 0)
                    for (std::size_t k = i; k < ker.rows(); ++k)
                        ker.set(k, j, -ker.at(k, j));
                break;
            }
    const FiniteGroup& g = *spec.group;
    json doc = spec_header("globalize", spec, ring);
    doc["lambda_rank"] = gl.Lambda.rank;
    doc["iota_kernel_rank"] = ker.cols();
    doc["iota_kernel"] = matrix_json(ker);
    json action = json::array();
    for (int a = 0; a < g.order(); ++a)
        action.push_back(json{{"g", g.name(a)},
                              {"matrix", matrix_json(gl.Lambda.act(a))}});
    doc["action"] = action;
    doc["verified"] = rep.pass();
    json failures = json::array();
    for (const std::string& f : rep.failures) failures.push_back(f);
    doc["failures"] = failures;
    std::string text = "Lambda rank = " + std::to_string(gl.Lambda.rank) +
                       "\niota kernel rank " + std::to_string(ker.cols()) + "\n";
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        text += "  kernel vector (";
        for (std::size_t i = 0; i < ker.rows(); ++i)
            text += (i ? "," : "") + ker.at(i, j).str();
        text += ")\n";
    }
    for (int a = 0; a < g.order(); ++a)
        text += "Theta(" + g.name(a) + ") =\n" + gl.Lambda.act(a).str();
    text += std::string("verification: ") + (rep.pass() ? "pass" : "FAIL") + "\n";
    for (const std::string& f : rep.failures) text += "  " + f + "\n";
    emit(opt, doc, text);
    return 0;
}

const ParRepModule& need_rep(const BuiltModule& m, Side side,
                             const std::string& what) {
    if (!m.rep)
        throw ValidationError(what + " needs a partial-representation module");
    if (m.rep->side() != side)
        throw ValidationError(what + " needs a " +
                              (side == Side::Left ? "left" : "right") +
                              " module");
    return *m.rep;
}

int cmd_homology(const Options& opt) {
    ProblemSpec spec = parse_spec(opt.spec_path);
    Ring ring = ring_of(opt, spec);
    BuiltModule m = build_module(spec, ring);
    const ParRepModule& M = need_rep(m, Side::Left, "homology");
    ChainComplex c = partial_bar_complex(M, opt.max_degree + 1);
    std::vector<HomologySummary> h = homology(c, opt.max_degree);
    json doc = spec_header("homology", spec, ring);
    json rows = json::array();
    for (int n = 0; n <= opt.max_degree; ++n)
        rows.push_back(summary_row(n, h[n], "partial"));
    doc["rows"] = rows;
    emit(opt, doc, summary_table(h, "H"));
    return 0;
}

int cmd_cohomology(const Options& opt) {
    ProblemSpec spec = parse_spec(opt.spec_path);
    Ring ring = ring_of(opt, spec);
    BuiltModule m = build_module(spec, ring);
    const ParRepModule& M = need_rep(m, Side::Right, "cohomology");
    CochainComplex c = partial_cochain_complex(M, opt.max_degree + 1);
    std::vector<HomologySummary> h = cohomology(c, opt.max_degree);
    json doc = spec_header("cohomology", spec, ring);
    json rows = json::array();
    for (int n = 0; n <= opt.max_degree; ++n)
        rows.push_back(summary_row(n, h[n], "partial"));
    doc["rows"] = rows;
    emit(opt, doc, summary_table(h, "H^"));
    return 0;
}

int emit_compare(const Options& opt, const ProblemSpec& spec, Ring ring,
                 const std::string& command, const CompareReport& rep) {
    json doc = spec_header(command, spec, ring);
    json rows = json::array();
    std::string text;
    for (const CompareRow& r : rep.rows) {
        rows.push_back(summary_row(r.degree, r.lhs, "partial"));
        rows.push_back(summary_row(r.degree, r.rhs, "global"));
        text += "degree " + std::to_string(r.degree) + ": partial " +
                r.lhs.str() + "  global " + r.rhs.str() +
                (r.equal() ? "" : "  MISMATCH") + "\n";
    }
    doc["rows"] = rows;
    doc["max_degree"] = rep.max_degree;
    doc["capped"] = rep.capped;
    if (!rep.note.empty()) doc["note"] = rep.note;
    doc["pass"] = rep.pass();
    if (rep.capped) text += "note: " + rep.note + "\n";
    text += std::string(rep.pass() ? "pass" : "FAIL") + "\n";
    emit(opt, doc, text);
    return rep.pass() ? 0 : 2;
}

int cmd_compare(const Options& opt, const std::string& what) {
    ProblemSpec spec = parse_spec(opt.spec_path);
    Ring ring = ring_of(opt, spec);
    BuiltModule m = build_module(spec, ring);
    if (what == "homology") {
        const ParRepModule& M = need_rep(m, Side::Left, "compare homology");
        return emit_compare(opt, spec, ring, "compare homology",
                            compare_homology(M, opt.max_degree));
    }
    const ParRepModule& M = need_rep(m, Side::Right, "compare cohomology");
    return emit_compare(opt, spec, ring, "compare cohomology",
                        compare_cohomology(M, opt.max_degree));
}

int cmd_shapiro(const Options& opt) {
    ProblemSpec spec = parse_spec(opt.spec_path);
    Ring ring = ring_of(opt, spec);
    Subgroup S = check_subgroup(*spec.group, subgroup_ids_of(opt, spec));
    // the module lives over the subgroup
    ProblemSpec sub = spec;
    sub.group = std::make_shared<FiniteGroup>(subgroup_group(*spec.group, S));
    BuiltModule m = build_module(sub, ring);
    const ParRepModule& M = need_rep(m, Side::Left, "shapiro");
    return emit_compare(opt, spec, ring, "shapiro",
                        shapiro_check(spec.group, S, M, opt.max_degree));
}

int cmd_certify_projective(const Options& opt) {
    ProblemSpec spec = parse_spec(opt.spec_path);
    Ring ring = ring_of(opt, spec);
    PhiResult phi = construct_phi(spec.group, ring);
    json doc = spec_header("certify-projective", spec, ring);
    doc["dim_KGB"] = phi.nd.dim;
    doc["dim_N"] = phi.nd.nlabels.size();
    doc["certified"] = true;
    std::string text = "dim KG(x)B = " + std::to_string(phi.nd.dim) +
                       "\ndim N = " + std::to_string(phi.nd.nlabels.size()) +
                       "\nphi constructed, delta . phi = 1_N, phi right-linear\n";
    emit(opt, doc, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partial group (co)homology of finite groups"};
    app.require_subcommand(1);
    Options opt;
    std::string compare_what;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--spec", opt.spec_path, "problem description file")
            ->required();
        sub->add_option("--max-degree", opt.max_degree, "top degree (default 3)");
        sub->add_option("--ring", opt.ring_text, "Z | Q | GFp (overrides spec)");
        sub->add_flag("--json", opt.as_json, "machine-readable output");
        return sub;
    };

    add_common(app.add_subcommand("validate", "check group/module axioms"));
    CLI::App* semigroup =
        add_common(app.add_subcommand("semigroup", "enumerate S(G)"));
    semigroup->add_flag("--names", opt.names, "print element names");
    semigroup->add_flag("--table", opt.table, "print the multiplication table");
    add_common(app.add_subcommand("globalize", "construct Lambda(M)"));
    add_common(app.add_subcommand("homology", "partial homology of M"));
    add_common(app.add_subcommand("cohomology", "partial cohomology of M"));
    CLI::App* compare = add_common(
        app.add_subcommand("compare", "partial vs global comparison"));
    compare->add_option("what", compare_what, "homology | cohomology")
        ->required()
        ->check(CLI::IsMember({"homology", "cohomology"}));
    CLI::App* shapiro = add_common(
        app.add_subcommand("shapiro", "subgroup induction comparison"));
    shapiro->add_option("--subgroup", opt.subgroup_text,
                        "comma-separated element ids");
    add_common(app.add_subcommand("certify-projective",
                                  "construct phi with delta . phi = 1_N"));

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    try {
        const std::string& name = sub->get_name();
        if (name == "validate") return cmd_validate(opt);
        if (name == "semigroup") return cmd_semigroup(opt);
        if (name == "globalize") return cmd_globalize(opt);
        if (name == "homology") return cmd_homology(opt);
        if (name == "cohomology") return cmd_cohomology(opt);
        if (name == "compare") return cmd_compare(opt, compare_what);
        if (name == "shapiro") return cmd_shapiro(opt);
        if (name == "certify-projective") return cmd_certify_projective(opt);
        std::cerr << "unknown subcommand\n";
        return 1;
    } catch (const MatrixTooLarge& e) {
        std::cerr << "guardrail: " << e.what() << "\n";
        return 3;
    } catch (const GroupTooLarge& e) {
        std::cerr << "guardrail: " << e.what() << "\n";
        return 3;
    } catch (const TheoremViolation& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return 2;
    } catch (const ComplexNotExactlyComposable& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return 2;
    } catch (const ConstructionFailed& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return 2;
    } catch (const PartialRepAxiomViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const std::string& v : e.violations)
            std::cerr << "  " << v << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
