// voacalc: exact OPE calculus for vertex algebras given by lambda-bracket
// tables. Loads a shipped algebra or an .ope file, verifies the vertex
// algebra axioms and solves for collapsing levels.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "voa/axioms.hpp"
#include "voa/collapse.hpp"
#include "voa/serialize.hpp"
#include "voa/shipped_data.hpp"
#include "voa/validate.hpp"

using namespace voa;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchemaVersion = "1";

struct Loaded {
    AlgebraPresentation presentation;
    std::vector<Diagnostic> diagnostics;
};

std::optional<std::string_view> shipped_text(const std::string& name) {
    for (const auto& [n, text] : shipped::all)
        if (n == name) return text;
    return std::nullopt;
}

// A target is a shipped algebra name or a path to an .ope file.
Loaded load_target(const std::string& target) {
    std::string text;
    if (auto t = shipped_text(target)) {
        text = *t;
    } else if (std::filesystem::exists(target)) {
        std::ifstream in(target);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        std::string names;
        for (const auto& [n, t] : shipped::all) names += std::string(n) + " ";
        throw Error(Errc::InvalidPresentation,
                    "no file or shipped algebra named '" + target + "' (shipped: " + names + ")");
    }
    LoadResult lr = load_presentation(text);
    if (!lr.presentation) {
        std::string msg = "failed to load '" + target + "'";
        for (const auto& d : lr.diagnostics) msg += "\n  " + d.to_string();
        throw Error(Errc::InvalidPresentation, msg);
    }
    return {*lr.presentation, lr.diagnostics};
}

ordered_json diagnostics_json(const std::vector<Diagnostic>& ds) {
    ordered_json arr = ordered_json::array();
    for (const auto& d : ds) {
        arr.push_back({{"severity", d.severity == Diagnostic::Severity::Error ? "error" : "warning"},
                       {"line", d.line},
                       {"col", d.col},
                       {"message", d.message},
                       {"source_discrepancy", d.source_discrepancy}});
    }
    return arr;
}

void print_diagnostics(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds) std::cerr << d.to_string() << "\n";
}

ordered_json envelope(const std::string& algebra, const std::string& verb, ordered_json inputs,
                      ordered_json result, const std::vector<Diagnostic>& ds) {
    return ordered_json{{"algebra", algebra}, {"verb", verb},       {"inputs", std::move(inputs)},
                        {"result", std::move(result)},              {"diagnostics", diagnostics_json(ds)},
                        {"version", kSchemaVersion}};
}

Rat parse_level(const std::string& s) {
    std::string v = s;
    if (v.rfind("k=", 0) == 0) v = v.substr(2);
    return rat_from_string(v);
}

ordered_json levelset_json(const LevelSet& ls) {
    ordered_json levels = ordered_json::array();
    for (const Rat& r : ls.levels) levels.push_back(to_string(r));
    ordered_json excluded = ordered_json::array();
    for (const Rat& r : ls.excluded) excluded.push_back(to_string(r));
    return ordered_json{
        {"levels", levels}, {"residual", ls.residual.to_string()}, {"excluded", excluded}};
}

std::string levelset_text(const LevelSet& ls) {
    std::string s = "levels: {";
    bool first = true;
    for (const Rat& r : ls.levels) {
        s += (first ? "" : ", ") + to_string(r);
        first = false;
    }
    s += "}\nresidual: " + ls.residual.to_string() + "\nexcluded: {";
    first = true;
    for (const Rat& r : ls.excluded) {
        s += (first ? "" : ", ") + to_string(r);
        first = false;
    }
    return s + "}";
}

ordered_json report_json(const CheckReport& r) {
    ordered_json ces = ordered_json::array();
    for (const auto& ce : r.counterexamples) {
        ordered_json c{{"generators", ce.generators},
                       {"lambda_power", ce.lambda_power},
                       {"monomial", ce.monomial},
                       {"coefficient", ce.coefficient}};
        if (ce.mu_power) c["mu_power"] = *ce.mu_power;
        ces.push_back(std::move(c));
    }
    return ordered_json{
        {"check", check_name(r.check)}, {"status", r.pass ? "pass" : "fail"}, {"counterexamples", ces}};
}

void print_report(const CheckReport& r) {
    std::cout << check_name(r.check) << ": " << (r.pass ? "pass" : "fail") << "\n";
    size_t shown = 0;
    for (const auto& ce : r.counterexamples) {
        if (++shown > 20) {
            std::cout << "  ... (" << r.counterexamples.size() - 20 << " more)\n";
            break;
        }
        std::cout << "  " << ce.to_string() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lambda-bracket calculus for vertex algebras presented by OPE tables"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "emit one JSON object instead of text");

    std::string target, gen_a, gen_b, at_str, seeds_str, mode = "trivial", cutoff_str;
    std::vector<std::string> triple_strs;
    std::optional<long> pole;

    auto* verify = app.add_subcommand("verify", "validate + skew + jacobi + conformal + charge");
    verify->add_option("target", target)->required();
    verify->add_option("--triple", triple_strs,
                       "restrict the jacobi scope to these comma-separated triples");

    auto* charge = app.add_subcommand("charge", "derived central charge and its rational roots");
    charge->add_option("target", target)->required();

    auto* collapse = app.add_subcommand("collapse", "solve for collapsing levels");
    collapse->add_option("target", target)->required();
    collapse->add_option("--mode", mode, "trivial|virasoro")->required();

    auto* bracket = app.add_subcommand("bracket", "lambda-bracket of two generators");
    bracket->add_option("target", target)->required();
    bracket->add_option("a", gen_a)->required();
    bracket->add_option("b", gen_b)->required();
    bracket->add_option("--at", at_str, "specialize at a level, e.g. k=-1");
    bracket->add_option("--pole", pole, "print only this pole coefficient");

    auto* survivors = app.add_subcommand("survivors", "per-generator ideal-membership evidence");
    survivors->add_option("target", target)->required();
    survivors->add_option("--at", at_str, "level, e.g. k=-2")->required();

    auto* ideal = app.add_subcommand("ideal", "bounded-weight ideal closure evidence");
    ideal->add_option("target", target)->required();
    ideal->add_option("--at", at_str, "level, e.g. k=-1")->required();
    ideal->add_option("--seeds", seeds_str, "comma-separated generator names")->required();
    ideal->add_option("--cutoff", cutoff_str, "maximal conformal weight explored");

    auto* fmt = app.add_subcommand("fmt", "canonical re-serialization to stdout");
    fmt->add_option("target", target)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Loaded ld = load_target(target);
        const AlgebraPresentation& p = ld.presentation;
        if (!json) print_diagnostics(ld.diagnostics);

        if (verify->parsed()) {
            std::vector<CheckReport> reports;
            reports.push_back(check_skew(p));
            std::optional<std::vector<std::array<int, 3>>> scope;
            if (!triple_strs.empty()) {
                scope.emplace();
                for (const auto& ts : triple_strs) {
                    std::stringstream ss(ts);
                    std::string x;
                    std::array<int, 3> tri{};
                    for (int i = 0; i < 3; ++i) {
                        if (!std::getline(ss, x, ','))
                            throw Error(Errc::InvalidPresentation, "bad --triple '" + ts + "'");
                        tri[i] = p.index_of(x);
                    }
                    scope->push_back(tri);
                }
            }
            reports.push_back(check_jacobi(p, scope));
            reports.push_back(check_conformal(p));
            CheckReport charge_rep{p.name, CheckKind::Charge, true, {}};
            try {
                central_charge(p);
            } catch (const Error& e) {
                charge_rep.pass = false;
                CounterExample ce;
                ce.generators = {p.generators[p.conformal_index()].name};
                ce.monomial = "1";
                ce.coefficient = e.what();
                charge_rep.counterexamples.push_back(ce);
            }
            reports.push_back(charge_rep);
            bool all = true;
            for (const auto& r : reports) all = all && r.pass;
            if (json) {
                ordered_json checks = ordered_json::array();
                for (const auto& r : reports) checks.push_back(report_json(r));
                ordered_json result{{"status", all ? "pass" : "fail"}, {"checks", checks}};
                std::cout << envelope(p.name, "verify", ordered_json::object(), result,
                                      ld.diagnostics)
                                 .dump(2)
                          << "\n";
            } else {
                for (const auto& r : reports) print_report(r);
                std::cout << (all ? "all checks passed" : "CHECKS FAILED") << "\n";
            }
            return all ? 0 : 1;
        }

        if (charge->parsed()) {
            RatFunc c = central_charge(p);
            RootSet rs = rational_roots(c.num());
            if (json) {
                ordered_json roots = ordered_json::array();
                for (const auto& [r, m] : rs.roots) roots.push_back(to_string(r));
                ordered_json result{{"central_charge", c.to_string()},
                                    {"roots", roots},
                                    {"residual", rs.residual.to_string()}};
                std::cout << envelope(p.name, "charge", ordered_json::object(), result,
                                      ld.diagnostics)
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "c_k = " << c.to_string() << "\n";
                std::cout << "rational roots:";
                for (const auto& [r, m] : rs.roots) std::cout << " " << to_string(r);
                std::cout << "\nresidual: " << rs.residual.to_string() << "\n";
            }
            return 0;
        }

        if (collapse->parsed()) {
            if (mode != "trivial" && mode != "virasoro")
                throw Error(Errc::InvalidPresentation, "--mode must be trivial or virasoro");
            LevelSet ls = mode == "trivial" ? trivial_levels(p) : virasoro_levels(p);
            if (json) {
                std::cout << envelope(p.name, "collapse", ordered_json{{"mode", mode}},
                                      levelset_json(ls), ld.diagnostics)
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << levelset_text(ls) << "\n";
            }
            return 0;
        }

        if (bracket->parsed()) {
            AlgebraPresentation q = p;
            if (!at_str.empty()) q = specialize(p, parse_level(at_str));
            Calculus calc(q);
            LambdaPoly b = calc.bracket_gen(q.index_of(gen_a), q.index_of(gen_b));
            ordered_json inputs{{"a", gen_a}, {"b", gen_b}};
            if (!at_str.empty()) inputs["at"] = to_string(parse_level(at_str));
            if (pole) {
                inputs["pole"] = *pole;
                FieldExpr c = b.coeff(static_cast<int>(*pole - 1));
                if (json) {
                    std::cout << envelope(p.name, "bracket", inputs,
                                          ordered_json{{"coefficient", render(c, q)}},
                                          ld.diagnostics)
                                     .dump(2)
                              << "\n";
                } else {
                    std::cout << render(c, q) << "\n";
                }
            } else {
                if (json) {
                    ordered_json poles = ordered_json::object();
                    for (auto it = b.coeffs().rbegin(); it != b.coeffs().rend(); ++it)
                        poles[std::to_string(it->first + 1)] = render(it->second, q);
                    std::cout << envelope(p.name, "bracket", inputs,
                                          ordered_json{{"poles", poles}}, ld.diagnostics)
                                     .dump(2)
                              << "\n";
                } else {
                    std::cout << render(b, q) << "\n";
                }
            }
            return 0;
        }

        if (survivors->parsed()) {
            Rat k0 = parse_level(at_str);
            std::vector<Verdict> v = generator_survivors(p, k0);
            if (json) {
                ordered_json verdicts = ordered_json::object();
                for (int i = 0; i < p.num_generators(); ++i)
                    verdicts[p.generators[i].name] = verdict_name(v[i]);
                std::cout << envelope(p.name, "survivors", ordered_json{{"at", to_string(k0)}},
                                      ordered_json{{"verdicts", verdicts}}, ld.diagnostics)
                                 .dump(2)
                          << "\n";
            } else {
                for (int i = 0; i < p.num_generators(); ++i)
                    std::cout << p.generators[i].name << ": " << verdict_name(v[i]) << "\n";
            }
            return 0;
        }

        if (ideal->parsed()) {
            Rat k0 = parse_level(at_str);
            Rat cut = cutoff_str.empty() ? Rat(2) + Rat(2) * p.max_weight()
                                         : rat_from_string(cutoff_str);
            std::vector<std::string> seeds;
            std::stringstream ss(seeds_str);
            std::string s;
            while (std::getline(ss, s, ',')) seeds.push_back(s);
            IdealEvidence ev = ideal_closure(p, k0, seeds, cut);
            const char* note =
                "bounded-weight evidence only: properness at this cutoff is necessary, "
                "not sufficient, for a proper ideal";
            if (json) {
                ordered_json rel = ordered_json::array();
                for (const auto& r : ev.relations) rel.push_back(render(r, p));
                ordered_json result{{"level", to_string(ev.level)},
                                    {"seeds", ev.seeds},
                                    {"cutoff", to_string(ev.cutoff)},
                                    {"proper", ev.proper},
                                    {"relations", rel},
                                    {"note", note}};
                std::cout << envelope(p.name, "ideal", ordered_json{{"at", to_string(k0)}},
                                      result, ld.diagnostics)
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "proper: " << (ev.proper ? "true" : "false") << " (cutoff "
                          << to_string(ev.cutoff) << ")\n";
                for (const auto& r : ev.relations)
                    std::cout << "relation: " << render(r, p) << "\n";
                std::cout << "note: " << note << "\n";
            }
            return 0;
        }

        if (fmt->parsed()) {
            std::string text = serialize(p);
            if (json) {
                std::cout << envelope(p.name, "fmt", ordered_json::object(),
                                      ordered_json{{"text", text}}, ld.diagnostics)
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << text;
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
