// perfval: exact computations in model perfectoid valuation rings.
//
// Exit codes: 0 all verdicts pass, 1 a mathematical verdict failed,
// 2 input error, 3 precision exhausted.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "perfval/almost.hpp"
#include "perfval/length.hpp"
#include "perfval/purity.hpp"
#include "perfval/rng.hpp"
#include "perfval/tilt.hpp"

using json = nlohmann::ordered_json;
using namespace perfval;

namespace {

struct Options {
    std::string format = "text";
    std::uint64_t seed = kDefaultSeed;
    bool seed_given = false;
};

std::uint64_t resolve_seed(const Options& o) {
    if (o.seed_given) return o.seed;
    if (const char* env = std::getenv("PERFVAL_SEED")) return std::strtoull(env, nullptr, 10);
    return kDefaultSeed;
}

mpq_class parse_rat(const std::string& s) {
    try {
        mpq_class q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InvalidInput("bad rational: " + s);
    }
}

RingDescriptor descriptor_from(const std::string& mode, long prime, const std::string& precision) {
    RingDescriptor d;
    if (mode == "char_p")
        d.mode = Mode::char_p;
    else if (mode == "mixed")
        d.mode = Mode::mixed;
    else
        throw InvalidInput("mode must be char_p or mixed");
    d.prime = prime;
    d.precision = Exponent(parse_rat(precision));
    d.validate();
    return d;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const std::exception& e) {
        throw InvalidInput("bad JSON in " + path + ": " + e.what());
    }
}

RingDescriptor descriptor_from_json(const json& j) {
    if (!j.contains("ring")) throw InvalidInput("missing \"ring\" object");
    const json& r = j.at("ring");
    return descriptor_from(r.at("mode").get<std::string>(), r.at("prime").get<long>(),
                           r.at("precision").get<std::string>());
}

PresentationMatrix matrix_from_json(const json& j) {
    RingDescriptor d = descriptor_from_json(j);
    if (!j.contains("matrix")) throw InvalidInput("missing \"matrix\" array");
    std::vector<std::vector<RingElement>> grid;
    for (const auto& row : j.at("matrix")) {
        std::vector<RingElement> r;
        for (const auto& cell : row) r.push_back(parse_element(cell.get<std::string>(), d));
        grid.push_back(std::move(r));
    }
    if (grid.empty()) throw InvalidInput("empty matrix");
    return PresentationMatrix(ElementMatrix(d, std::move(grid)));
}

CutModule cuts_from_json(const json& j) {
    RingDescriptor d = descriptor_from_json(j);
    std::vector<CutIdeal> cuts;
    for (const auto& c : j.at("cuts")) {
        Exponent r(parse_rat(c.at("r").get<std::string>()));
        std::string e = c.at("endpoint").get<std::string>();
        if (e != "open" && e != "closed") throw InvalidInput("endpoint must be open or closed");
        cuts.push_back(CutIdeal{r, e == "open"});
    }
    return CutModule(d, std::move(cuts));
}

ExtensionSpec extension_from_json(const json& j) {
    ExtensionSpec s;
    RingDescriptor d = descriptor_from_json(j);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "kummer")
        s.kind = ExtensionSpec::Kind::kummer;
    else if (kind == "artin_schreier")
        s.kind = ExtensionSpec::Kind::artin_schreier;
    else
        throw InvalidInput("kind must be kummer or artin_schreier");
    s.desc = d;
    Exponent shift(0);
    if (j.contains("laurent_shift"))
        shift = Exponent(parse_rat(j.at("laurent_shift").get<std::string>()));
    s.a = LaurentElement(parse_element(j.at("a").get<std::string>(), d), shift);
    s.degree = j.at("degree").get<unsigned>();
    if (j.contains("root_depth")) s.root_depth = j.at("root_depth").get<unsigned>();
    return s;
}

json report_json(const CheckReport& r) {
    return json{{"claim", r.claim},
                {"lhs", r.lhs},
                {"rhs", r.rhs},
                {"verdict", verdict_name(r.verdict)},
                {"witness", r.witness}};
}

json reports_block(const std::vector<CheckReport>& rs) {
    unsigned pass = 0, fail = 0;
    json arr = json::array();
    for (const auto& r : rs) {
        if (r.verdict == Verdict::fail)
            ++fail;
        else
            ++pass;
        arr.push_back(report_json(r));
    }
    return json{{"pass", pass}, {"fail", fail}, {"reports", arr}};
}

void emit(const Options& opt, const json& out, const std::string& text) {
    if (opt.format == "json")
        std::cout << out.dump(2) << '\n';
    else
        std::cout << text;
}

std::string reports_text(const std::vector<CheckReport>& rs) {
    std::string t;
    for (const auto& r : rs) {
        t += "[";
        t += verdict_name(r.verdict);
        t += "] ";
        t += r.claim + ": " + r.lhs + " vs " + r.rhs;
        if (!r.witness.empty()) t += "  (" + r.witness + ")";
        t += "\n";
    }
    return t;
}

int verdict_exit(const std::vector<CheckReport>& rs) { return all_passed(rs) ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic, normalized length, and tilting over model "
                 "perfectoid valuation rings"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    auto* seed_opt = app.add_option("--seed", opt.seed,
                                    "PRNG seed (default 1729; env PERFVAL_SEED overrides)");

    std::string mode = "char_p", precision = "4", expr, rhs, op = "canon";
    long prime = 2;

    auto* ring = app.add_subcommand("ring", "element arithmetic")->fallthrough();
    auto* eval = ring->add_subcommand("eval", "parse, canonicalize, apply one operation")->fallthrough();
    eval->add_option("--mode", mode, "char_p or mixed")->capture_default_str();
    eval->add_option("--prime", prime, "the prime p")->capture_default_str();
    eval->add_option("--precision", precision, "precision cap N (rational)")->capture_default_str();
    eval->add_option("--expr", expr, "element in the element grammar")->required();
    eval->add_option("--op", op, "canon|valuation|add|sub|mul|div|frobenius|pth_root|invert")
        ->capture_default_str();
    eval->add_option("--rhs", rhs, "right-hand operand for binary ops");

    std::string matrix_path, cuts_path;
    auto* length = app.add_subcommand("length", "normalized length")->fallthrough();
    auto* lfp = length->add_subcommand("fp", "length of a finitely presented torsion module")->fallthrough();
    lfp->add_option("--matrix", matrix_path, "presentation matrix JSON file")->required();
    auto* lcut = length->add_subcommand("cut", "length of a cut module")->fallthrough();
    lcut->add_option("--cuts", cuts_path, "cut module JSON file")->required();

    unsigned trials = 100, samples = 20;
    std::size_t rows = 3, cols = 4;
    std::string a_expr;
    auto* check = app.add_subcommand("check", "property checkers")->fallthrough();
    auto* pull = check->add_subcommand("pullback", "Frobenius pull-back formula on seeded corpora")->fallthrough();
    pull->add_option("--prime", prime, "the prime p")->capture_default_str();
    pull->add_option("--precision", precision, "precision cap")->capture_default_str();
    pull->add_option("--trials", trials, "number of seeded presentations")->capture_default_str();
    pull->add_option("--rows", rows, "generator count")->capture_default_str();
    pull->add_option("--cols", cols, "relation count")->capture_default_str();
    auto* addv = check->add_subcommand("additivity", "length additivity and subadditivity")->fallthrough();
    addv->add_option("--mode", mode)->capture_default_str();
    addv->add_option("--prime", prime)->capture_default_str();
    addv->add_option("--precision", precision)->capture_default_str();
    addv->add_option("--trials", trials)->capture_default_str();
    auto* flat = check->add_subcommand("flatness", "Frobenius flatness over the mixed model")->fallthrough();
    flat->add_option("--prime", prime)->capture_default_str();
    flat->add_option("--precision", precision)->capture_default_str();
    flat->add_option("--a", a_expr, "element a with 0 <= v(a) <= 1/p")->required();
    flat->add_option("--samples", samples)->capture_default_str();

    std::string components;
    int varpi_depth = 0, depth = 3;
    unsigned residue_samples = 0;
    auto* tiltc = app.add_subcommand("tilt", "finite-depth tilting")->fallthrough();
    tiltc->add_option("--prime", prime)->capture_default_str();
    tiltc->add_option("--precision", precision)->capture_default_str();
    tiltc->add_option("--components", components,
                      "semicolon-separated component list (depth inferred)");
    tiltc->add_option("--varpi-depth", varpi_depth, "build the tilted pseudo-uniformizer");
    tiltc->add_option("--residue-samples", residue_samples,
                      "run the residue isomorphism checks on seeded samples");
    tiltc->add_option("--depth", depth, "depth for seeded residue checks")->capture_default_str();

    std::string problem_path;
    unsigned lift_level = 0;
    auto* section = app.add_subcommand("section", "almost-splitting sections")->fallthrough();
    auto* solve = section->add_subcommand("solve", "minimal-defect section of a matrix map")->fallthrough();
    solve->add_option("--problem", problem_path,
                      "matrix JSON file, optionally with \"alpha\" and \"k\"")
        ->required();
    solve->add_option("--lift-level", lift_level, "also lift the section to this level");

    std::string extension_path, b_expr;
    unsigned max_depth = 3;
    auto* purity = app.add_subcommand("purity", "almost purity laboratory")->fallthrough();
    auto* ledger = purity->add_subcommand("ledger", "normalized-length ledger of the main chain")->fallthrough();
    ledger->add_option("--extension", extension_path, "extension JSON file")->required();
    ledger->add_option("--b", b_expr, "element b of positive valuation")->required();
    auto* tower = purity->add_subcommand("tower", "discriminant valuations along the root tower")->fallthrough();
    tower->add_option("--extension", extension_path, "extension JSON file")->required();
    tower->add_option("--max-depth", max_depth)->capture_default_str();
    auto* frobs = purity->add_subcommand("frobsurj", "Frobenius surjectivity witnesses")->fallthrough();
    frobs->add_option("--extension", extension_path, "extension JSON file")->required();
    frobs->add_option("--samples", samples)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }
    opt.seed_given = seed_opt->count() > 0;

    try {
        if (eval->parsed()) {
            RingDescriptor d = descriptor_from(mode, prime, precision);
            RingElement x = parse_element(expr, d);
            json out{{"command", "ring eval"},
                     {"input", expr},
                     {"canonical", x.str()},
                     {"exactness", x.flagged() ? "exact_below_precision" : "exact"}};
            ValResult v = x.valuation();
            out["valuation"] =
                v.is_exact() ? rat_string(v.value()) : ">=" + rat_string(v.bound());
            std::string text = "canonical: " + x.str() + "\nvaluation: " +
                               out["valuation"].get<std::string>() + "\n";
            if (op != "canon" && op != "valuation") {
                RingElement result = RingElement::zero(d);
                if (op == "frobenius")
                    result = frobenius(x);
                else if (op == "pth_root")
                    result = pth_root(x);
                else if (op == "invert")
                    result = invert_unit(x);
                else {
                    if (rhs.empty()) throw InvalidInput("--op " + op + " needs --rhs");
                    RingElement y = parse_element(rhs, d);
                    if (op == "add")
                        result = add(x, y);
                    else if (op == "sub")
                        result = sub(x, y);
                    else if (op == "mul")
                        result = mul(x, y);
                    else if (op == "div")
                        result = divide(x, y);
                    else
                        throw InvalidInput("unknown op: " + op);
                }
                out["op"] = op;
                out["result"] = result.str();
                out["result_exactness"] = result.flagged() ? "exact_below_precision" : "exact";
                text += op + ": " + result.str() + "\n";
            }
            emit(opt, out, text);
            return 0;
        }

        if (lfp->parsed()) {
            PresentationMatrix m = matrix_from_json(read_json_file(matrix_path));
            LengthValue lam = lambda_fp(m);
            emit(opt, json{{"command", "length fp"}, {"lambda", lam.str()}}, lam.str() + "\n");
            return 0;
        }

        if (lcut->parsed()) {
            CutModule m = cuts_from_json(read_json_file(cuts_path));
            LengthValue lam = lambda_cut(m);
            emit(opt, json{{"command", "length cut"}, {"lambda", lam.str()}}, lam.str() + "\n");
            return 0;
        }

        if (pull->parsed()) {
            RingDescriptor d = descriptor_from("char_p", prime, precision);
            ElementMatrix seedm(d, rows, cols);
            for (std::size_t i = 0; i < rows && i < cols; ++i)
                seedm.at(i, i) = RingElement::varpi(d);
            auto reports = pullback_check(PresentationMatrix(seedm), trials, resolve_seed(opt));
            json out{{"command", "check pullback"},
                     {"prime", prime},
                     {"trials", trials},
                     {"seed", resolve_seed(opt)},
                     {"results", reports_block(reports)}};
            emit(opt, out, reports_text(reports));
            return verdict_exit(reports);
        }

        if (addv->parsed()) {
            RingDescriptor d = descriptor_from(mode, prime, precision);
            SplitMix64 rng(resolve_seed(opt));
            CorpusParams par;
            std::vector<CheckReport> reports;
            unsigned done = 0;
            while (done < trials) {
                RingElement a = random_element(rng, d, par, false);
                RingElement b = random_element(rng, d, par, false);
                if (!(a.valuation().value() + b.valuation().value() < d.precision)) continue;
                ExactTriple t = quotient_ses(a, b);
                reports.push_back(additivity_check(t));
                RingElement c = random_element(rng, d, par, false);
                RingElement e = random_element(rng, d, par, false);
                reports.push_back(subadditivity_check(t, c, e));
                ++done;
            }
            auto zl = zero_length_check(CutModule::residue_field(d));
            reports.insert(reports.end(), zl.begin(), zl.end());
            json out{{"command", "check additivity"},
                     {"trials", trials},
                     {"seed", resolve_seed(opt)},
                     {"results", reports_block(reports)}};
            emit(opt, out, reports_text(reports));
            return verdict_exit(reports);
        }

        if (flat->parsed()) {
            RingDescriptor d = descriptor_from("mixed", prime, precision);
            RingElement a = parse_element(a_expr, d);
            auto reports = flatness_check(a, samples, resolve_seed(opt));
            json out{{"command", "check flatness"},
                     {"a", a.str()},
                     {"results", reports_block(reports)}};
            emit(opt, out, reports_text(reports));
            return verdict_exit(reports);
        }

        if (tiltc->parsed()) {
            RingDescriptor d = descriptor_from("mixed", prime, precision);
            json out{{"command", "tilt"}};
            std::string text;
            std::vector<CheckReport> reports;
            if (!components.empty()) {
                std::vector<RingElement> comps;
                std::size_t start = 0;
                while (start <= components.size()) {
                    std::size_t semi = components.find(';', start);
                    std::string piece = components.substr(
                        start, semi == std::string::npos ? std::string::npos : semi - start);
                    if (!piece.empty()) comps.push_back(parse_element(piece, d));
                    if (semi == std::string::npos) break;
                    start = semi + 1;
                }
                TiltElement t = make_tilt(comps);
                out["depth"] = t.depth();
                json carr = json::array();
                for (const auto& c : t.components()) carr.push_back(c.str());
                out["components"] = carr;
                ValResult v = val_flat(t);
                out["val_flat"] = v.is_exact() ? rat_string(v.value()) : "below_precision";
                out["sharp"] = sharp(t).str();
                text += "depth: " + std::to_string(t.depth()) +
                        "\nval_flat: " + out["val_flat"].get<std::string>() +
                        "\nsharp: " + sharp(t).str() + "\n";
            } else if (varpi_depth > 0) {
                TiltElement w = varpi_flat(d, varpi_depth);
                json carr = json::array();
                for (const auto& c : w.components()) carr.push_back(c.str());
                out["varpi_flat"] = carr;
                ValResult v = val_flat(w);
                out["val_flat"] = v.is_exact() ? rat_string(v.value()) : "below_precision";
                out["sharp"] = sharp(w).str();
                text += "varpi_flat depth " + std::to_string(varpi_depth) +
                        "\nval_flat: " + out["val_flat"].get<std::string>() +
                        "\nsharp: " + sharp(w).str() + "\n";
            } else if (residue_samples == 0) {
                throw InvalidInput("tilt needs --components, --varpi-depth, or --residue-samples");
            }
            if (residue_samples > 0) {
                reports = residue_iso_check(d, depth, residue_samples, resolve_seed(opt));
                out["residue"] = reports_block(reports);
                text += reports_text(reports);
            }
            emit(opt, out, text);
            return verdict_exit(reports);
        }

        if (solve->parsed()) {
            json j = read_json_file(problem_path);
            PresentationMatrix m = matrix_from_json(j);
            SectionProblem prob{m.matrix(), std::nullopt, 1};
            if (j.contains("alpha"))
                prob.alpha = Exponent(parse_rat(j.at("alpha").get<std::string>()));
            if (j.contains("k")) prob.k = j.at("k").get<unsigned>();
            SectionSolution sol = section_solve(prob);
            json gmat = json::array();
            for (std::size_t i = 0; i < sol.g.rows(); ++i) {
                json row = json::array();
                for (std::size_t jj = 0; jj < sol.g.cols(); ++jj)
                    row.push_back(sol.g.at(i, jj).str());
                gmat.push_back(row);
            }
            std::vector<CheckReport> reports = sol.reports;
            json out{{"command", "section solve"},
                     {"delta_min", rat_string(sol.delta_min)},
                     {"alpha", rat_string(sol.alpha)},
                     {"k", prob.k},
                     {"g", gmat}};
            std::string text = "delta_min: " + rat_string(sol.delta_min) + "\n";
            if (lift_level >= 1) {
                SectionLiftState st = init_section_lift(prob);
                while (st.level < lift_level) st = lift_section_step(st, prob);
                bool ok = lift_composite_ok(st, prob);
                reports.push_back(make_report("lift composite = varpi^c id mod varpi^level",
                                              "level " + std::to_string(st.level),
                                              "c = " + rat_string(st.achieved_defect), ok));
                out["lift"] = json{{"level", st.level},
                                   {"achieved_defect", rat_string(st.achieved_defect)},
                                   {"guaranteed_bound", rat_string(st.guaranteed_bound)}};
                text += "lift level " + std::to_string(st.level) + ", defect " +
                        rat_string(st.achieved_defect) + " (bound " +
                        rat_string(st.guaranteed_bound) + ")\n";
            }
            out["results"] = reports_block(reports);
            text += reports_text(reports);
            emit(opt, out, text);
            return verdict_exit(reports);
        }

        if (ledger->parsed()) {
            ExtensionSpec spec = extension_from_json(read_json_file(extension_path));
            ExtensionOrder order = build_extension(spec);
            RingElement b = parse_element(b_expr, spec.desc);
            PurityLedger led = purity_ledger(order, b);
            json out{{"command", "purity ledger"},
                     {"b_valuation", rat_string(led.b_valuation)},
                     {"lambda_bB", led.lambda_bB.str()},
                     {"lambda_bpC", led.lambda_bpC.str()},
                     {"lambda_bpC_F", led.lambda_bpC_F.str()},
                     {"lambda_Nb", led.lambda_Nb.str()},
                     {"results", reports_block(led.chain_verdicts)}};
            emit(opt, out, led.human_table());
            return led.all_passed() ? 0 : 1;
        }

        if (tower->parsed()) {
            ExtensionSpec spec = extension_from_json(read_json_file(extension_path));
            auto discs = tower_discriminants(spec, max_depth);
            json arr = json::array();
            bool strict = true;
            for (std::size_t n = 0; n < discs.size(); ++n) {
                arr.push_back(rat_string(discs[n]));
                if (n + 1 < discs.size() && !(discs[n + 1] < discs[n])) strict = false;
            }
            json out{{"command", "purity tower"},
                     {"discriminant_valuations", arr},
                     {"strictly_decreasing", strict}};
            std::string text = "discriminant valuations:";
            for (const auto& v : discs) text += " " + rat_string(v);
            text += "\n";
            emit(opt, out, text);
            return 0;
        }

        if (frobs->parsed()) {
            ExtensionSpec spec = extension_from_json(read_json_file(extension_path));
            ExtensionOrder order = build_extension(spec);
            auto reports = frobenius_surjectivity_check(order, samples, resolve_seed(opt));
            json out{{"command", "purity frobsurj"},
                     {"samples", samples},
                     {"seed", resolve_seed(opt)},
                     {"results", reports_block(reports)}};
            emit(opt, out, reports_text(reports));
            return verdict_exit(reports);
        }

        throw InvalidInput("no subcommand action matched");
    } catch (const Error& e) {
        json out{{"error", e.what()}};
        std::cout << out.dump(2) << '\n';
        return e.category() == ErrorCategory::precision ? 3 : 2;
    } catch (const std::exception& e) {
        json out{{"error", e.what()}};
        std::cout << out.dump(2) << '\n';
        return 2;
    }
}
