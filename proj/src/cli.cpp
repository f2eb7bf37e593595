#include "tricone/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "tricone/angles.hpp"
#include "tricone/membrane.hpp"
#include "tricone/metric.hpp"
#include "tricone/monodromy.hpp"
#include "tricone/rational_maps.hpp"

namespace tricone {

namespace {

using nlohmann::json;

struct CliConfig {
    std::vector<std::string> theta;
    std::int64_t catalan_d = 0;
    double tol = 1e-4;
    std::int64_t seed = 0;
    std::string out_path;
    std::string format = "json";
    std::string command;
};

json rational_json(const Rational& r) { return r.str(); }

json triple_json(const AngleTriple& t) {
    return json::array({t[0].str(), t[1].str(), t[2].str()});
}

AngleTriple parse_triple(const std::vector<std::string>& s) {
    return AngleTriple(Rational::parse(s.at(0)), Rational::parse(s.at(1)),
                       Rational::parse(s.at(2)));
}

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Theorem1: return "Theorem1";
        case Rule::Theorem2: return "Theorem2";
        case Rule::AllInteger: return "AllInteger";
    }
    return "";
}

json witness_json(const ExistenceVerdict& v) {
    json w;
    if (const auto* t1 = std::get_if<Theorem1Witness>(&v.witness)) {
        w["canonical"] = json::array({t1->canonical[0].str(), t1->canonical[1].str(),
                                      t1->canonical[2].str()});
        w["canonical_sum"] = rational_json(t1->canonical_sum);
    } else if (const auto* t2 = std::get_if<Theorem2Witness>(&v.witness)) {
        w["n"] = t2->n;
        w["position"] = t2->position + 1;
        if (t2->m)
            w["m"] = *t2->m;
        else
            w["m"] = nullptr;
        w["branch"] = t2->branch == Theorem2Witness::Branch::Sum          ? "sum"
                      : t2->branch == Theorem2Witness::Branch::Difference ? "difference"
                                                                          : json(nullptr);
        if (!t2->note.empty()) w["note"] = t2->note;
    } else if (const auto* ai = std::get_if<AllIntegerWitness>(&v.witness)) {
        w["sum_odd"] = ai->sum_odd;
        w["triangle_inequality"] = ai->triangle_inequality;
        if (v.exists) w["degree"] = ai->degree;
    }
    return w;
}

json verdict_json(const std::string& command, const AngleTriple& t,
                  const ExistenceVerdict& v, json diagnostics = json::object()) {
    json doc;
    doc["input"] = {{"command", command}, {"theta", triple_json(t)}};
    doc["rule"] = rule_name(v.rule);
    doc["exists"] = v.exists;
    doc["unique"] = v.unique;
    doc["witness"] = witness_json(v);
    doc["diagnostics"] = std::move(diagnostics);
    return doc;
}

json matrix_json(const Mat2& m) {
    auto c = [](cplx v) { return json::array({v.real(), v.imag()}); };
    return json::array({json::array({c(m.a), c(m.b)}), json::array({c(m.c), c(m.d)})});
}

std::string verdict_text(const json& doc) {
    std::string s;
    if (doc.contains("exists") && !doc["exists"].is_null())
        s += std::string(doc["exists"].get<bool>() ? "exists" : "does not exist") +
             " (rule " + doc["rule"].get<std::string>() + ")\n";
    s += doc.dump(2) + "\n";
    return s;
}

void emit(const CliConfig& cfg, const std::string& text, std::ostream& out) {
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        if (!f) throw std::runtime_error("cannot open output file " + cfg.out_path);
        f << text;
    } else {
        out << text;
    }
}

void emit_doc(const CliConfig& cfg, const json& doc, std::ostream& out) {
    if (cfg.format == "text")
        emit(cfg, verdict_text(doc), out);
    else
        emit(cfg, doc.dump(2) + "\n", out);
}

int cmd_decide(const CliConfig& cfg, std::ostream& out) {
    AngleTriple t = parse_triple(cfg.theta);
    ExistenceVerdict v = decide(t);
    json diag;
    diag["integer_count"] = classify(t).integer_count;
    emit_doc(cfg, verdict_json("decide", t, v, diag), out);
    return 0;
}

int cmd_canonicalize(const CliConfig& cfg, std::ostream& out) {
    AngleTriple t = parse_triple(cfg.theta);
    CanonicalTriple c = canonicalize(t);
    json doc;
    doc["input"] = {{"command", "canonicalize"}, {"theta", triple_json(t)}};
    doc["rule"] = nullptr;
    doc["exists"] = nullptr;
    doc["unique"] = nullptr;
    doc["witness"] = {{"canonical", json::array({c[0].str(), c[1].str(), c[2].str()})},
                      {"canonical_sum", c.sum().str()}};
    doc["diagnostics"] = json::object();
    emit_doc(cfg, doc, out);
    return 0;
}

int cmd_monodromy(const CliConfig& cfg, std::ostream& out) {
    AngleTriple t = parse_triple(cfg.theta);
    MonodromyRep rep = monodromy_rep(t);
    json diag;
    diag["loop_relation_residual"] =
        dist(rep.minf * rep.m1 * rep.m0, Mat2::identity());
    auto gen = [&](const char* name, const Mat2& m, const Rational& th) {
        GeneratorClass g = classify_generator(m);
        json j;
        j["abs_trace"] = std::abs(unit_det(m).trace());
        j["expected_abs_trace"] = std::abs(2.0 * std::cos(M_PI * th.to_double()));
        j["class"] = g.kind == GeneratorKind::Identity    ? "identity"
                     : g.kind == GeneratorKind::Parabolic ? "parabolic"
                     : g.kind == GeneratorKind::Elliptic  ? "elliptic"
                                                          : "loxodromic";
        if (g.kind == GeneratorKind::Elliptic) j["rotation"] = g.rotation;
        diag[name] = j;
    };
    gen("m0", rep.m0, t[0]);
    gen("m1", rep.m1, t[1]);
    gen("minf", rep.minf, t[2]);

    json doc;
    doc["input"] = {{"command", "monodromy"}, {"theta", triple_json(t)}};
    doc["rule"] = nullptr;
    doc["unique"] = nullptr;
    try {
        UnitarizabilityResult u = is_unitarizable(rep);
        doc["exists"] = u.unitarizable;
        doc["witness"] = {{"hermitian_form", matrix_json(u.witness)},
                          {"residual", u.residual},
                          {"eigenvalue_ratio", u.eig_ratio}};
    } catch (const Indeterminate& e) {
        doc["exists"] = nullptr;
        doc["witness"] = {{"indeterminate", true}, {"reason", e.what()}};
    }
    doc["diagnostics"] = diag;
    emit_doc(cfg, doc, out);
    return 0;
}

int cmd_area(const CliConfig& cfg, std::ostream& out) {
    AngleTriple t = parse_triple(cfg.theta);
    ExistenceVerdict v = decide(t);
    json doc = verdict_json("area", t, v);
    if (!v.exists) {
        doc["witness"] = {{"note", "no metric; area undefined"}};
        emit_doc(cfg, doc, out);
        return 0;
    }
    DevelopingContext ctx = make_developing_context(t);
    double area = total_area(ctx, cfg.tol);
    double expected = 2.0 * M_PI * ((t[0] + t[1] + t[2]).to_double() - 1.0);
    doc["witness"] = {{"area", area},
                      {"gauss_bonnet", expected},
                      {"rel_error", std::abs(area - expected) / expected},
                      {"tolerance", cfg.tol}};
    emit_doc(cfg, doc, out);
    return 0;
}

int cmd_cone_check(const CliConfig& cfg, std::ostream& out) {
    AngleTriple t = parse_triple(cfg.theta);
    DevelopingContext ctx = make_developing_context(t);
    json cones = json::array();
    for (int j = 0; j < 3; ++j) {
        double slope = cone_exponent(ctx, j);
        double expect = t[j].to_double() - 1.0;
        cones.push_back({{"cone", j + 1},
                         {"slope", slope},
                         {"expected", expect},
                         {"abs_error", std::abs(slope - expect)}});
    }
    json doc;
    doc["input"] = {{"command", "cone-check"}, {"theta", triple_json(t)}};
    doc["rule"] = nullptr;
    doc["exists"] = nullptr;
    doc["unique"] = nullptr;
    doc["witness"] = {{"cones", cones}};
    doc["diagnostics"] = {{"unitarizable_frame", ctx.unitarizable}};
    emit_doc(cfg, doc, out);
    return 0;
}

int cmd_rational(const CliConfig& cfg, std::ostream& out) {
    AngleTriple t = parse_triple(cfg.theta);
    ExistenceVerdict v = decide(t);
    json doc = verdict_json("rational", t, v, {{"seed", cfg.seed}});
    try {
        RationalMap f = construct(t);
        json num = json::array(), den = json::array();
        for (cplx c : f.num) num.push_back(c.real());
        for (cplx c : f.den) den.push_back(c.real());
        doc["witness"] = {{"degree", f.degree},
                          {"numerator", num},
                          {"denominator", den},
                          {"verified", verify(f, t)}};
    } catch (const NotAdmissible& e) {
        doc["witness"] = {{"not_admissible", e.what()}};
    }
    emit_doc(cfg, doc, out);
    return 0;
}

int cmd_catalan(const CliConfig& cfg, std::ostream& out) {
    std::int64_t u = catalan_count(cfg.catalan_d);
    if (cfg.format == "text") {
        emit(cfg, std::to_string(u) + "\n", out);
        return 0;
    }
    json doc;
    doc["input"] = {{"command", "catalan"}, {"d", cfg.catalan_d}};
    doc["rule"] = nullptr;
    doc["exists"] = nullptr;
    doc["unique"] = nullptr;
    doc["witness"] = {{"count", u}};
    doc["diagnostics"] = json::object();
    emit_doc(cfg, doc, out);
    return 0;
}

int cmd_membrane(const CliConfig& cfg, std::ostream& out) {
    AngleTriple t = parse_triple(cfg.theta);
    ExistenceVerdict v = membrane_exists(t);

    if (cfg.format == "svg") {
        CircularArcTriangle tri =
            triangle_with_angles({t[0].to_double(), t[1].to_double(), t[2].to_double()});
        emit(cfg, to_svg(tri), out);
        return 0;
    }

    json doc = verdict_json("membrane", t, v);
    json diag;
    try {
        CircularArcTriangle tri =
            triangle_with_angles({t[0].to_double(), t[1].to_double(), t[2].to_double()});
        json verts = json::array();
        for (cplx p : tri.vertex) verts.push_back(json::array({p.real(), p.imag()}));
        diag["triangle"] = {{"vertices", verts},
                            {"angle_sum_over_pi",
                             (tri.angle[0] + tri.angle[1] + tri.angle[2]) / M_PI}};
        diag["geodesizable"] = tri.angle[0] + tri.angle[1] + tri.angle[2] > M_PI;
    } catch (const NotConstructible& e) {
        diag["triangle"] = nullptr;
        diag["not_constructible"] = e.what();
    }
    doc["diagnostics"] = diag;
    emit_doc(cfg, doc, out);
    return 0;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"spherical metrics with three conic singularities"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand arguments

    CliConfig cfg;
    if (const char* env_tol = std::getenv("TRICONE_TOL")) cfg.tol = std::atof(env_tol);

    app.add_option("--tol", cfg.tol, "relative tolerance for numeric subcommands");
    app.add_option("--seed", cfg.seed, "seed for randomized solves (reserved)");
    app.add_option("--out", cfg.out_path, "write the document to this path");
    app.add_option("--format", cfg.format, "output format: json, text or svg")
        ->check(CLI::IsMember({"json", "text", "svg"}));

    auto add_triple = [&](CLI::App* sub) {
        sub->add_option("theta", cfg.theta, "three angles, rationals 'p/q' or decimals")
            ->expected(3)
            ->required();
    };

    add_triple(app.add_subcommand("decide", "existence of the cone metric"));
    add_triple(app.add_subcommand("canonicalize", "canonical equivalent triple"));
    add_triple(app.add_subcommand("monodromy", "numeric monodromy oracle"));
    add_triple(app.add_subcommand("area", "total area vs Gauss-Bonnet"));
    add_triple(app.add_subcommand("cone-check", "cone exponent fits"));
    add_triple(app.add_subcommand("rational", "rational developing map (integer angles)"));
    auto* cat = app.add_subcommand("catalan", "count of degree-d critical-point classes");
    cat->add_option("d", cfg.catalan_d, "degree")->required();
    add_triple(app.add_subcommand("membrane", "circular-arc triangle / SVG"));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
        if (cfg.command == "decide") return cmd_decide(cfg, out);
        if (cfg.command == "canonicalize") return cmd_canonicalize(cfg, out);
        if (cfg.command == "monodromy") return cmd_monodromy(cfg, out);
        if (cfg.command == "area") return cmd_area(cfg, out);
        if (cfg.command == "cone-check") return cmd_cone_check(cfg, out);
        if (cfg.command == "rational") return cmd_rational(cfg, out);
        if (cfg.command == "catalan") return cmd_catalan(cfg, out);
        if (cfg.command == "membrane") return cmd_membrane(cfg, out);
        err << "usage error: unknown subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace tricone
