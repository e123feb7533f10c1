// qkr: command-line front end.
//
//   qkr classify   --in rep.json            type sum, family, properness
//   qkr moment     --json '{"v":...}'       mu_v(g), regularity, energy
//   qkr zero-locus --sig 7,0 --n 100        sampled zero-locus points
//   qkr flow       --in start.json          gradient flow of the energy
//   qkr g2-check   --in g.json              G2(V) membership
//   qkr tables                              multiplication and type tables
//
// Exit codes: 0 ok, 1 input error, 2 ill-conditioned input, 3 flow did not converge.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>

#include "qkr/canonical.hpp"
#include "qkr/classify.hpp"
#include "qkr/family.hpp"
#include "qkr/g2.hpp"
#include "qkr/json_io.hpp"
#include "qkr/moment.hpp"
#include "qkr/properness.hpp"

using namespace qkr;

namespace {

struct RunConfig {
    std::string in, inline_json, out;
    std::string sig = "3,4";
    double tol = 0;  // 0: command default
    std::uint64_t seed = 1;
    int n = 100;
    double step = 0.1;
    bool trajectory = false;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json read_input(const RunConfig& cfg, bool required) {
    std::string text;
    if (!cfg.inline_json.empty()) {
        text = cfg.inline_json;
    } else if (cfg.in == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else if (!cfg.in.empty()) {
        std::ifstream f(cfg.in);
        if (!f) throw InputError("cannot open " + cfg.in);
        text.assign(std::istreambuf_iterator<char>(f), {});
    } else {
        if (required) throw InputError("no input (use --in FILE, --in - or --json TEXT)");
        return Json::object();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

// -0.0 prints as "-0.0"; normalize so equal runs compare equal as text
void drop_negative_zeros(Json& j) {
    if (j.is_number_float() && j.get<double>() == 0.0) j = 0.0;
    else if (j.is_structured())
        for (auto& v : j) drop_negative_zeros(v);
}

void write_output(const RunConfig& cfg, Json j) {
    drop_negative_zeros(j);
    const std::string s = j.dump(2) + "\n";
    if (cfg.out.empty() || cfg.out == "-") {
        std::cout << s;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw InputError("cannot write " + cfg.out);
    f << s;
}

MetricSignature sig_of(const RunConfig& cfg) { return MetricSignature::parse(cfg.sig); }

// A matrix given directly, or under one of the listed keys.
ParsedMatrix matrix_field(const Json& j, std::initializer_list<const char*> keys, MetricSignature sig) {
    if (j.is_array() || j.contains("rows")) return matrix_from_json(j, sig);
    for (const char* k : keys)
        if (j.contains(k)) return matrix_from_json(j.at(k), sig);
    std::string names;
    for (const char* k : keys) names += std::string(names.empty() ? "" : ", ") + "\"" + k + "\"";
    throw InputError("expected a matrix or one of " + names);
}

Json header(const char* command, const RunConfig& cfg, double tol) {
    return Json{{"command", command}, {"sig", cfg.sig}, {"tol", tol}, {"seed", cfg.seed}};
}

int cmd_classify(const RunConfig& cfg) {
    const double tol = cfg.tol > 0 ? cfg.tol : kClassifyTol;
    const Json in = read_input(cfg, true);
    std::optional<FamilyLabel> given;
    SkewAdjointMatrix A;
    std::optional<RMat> exact;
    if (in.is_object() && in.contains("family")) {
        given = family_from_json(in);
        A = canonical_representative(*given);
    } else if (in.is_string() || (in.is_object() && in.contains("types"))) {
        A = canonical_representative(type_sum_from_json(in.is_string() ? in : in.at("types")));
    } else {
        const ParsedMatrix pm = matrix_field(in, {"canonical_representative", "matrix", "v"}, sig_of(cfg));
        A = SkewAdjointMatrix(pm.m, pm.sig);
        exact = pm.exact;
    }
    if (A.a.cwiseAbs().maxCoeff() == 0.0) throw InputError("zero matrix: the torus generator v must be nonzero");

    Json out = header("classify", cfg, tol);
    out["sig"] = A.sig.name();
    ClassifyReport rep;
    if (exact) {
        auto r = classify_exact(*exact, A.sig);
        rep = r ? *r : classify_report(A, tol);
    } else {
        rep = classify_report(A, tol);
    }
    out["exact"] = rep.exact;
    out["type_sum"] = rep.types.str();
    out["summands"] = type_sum_to_json(rep.types);
    out["height"] = rep.types.height();
    out["spectral_gap"] = rep.gap;

    if (A.sig.epsilon > 0) {
        const auto r = classify_compact(A);
        out["rates"] = Json::array({r[0], r[1], r[2]});
        out["family"] = nullptr;
    } else {
        FamilyLabel fl = family_label(rep.types);
        // Exact parameters supplied with the label decide properness exactly.
        if (given && given->name == fl.name && given->exact_params && !fl.exact_params) {
            // pair each classified value with the nearest unused given one
            std::vector<ExactReal> pool = *given->exact_params, ex;
            for (double p : fl.params) {
                size_t best = 0;
                for (size_t i = 1; i < pool.size(); ++i)
                    if (std::abs(pool[i].to_double() - p) < std::abs(pool[best].to_double() - p)) best = i;
                ex.push_back(pool[best]);
                pool.erase(pool.begin() + best);
            }
            fl.exact_params = ex;
        }
        const Json fj = family_to_json(fl);
        for (const auto& [k, v] : fj.items()) out[k] = v;
        const ProperReport pr = is_proper_free(fl);
        out["properness_verdict"] = to_string(pr.verdict);
        out["properness"] = proper_to_json(pr);
    }
    out["canonical_representative"] = matrix_to_json(canonical_representative(rep.types).a, A.sig);
    write_output(cfg, out);
    return 0;
}

GroupElement group_field(const Json& in, const char* key, MetricSignature sig) {
    if (!in.contains(key)) return GroupElement::identity(sig);
    const ParsedMatrix pm = matrix_from_json(in.at(key), sig);
    const GroupElement g(pm.m, pm.sig);
    if (g.residual() > 1e-8 * std::max(1.0, pm.m.squaredNorm()))
        throw InputError(std::string("\"") + key + "\" is not in the group, residual " + std::to_string(g.residual()));
    return g;
}

Json vec3(const Sp1Vector& v) { return Json::array({v(0), v(1), v(2)}); }

int cmd_moment(const RunConfig& cfg) {
    const double tol = cfg.tol > 0 ? cfg.tol : kZeroLocusTol;
    const Json in = read_input(cfg, true);
    Json out = header("moment", cfg, tol);
    SkewAdjointMatrix v;
    if (in.contains("omega")) {
        const ParsedMatrix om = matrix_from_json(in.at("omega"), sig_of(cfg));
        v = two_form_to_matrix(om.m, om.sig);
    } else {
        const ParsedMatrix pm = matrix_field(in, {"v"}, sig_of(cfg));
        v = SkewAdjointMatrix(pm.m, pm.sig);
    }
    MomentAction act(v);
    const GroupElement g = group_field(in, "g", v.sig);
    out["sig"] = v.sig.name();
    const Sp1Vector mu = moment(act.v, g);
    out["moment"] = vec3(mu);
    out["norm"] = mu.norm();
    out["in_zero_locus"] = mu.norm() <= tol;
    if (in.contains("omega")) out["moment_explicit"] = vec3(moment_explicit(matrix_to_two_form(v), g));
    out["m_norm"] = m_component_norm(act.v, g);
    out["regularity"] = to_string(classify_regularity(act.v, g, tol));
    out["differential_rank"] = moment_differential_rank(act.v, g, tol);
    out["energy"] = energy(act.v, g);
    write_output(cfg, out);
    return 0;
}

int cmd_zero_locus(const RunConfig& cfg) {
    const double tol = cfg.tol > 0 ? cfg.tol : kZeroLocusTol;
    const Json in = read_input(cfg, false);
    const MetricSignature sig = sig_of(cfg);
    SevenVector<double> x = SevenVector<double>::basis(sig.tag(), 1);
    if (in.contains("x")) {
        const auto c = in.at("x").get<std::vector<double>>();
        if (c.size() != 7) throw InputError("\"x\" needs 7 coordinates");
        for (int i = 0; i < 7; ++i) x[i] = c[i];
    }
    const std::vector<ZeroLocusPoint> pts = sample_zero_locus_canonical(x, cfg.n, cfg.seed, tol);
    Json out = header("zero-locus", cfg, tol);
    out["x"] = x.c;
    out["x_norm"] = norm(x);
    out["n"] = cfg.n;
    double worst = 0;
    Json arr = Json::array();
    for (const auto& p : pts) {
        worst = std::max(worst, p.residual);
        arr.push_back(Json{{"residual", p.residual},
                           {"regularity", to_string(p.regularity)},
                           {"g", matrix_to_json(p.g.g, sig)}});
    }
    out["max_residual"] = worst;
    // Containment only; equality with the product set is not claimed for lightlike x.
    out["within_tol"] = worst <= tol;
    out["points"] = arr;
    write_output(cfg, out);
    return 0;
}

int cmd_flow(const RunConfig& cfg) {
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-8;
    const Json in = read_input(cfg, true);
    const ParsedMatrix pm = matrix_field(in, {"v"}, sig_of(cfg));
    MomentAction act(SkewAdjointMatrix(pm.m, pm.sig));
    GroupElement g0;
    if (in.contains("g0")) {
        g0 = group_field(in, "g0", pm.sig);
    } else {
        std::mt19937_64 rng(cfg.seed);
        g0 = random_group(pm.sig, rng, 1.0);
    }
    FlowOptions opt;
    opt.step = cfg.step;
    opt.max_steps = cfg.n;
    opt.tol = tol;
    opt.record_all = cfg.trajectory;
    const FlowResult r = flow(act.v, g0, opt);
    Json out = header("flow", cfg, tol);
    out["sig"] = pm.sig.name();
    out["step"] = opt.step;
    out["max_steps"] = opt.max_steps;
    const Json fj = flow_to_json(r, cfg.trajectory);
    for (const auto& [k, v] : fj.items()) out[k] = v;
    write_output(cfg, out);
    return r.status == FlowStatus::converged ? 0 : 3;
}

int cmd_g2(const RunConfig& cfg) {
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
    const Json in = read_input(cfg, false);
    const MetricSignature sig = sig_of(cfg);
    Mat7 m = Mat7::Identity();
    MetricSignature msig = sig;
    if (!in.empty()) {
        const ParsedMatrix pm = matrix_field(in, {"g", "matrix"}, sig);
        m = pm.m;
        msig = pm.sig;
    }
    const G2GroupReport gr = is_g2_group_element(m, msig.tag(), tol);
    Json out = header("g2-check", cfg, tol);
    out["sig"] = msig.name();
    out["group_member"] = gr.member;
    out["product_residual"] = gr.product_residual;
    out["orthogonality_residual"] = gr.orthogonality_residual;
    if (!gr.detail.empty()) out["detail"] = gr.detail;
    const SkewAdjointMatrix X(m, msig);
    if (X.residual() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        const auto res = g2_equation_residuals(m, msig);
        double worst = 0;
        for (double r : res) worst = std::max(worst, std::abs(r));
        out["algebra_member"] = is_g2_algebra_element(X, tol);
        out["algebra_residual"] = worst;
    } else {
        out["algebra_member"] = false;
    }
    write_output(cfg, out);
    return 0;
}

Json type_table() {
    Json rows = Json::array();
    auto add = [&](const IndecomposableType& t, const char* param) {
        const auto [p, q] = t.signature();
        rows.push_back(Json{{"kind", t.key()},
                            {"class", kind_name(t.kind)},
                            {"height", t.height},
                            {"parameter", param},
                            {"dimension", t.dimension()},
                            {"signature", Json::array({p, q})}});
    };
    for (int k = 0; k <= 6; k += 2)
        for (int s : {1, -1}) add(make_zero(k, s), "0");
    for (int k = 0; 2 * (k + 1) <= 7; ++k) add(make_real(k, 1.0), k % 2 ? "a >= 0" : "a > 0");
    for (int k = 0; 2 * (k + 1) <= 7; ++k)
        for (int s : {1, -1}) add(make_imag(k, s, 1.0), "bi, b > 0");
    add(make_quad(0, 1.0, 1.0), "a+bi, a > 0, b > 0");
    return rows;
}

int cmd_tables(const RunConfig& cfg) {
    Json out = header("tables", cfg, 0.0);
    out.erase("tol");
    out.erase("seed");
    out.erase("sig");
    Json mt = Json::array();
    for (AlgebraTag t : {AlgebraTag::compact(), AlgebraTag::split()})
        mt.push_back(Json{{"algebra", t.name()}, {"table", multiplication_table_to_json(multiplication_table(t))}});
    out["multiplication_tables"] = mt;
    out["types"] = type_table();
    Json fam = Json::array();
    for (const FamilyRow& r : family_table())
        fam.push_back(Json{{"name", r.name}, {"height", r.height}, {"nparams", r.nparams}, {"types", r.display()}});
    out["families"] = fam;
    write_output(cfg, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adjoint orbits of so(3,4), moment maps on G/SO(3)xSO(4), and G2 checks"};
    app.require_subcommand(1, 1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub, bool with_input) {
        sub->add_option("--sig", cfg.sig, "metric signature")->check(CLI::IsMember({"7,0", "3,4"}));
        sub->add_option("--tol", cfg.tol, "tolerance (command default if omitted)")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", cfg.out, "output file (stdout if omitted)");
        if (with_input) {
            sub->add_option("--in", cfg.in, "input JSON file, or - for stdin");
            sub->add_option("--json", cfg.inline_json, "input JSON given inline");
        }
    };

    std::map<std::string, int (*)(const RunConfig&)> run;
    auto* c = app.add_subcommand("classify", "orbit type, family and properness of a matrix");
    common(c, true);
    run["classify"] = cmd_classify;
    auto* m = app.add_subcommand("moment", "moment map at g for the torus generated by v");
    common(m, true);
    run["moment"] = cmd_moment;
    auto* z = app.add_subcommand("zero-locus", "sample the canonical zero locus of A_x");
    common(z, true);
    z->add_option("--n", cfg.n, "number of points")->check(CLI::PositiveNumber);
    run["zero-locus"] = cmd_zero_locus;
    auto* f = app.add_subcommand("flow", "gradient flow of the energy on the group");
    common(f, true);
    f->add_option("--n", cfg.n, "maximum number of steps")->check(CLI::PositiveNumber);
    f->add_option("--step", cfg.step, "initial step size")->check(CLI::PositiveNumber);
    f->add_flag("--trajectory", cfg.trajectory, "record every step");
    run["flow"] = cmd_flow;
    auto* g = app.add_subcommand("g2-check", "G2(V) membership of a matrix");
    common(g, true);
    run["g2-check"] = cmd_g2;
    auto* t = app.add_subcommand("tables", "multiplication tables, indecomposable types, families");
    common(t, false);
    run["tables"] = cmd_tables;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    try {
        return run.at(name)(cfg);
    } catch (const IllConditioned& e) {
        std::cerr << "qkr " << name << ": " << e.what() << " (spectral gap " << e.gap << ")\n";
        return 2;
    } catch (const DegenerateDenominator& e) {
        std::cerr << "qkr " << name << ": irregular point, |(Ad_g^-1 v)_m| = " << e.m_norm << "\n";
        return 2;
    } catch (const ClassificationIncomplete& e) {
        std::cerr << "qkr " << name << ": no family matches " << e.types.str() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "qkr " << name << ": " << e.what() << "\n";
        return 1;
    }
}
