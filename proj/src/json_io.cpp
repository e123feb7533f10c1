#include "qkr/json_io.hpp"

#include <stdexcept>

namespace qkr {

Json matrix_to_json(const Mat7& m, MetricSignature sig) {
    Json rows = Json::array();
    for (int i = 0; i < 7; ++i) {
        Json r = Json::array();
        for (int j = 0; j < 7; ++j) r.push_back(m(i, j) == 0.0 ? 0.0 : m(i, j));  // no -0
        rows.push_back(r);
    }
    return Json{{"sig", sig.name()}, {"rows", rows}};
}

ParsedMatrix matrix_from_json(const Json& j, MetricSignature fallback_sig) {
    ParsedMatrix out;
    const bool bare = j.is_array();  // rows without the wrapping object
    out.sig = !bare && j.contains("sig") ? MetricSignature::parse(j.at("sig").get<std::string>()) : fallback_sig;
    const Json& rows = bare ? j : j.at("rows");
    if (!rows.is_array() || rows.size() != 7) throw std::invalid_argument("\"rows\" must hold 7 rows");
    RMat R(7, 7);
    bool exact = true;
    for (int i = 0; i < 7; ++i) {
        const Json& r = rows[i];
        if (!r.is_array() || r.size() != 7) throw std::invalid_argument("each row must hold 7 entries");
        for (int k = 0; k < 7; ++k) {
            const Json& e = r[k];
            if (e.is_string()) {
                const mpq_class q = parse_rational(e.get<std::string>());
                R(i, k) = q;
                out.m(i, k) = q.get_d();
            } else if (e.is_number()) {
                out.m(i, k) = e.get<double>();
                if (e.is_number_integer())
                    R(i, k) = mpq_class(e.get<long>());
                else
                    exact = false;
            } else {
                throw std::invalid_argument("matrix entries must be numbers or rational strings");
            }
        }
    }
    if (exact) out.exact = R;
    return out;
}

Json type_to_json(const IndecomposableType& t) {
    std::string kind = "D" + std::to_string(t.height);
    if (t.sign > 0) kind += "+";
    if (t.sign < 0) kind += "-";
    Json j{{"kind", kind},
           {"height", t.height},
           {"zeta", Json::array({t.zeta.real(), t.zeta.imag()})},
           {"sign", t.sign > 0 ? "+" : (t.sign < 0 ? "-" : "")},
           {"class", kind_name(t.kind)},
           {"text", t.str()}};
    if (t.is_exact() && t.kind != Kind::zero)
        j["exact_zeta"] = Json::array({t.exact_re ? t.exact_re->str() : "0", t.exact_im ? t.exact_im->str() : "0"});
    return j;
}

Json type_sum_to_json(const TypeSum& ts0) {
    TypeSum ts = ts0;
    ts.sort();
    Json arr = Json::array();
    for (const auto& t : ts.summands) arr.push_back(type_to_json(t));
    return arr;
}

TypeSum type_sum_from_json(const Json& j) {
    if (j.is_string()) return parse_type_sum(j.get<std::string>());
    const Json& arr = j.is_object() ? j.at("summands") : j;
    if (!arr.is_array()) throw std::invalid_argument("expected a list of summands");
    TypeSum out;
    for (const Json& s : arr) {
        if (!s.contains("text")) throw std::invalid_argument("summand without \"text\"");
        const TypeSum part = parse_type_sum(s.at("text").get<std::string>());
        out = type_sum(out, part);
    }
    out.sort();
    return out;
}

Json family_to_json(const FamilyLabel& fl) {
    Json j{{"family", fl.name}, {"params", fl.params}};
    if (fl.exact_params) {
        Json e = Json::array();
        for (const auto& x : *fl.exact_params) e.push_back(x.str());
        j["exact_params"] = e;
    }
    j["aliases"] = fl.aliases;
    return j;
}

FamilyLabel family_from_json(const Json& j) {
    FamilyLabel fl;
    fl.name = j.at("family").get<std::string>();
    const FamilyRow& row = family_row(fl.name);
    const Json& p = j.contains("params") ? j.at("params") : Json::array();
    if (!p.is_array() || static_cast<int>(p.size()) != row.nparams)
        throw std::invalid_argument(fl.name + " takes " + std::to_string(row.nparams) + " parameters");
    std::vector<ExactReal> ex;
    bool exact = true;
    for (const Json& x : p) {
        if (x.is_string()) {
            const ExactReal e = ExactReal::parse(x.get<std::string>());
            ex.push_back(e);
            fl.params.push_back(e.to_double());
        } else if (x.is_number()) {
            fl.params.push_back(x.get<double>());
            if (x.is_number_integer())
                ex.push_back(ExactReal(x.get<long>()));
            else
                exact = false;
        } else {
            throw std::invalid_argument("parameters must be numbers or exact strings");
        }
    }
    if (exact) fl.exact_params = ex;
    return fl;
}

Json proper_to_json(const ProperReport& r) {
    Json j{{"verdict", to_string(r.verdict)}, {"proper", r.proper}, {"exact", r.exact}};
    if (r.verdict != Verdict::proper_free) j["commensurable"] = r.commensurable;
    if (r.irregular_points) j["irregular_points"] = *r.irregular_points;
    if (r.integer_rates) {
        Json z = Json::array();
        for (const auto& v : *r.integer_rates) z.push_back(v.get_str());
        j["integer_rates"] = z;
    }
    if (!r.reconstruction.empty()) {
        Json rec = Json::array();
        for (const auto& x : r.reconstruction) {
            Json e{{"ratio", x.value}};
            e["rational"] = x.ratio ? Json(x.ratio->get_str()) : Json(nullptr);
            e["error"] = x.error;
            rec.push_back(e);
        }
        j["reconstruction"] = rec;
        j["max_denominator"] = kRatioMaxDen;
        j["rel_tol"] = kRatioRelTol;
    }
    return j;
}

Json flow_to_json(const FlowResult& r, bool with_trajectory) {
    Json j{{"status", to_string(r.status)},
           {"steps", r.steps},
           {"gradient_norm", r.gradient_norm},
           {"final_energy", r.trajectory.empty() ? 0.0 : r.trajectory.back().energy},
           {"monotone", r.monotone},
           {"final_regularity", to_string(r.final_regularity)}};
    if (!r.trajectory.empty()) j["final_g"] = matrix_to_json(r.trajectory.back().g.g, r.trajectory.back().g.sig);
    if (with_trajectory) {
        Json t = Json::array();
        for (const auto& s : r.trajectory) t.push_back(Json{{"t", s.t}, {"energy", s.energy}});
        j["trajectory"] = t;
    }
    return j;
}

Json multiplication_table_to_json(const MultiplicationTable& t) {
    Json rows = Json::array();
    for (const auto& row : t) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(Json{{"sign", e.sign}, {"basis", e.basis}});
        rows.push_back(r);
    }
    return rows;
}

}  // namespace qkr
