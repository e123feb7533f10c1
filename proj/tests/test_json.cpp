#include <doctest.h>

#include <fstream>

#include "qkr/canonical.hpp"
#include "qkr/classify.hpp"
#include "qkr/json_io.hpp"

using namespace qkr;

namespace {

Json load(const std::string& name) {
    std::ifstream in(std::string(QKR_FIXTURE_DIR) + "/" + name);
    REQUIRE(in);
    return Json::parse(in);
}

}  // namespace

TEST_CASE("matrix round trip") {
    std::mt19937_64 rng(81);
    for (auto sig : {MetricSignature::compact(), MetricSignature::split()}) {
        const auto A = random_algebra(sig, rng, 1.0);
        const Json j = matrix_to_json(A.a, sig);
        const ParsedMatrix p = matrix_from_json(Json::parse(j.dump()), MetricSignature::compact());
        CHECK(p.sig == sig);
        CHECK(p.m == A.a);  // exact: doubles print in shortest round-trip form
        CHECK_FALSE(p.exact);
    }
    CHECK(matrix_to_json(-Mat7::Zero(), MetricSignature::split()).dump().find("-0") == std::string::npos);
}

TEST_CASE("matrices with exact entries") {
    Json j;
    j["rows"] = Json::array();
    for (int i = 0; i < 7; ++i) {
        Json row = Json::array();
        for (int k = 0; k < 7; ++k) row.push_back(0);
        j["rows"].push_back(row);
    }
    j["rows"][0][1] = "1/3";
    j["rows"][1][0] = "-1/3";
    j["rows"][2][3] = "0.25";
    j["rows"][3][2] = "0.25";
    const ParsedMatrix p = matrix_from_json(j, MetricSignature::split());
    CHECK(p.sig == MetricSignature::split());
    REQUIRE(p.exact);
    CHECK((*p.exact)(0, 1) == mpq_class(1, 3));
    CHECK((*p.exact)(2, 3) == mpq_class(1, 4));
    CHECK(p.m(0, 1) == doctest::Approx(1.0 / 3.0));
    // one float entry makes the matrix inexact
    j["rows"][4][5] = 0.5;
    j["rows"][5][4] = -0.5;
    CHECK_FALSE(matrix_from_json(j, MetricSignature::split()).exact);
}

TEST_CASE("malformed matrices") {
    CHECK_THROWS(matrix_from_json(Json::parse(R"({"rows": [[1,2],[3,4]]})"), MetricSignature::split()));
    CHECK_THROWS(matrix_from_json(Json::parse(R"({"sig": "5,2", "rows": []})"), MetricSignature::split()));
    CHECK_THROWS(matrix_from_json(Json::parse(R"([1,2,3])"), MetricSignature::split()));
}

TEST_CASE("type sums in and out") {
    const TypeSum t = parse_type_sum("D1(0,0) + D2+(0)");
    const Json j = type_sum_to_json(t);
    REQUIRE(j.is_array());
    CHECK(j.size() == 2);
    CHECK(type_sum_from_json(j).str() == t.str());
    CHECK(type_sum_from_json(Json("D1(0,0) + D2+(0)")).str() == t.str());
    Json wrapped;
    wrapped["summands"] = j;
    CHECK(type_sum_from_json(wrapped).str() == t.str());
    const Json e = type_to_json(parse_type_sum("D0+(sqrt(2)i,-sqrt(2)i)").summands[0]);
    CHECK(e["kind"] == "D0+");
    CHECK(e["class"] == "imag");
    CHECK(e.contains("exact_zeta"));
}

TEST_CASE("family labels in and out") {
    const FamilyLabel fl = family_from_json(Json::parse(R"j({"family": "IV_4", "params": [1, "sqrt(2)", 1]})j"));
    REQUIRE(fl.exact_params);
    CHECK((*fl.exact_params)[1] == ExactReal::parse("sqrt(2)"));
    CHECK(fl.params[1] == doctest::Approx(std::sqrt(2.0)));
    const Json back = family_to_json(fl);
    CHECK(back["family"] == "IV_4");
    CHECK(back.contains("exact_params"));
    CHECK(family_from_json(back).params == fl.params);
    CHECK_FALSE(family_from_json(Json::parse(R"({"family": "II_1", "params": [0.5]})")).exact_params);
    CHECK_THROWS(family_from_json(Json::parse(R"({"family": "II_1", "params": [1, 2]})")));
    CHECK_THROWS(family_from_json(Json::parse(R"({"family": "VII_1", "params": []})")));
}

TEST_CASE("properness reports serialize their reconstruction") {
    const Json j = proper_to_json(is_proper_free(FamilyLabel{"IV_4", {0.5, 1.5, 2.0}, {}, {}}));
    CHECK(j["verdict"] == "proper_iff_commensurable");
    CHECK(j["proper"] == true);
    REQUIRE(j["reconstruction"].size() == 3);
    CHECK(j["reconstruction"][1]["rational"] == "3");
    CHECK(j["integer_rates"] == Json::parse(R"(["1", "3", "4"])"));
}

TEST_CASE("frozen canonical representatives classify to their family") {
    const Json fx = load("canonical_representatives.json");
    CHECK(fx["version"] == 1);
    REQUIRE(fx["families"].size() == 24);
    std::mt19937_64 rng(82);
    for (const auto& f : fx["families"]) {
        const ParsedMatrix p = matrix_from_json(f["matrix"], MetricSignature::split());
        const SkewAdjointMatrix A(p.m, p.sig);
        CHECK(A.residual() <= 1e-12);
        const std::vector<double> want = f["params"].get<std::vector<double>>();
        for (int k = 0; k < 2; ++k) {
            // the fixture itself, then a conjugate of it
            const SkewAdjointMatrix B = k == 0 ? A : Ad(random_group(A.sig, rng, 1.0), A);
            const TypeSum ts = classify(B);
            CHECK(equivalent(ts, parse_type_sum(f["type_sum"].get<std::string>())));
            const FamilyLabel fl = family_label(ts);
            CHECK(fl.name == f["family"].get<std::string>());
            REQUIRE(fl.params.size() == want.size());
            for (size_t i = 0; i < want.size(); ++i) CHECK(fl.params[i] == doctest::Approx(want[i]).epsilon(1e-8));
            CHECK(ts.height() == f["height"].get<int>());
        }
    }
}

TEST_CASE("multiplication table fixture matches the library") {
    const Json fx = load("multiplication_tables.json");
    for (const auto& t : fx["tables"]) {
        const AlgebraTag tag = t["algebra"] == "O" ? AlgebraTag::compact() : AlgebraTag::split();
        CHECK(multiplication_table_to_json(multiplication_table(tag)) == t["table"]);
    }
}
