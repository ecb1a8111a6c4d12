#include "univext/json_io.hpp"
#include "univext/verify.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace univext;

namespace {
std::string write_temp(const std::string& name, const std::string& text)
{
    auto path = std::filesystem::temp_directory_path() / ("univext_" + name);
    std::ofstream(path) << text;
    return path.string();
}

std::string error_of(auto&& f)
{
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}
} // namespace

TEST(JsonRat, StringsAndIntegers)
{
    EXPECT_EQ(rat_to_json(Rat(-3, 4)), "-3/4");
    EXPECT_EQ(rat_from_json(json("5/10")), Rat(1, 2));
    EXPECT_EQ(rat_from_json(json(7)), Rat(7));
    EXPECT_THROW(rat_from_json(json(0.5)), JsonError);
    EXPECT_THROW(rat_from_json(json("1/0")), std::invalid_argument);
}

TEST(JsonLie, CatalogRoundTrip)
{
    for (const auto& name : catalog_names()) {
        LieAlgebra L = catalog(name);
        json j = lie_to_json(L);
        EXPECT_EQ(lie_from_json(json::parse(j.dump())), L) << name;
    }
    json sl = lie_to_json(sl2());
    EXPECT_EQ(sl["dim"], 3);
    EXPECT_EQ(sl["brackets"].size(), 3u);
}

TEST(JsonLie, StringIndicesAccepted)
{
    json j = json::parse(R"({"dim":3,"brackets":[{"i":"0","j":"1","coeffs":[["2","1"]]}]})");
    LieAlgebra L = lie_from_json(j);
    EXPECT_EQ(L.constant(0, 1, 2), Rat(1));
    EXPECT_EQ(L.constant(1, 0, 2), Rat(-1));
}

TEST(JsonComm, RoundTripWithUnit)
{
    for (const CommAlgebra& A : {exterior_pair(), truncated_poly(3), functions_on_points(2), zero_product(2)}) {
        CommAlgebra B = comm_from_json(json::parse(comm_to_json(A).dump()));
        EXPECT_EQ(B.dim(), A.dim());
        EXPECT_EQ(B.unit(), A.unit());
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < A.dim(); ++j) EXPECT_EQ(B.product_basis(i, j), A.product_basis(i, j));
    }
    EXPECT_TRUE(comm_to_json(exterior_pair()).contains("products"));
}

TEST(JsonLaurent, ResidueForm)
{
    LaurentPoly p = laurent_from_json(json::parse(R"({"coeffs":{"-1":"1","2":"3/2"}})"));
    EXPECT_EQ(p.get(-1), Rat(1));
    EXPECT_EQ(p.get(2), Rat(3, 2));
    EXPECT_EQ(laurent_to_json(LaurentPoly::monomial(-1)).dump(), R"({"coeffs":{"-1":"1"}})");
    EXPECT_THROW(laurent_from_json(json::parse(R"({"coeffs":{"x":"1"}})")), JsonError);
}

TEST(JsonBundle, RoundTrip)
{
    DiscreteBundle B = make_twisted_bundle(sl3(), 6, sl3_negative_transpose());
    json j = bundle_to_json(B, "sl3");
    EXPECT_EQ(j["transitions"].size(), 1u);
    DiscreteBundle C = bundle_from_json(json::parse(j.dump()));
    EXPECT_EQ(C.cover(), B.cover());
    for (std::size_t p = 0; p < 6; ++p)
        for (std::size_t i : B.charts_at(p))
            for (std::size_t k : B.charts_at(p)) EXPECT_EQ(C.transition(i, k, p), B.transition(i, k, p));
    DiscreteBundle D = bundle_from_json(json::parse(bundle_to_json(make_trivial_bundle(sl2(), 3)).dump()));
    EXPECT_EQ(D.fiber(), sl2());
}

TEST(JsonDiagnostics, SyntaxErrorLine)
{
    std::string path = write_temp("syntax.json", "{\n  \"dim\": 2,\n  \"brackets\": [,]\n}\n");
    std::string msg = error_of([&] { load_lie(path); });
    EXPECT_NE(msg.find(path + ":3:"), std::string::npos) << msg;
}

TEST(JsonDiagnostics, JacobiTripleNamed)
{
    std::string path = std::string(UNIVEXT_TEST_DATA) + "/bad_jacobi.json";
    std::string msg = error_of([&] { load_lie(path); });
    EXPECT_NE(msg.find("Jacobi identity fails on triple (0,1,2)"), std::string::npos) << msg;
    EXPECT_NE(msg.find(":4:"), std::string::npos) << msg;
}

TEST(JsonDiagnostics, BadEntryLine)
{
    std::string path = write_temp("badentry.json",
                                  "{\"dim\": 2,\n \"brackets\": [\n  {\"i\":0,\"j\":1,\"coeffs\":[[0,\"1\"]]},\n"
                                  "  {\"i\":0,\"j\":5,\"coeffs\":[]}\n ]\n}\n");
    std::string msg = error_of([&] { load_lie(path); });
    EXPECT_NE(msg.find(":4:"), std::string::npos) << msg;
}

TEST(JsonDiagnostics, EntryLinesScanner)
{
    std::string text = "{\"name\":\"x [\",\n\"brackets\":[\n{\"i\":0},\n\n{\"i\":1}],\n\"products\":[{}]}";
    EXPECT_EQ(entry_lines(text, "brackets"), (std::vector<std::size_t>{3, 5}));
    EXPECT_EQ(entry_lines(text, "products"), (std::vector<std::size_t>{6}));
}

TEST(JsonLoad, CommSpecs)
{
    EXPECT_EQ(load_comm("trunc(3)").dim(), 3u);
    EXPECT_EQ(load_comm("points(2)").dim(), 2u);
    EXPECT_EQ(load_comm("exterior_pair").dim(), 4u);
    EXPECT_THROW(load_comm("nonsense"), JsonError);
    EXPECT_THROW(load_lie("nonsense"), UnknownAlgebra);
}

TEST(Reports, SchemaAndFirstFailure)
{
    Check ok;
    ok.name = "a";
    ok.expect(true, "holds");
    Check bad;
    bad.name = "b";
    bad.expect(true, "first");
    bad.expect(false, "second");
    bad.expect(false, "third");
    SuiteResult r{"demo", 7, 3, {ok, bad}};
    EXPECT_FALSE(r.pass());
    EXPECT_EQ(r.first_failure(), "b: second");
    json j = r.to_json();
    EXPECT_EQ(j["version"], kReportVersion);
    EXPECT_EQ(j["status"], "fail");
    EXPECT_EQ(j["checks"][0]["status"], "pass");
    EXPECT_EQ(j["checks"][1]["first_failure"], "second");
    EXPECT_EQ(j["checks"][1].begin().key(), "check");
    EXPECT_EQ(j["checks"][1]["assertions"].size(), 3u);
}

TEST(Reports, ExceptionsBecomeFailures)
{
    VerifyOptions opt;
    opt.window = 0;
    Check c = check_loop(opt);
    EXPECT_FALSE(c.pass());
    EXPECT_NE(c.first_failure()->name.find("window"), std::string::npos);
    EXPECT_THROW(run_suite("nope", opt), std::invalid_argument);
}

TEST(Reports, DeterministicGivenSeed)
{
    auto strip = [](json j) {
        for (auto& c : j["checks"]) c.erase("seconds");
        return j;
    };
    VerifyOptions opt;
    opt.seed = 11;
    EXPECT_EQ(strip(run_suite("calg-extension", opt).to_json()), strip(run_suite("calg-extension", opt).to_json()));
    SuiteResult r = run_suite("calg-extension", opt);
    EXPECT_TRUE(r.pass()) << r.first_failure();
}
