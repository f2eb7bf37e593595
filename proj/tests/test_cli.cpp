#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "tricone/cli.hpp"

using nlohmann::json;
using tricone::run_cli;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int status = run_cli(std::move(args), out, err);
    return {status, out.str(), err.str()};
}

// Every JSON document must carry the published schema keys.
void check_schema(const json& doc) {
    for (const char* key : {"input", "rule", "exists", "unique", "witness", "diagnostics"})
        CHECK_MESSAGE(doc.contains(key), "missing key ", key);
    CHECK(doc["input"].contains("command"));
}

} // namespace

TEST_CASE("decide: octant") {
    Run r = cli({"decide", "1/2", "1/2", "1/2"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    check_schema(doc);
    CHECK(doc["exists"] == true);
    CHECK(doc["unique"] == true);
    CHECK(doc["rule"] == "Theorem1");
    CHECK(doc["witness"]["canonical_sum"] == "3/2");
}

TEST_CASE("decide output is a pure function of the exact rational input") {
    Run a = cli({"decide", "0.5", "0.5", "0.5"});
    Run b = cli({"decide", "1/2", "1/2", "1/2"});
    CHECK(a.status == 0);
    CHECK(a.out == b.out);

    Run c = cli({"decide", "2.0", "0.5", "0.5"});
    json doc = json::parse(c.out);
    CHECK(doc["rule"] == "Theorem2");
    CHECK(doc["exists"] == true);
    CHECK(doc["witness"]["m"] == 1);
}

TEST_CASE("catalan") {
    Run r = cli({"catalan", "3", "--format", "text"});
    CHECK(r.status == 0);
    CHECK(r.out == "2\n");

    Run j = cli({"catalan", "5"});
    json doc = json::parse(j.out);
    check_schema(doc);
    CHECK(doc["witness"]["count"] == 14);
}

TEST_CASE("canonicalize") {
    Run r = cli({"canonicalize", "5/2", "1/2", "1/2"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    check_schema(doc);
    CHECK(doc["witness"]["canonical"] == json::array({"1/2", "1/2", "1/2"}));

    Run bad = cli({"canonicalize", "2", "1/2", "1/2"});
    CHECK(bad.status == 2);
    CHECK(bad.err.find("usage error") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(cli({}).status == 2);
    CHECK(cli({"decide", "1/2", "1/2"}).status == 2);
    CHECK(cli({"decide", "a", "b", "c"}).status == 2);
    CHECK(cli({"decide", "-1/2", "1/2", "1/2"}).status == 2);
    CHECK(cli({"frobnicate", "1", "2", "3"}).status == 2);
    CHECK(cli({"decide", "1/2", "1/2", "1/2", "--format", "yaml"}).status == 2);
}

TEST_CASE("area: round sphere") {
    Run r = cli({"area", "1", "1", "1", "--tol", "1e-3"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    check_schema(doc);
    double area = doc["witness"]["area"].get<double>();
    CHECK(area == doctest::Approx(4.0 * M_PI).epsilon(1e-3));
    CHECK(doc["witness"]["gauss_bonnet"].get<double>() ==
          doctest::Approx(4.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("area refuses nothing but reports when no metric exists") {
    Run r = cli({"area", "3/10", "3/10", "3/10"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    CHECK(doc["exists"] == false);
    CHECK(doc["witness"].contains("note"));
}

TEST_CASE("monodromy oracle document") {
    Run r = cli({"monodromy", "1/2", "1/2", "1/2"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    check_schema(doc);
    CHECK(doc["exists"] == true);
    CHECK(doc["diagnostics"]["loop_relation_residual"].get<double>() < 1e-8);
    CHECK(doc["diagnostics"]["m0"]["class"] == "elliptic");
    double tr = doc["diagnostics"]["m0"]["abs_trace"].get<double>();
    CHECK(tr == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("rational maps through the CLI") {
    Run r = cli({"rational", "1", "2", "2"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    CHECK(doc["witness"]["degree"] == 2);
    CHECK(doc["witness"]["verified"] == true);

    Run bad = cli({"rational", "2", "2", "2"});
    json doc2 = json::parse(bad.out);
    CHECK(bad.status == 0);
    CHECK(doc2["exists"] == false);
    CHECK(doc2["witness"].contains("not_admissible"));
}

TEST_CASE("membrane json and svg formats") {
    Run r = cli({"membrane", "1/2", "1/2", "1/2"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    check_schema(doc);
    CHECK(doc["exists"] == true);
    CHECK(doc["diagnostics"]["geodesizable"] == true);

    Run svg = cli({"membrane", "1/2", "1/2", "1/2", "--format", "svg"});
    CHECK(svg.status == 0);
    CHECK(svg.out.find("<svg") != std::string::npos);
}

TEST_CASE("cone-check emits three fits") {
    Run r = cli({"cone-check", "1", "1", "1"});
    REQUIRE(r.status == 0);
    json doc = json::parse(r.out);
    check_schema(doc);
    CHECK(doc["witness"]["cones"].size() == 3);
    for (const auto& c : doc["witness"]["cones"])
        CHECK(c["abs_error"].get<double>() < 1e-2);
}

TEST_CASE("help exits cleanly") {
    Run r = cli({"--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("decide") != std::string::npos);
}

TEST_CASE("numeric failures exit 3") {
    // No one-sheet triangle exists with these angles, and the svg path does
    // not degrade to a diagnostics field.
    Run r = cli({"membrane", "19/20", "19/20", "1/20", "--format", "svg"});
    CHECK(r.status == 3);
    CHECK(r.err.find("numeric failure") != std::string::npos);
}

TEST_CASE("--out writes the document to a file") {
    std::string path = "cli_out_test.json";
    Run r = cli({"decide", "1/2", "1/2", "1/2", "--out", path});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    json doc = json::parse(f);
    CHECK(doc["exists"] == true);
    f.close();
    std::remove(path.c_str());
}
