// End-to-end runs of the parhom binary against the fixture specs: output
// shapes, JSON documents, exit codes and determinism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(PARHOM_BIN) + " " + args + " 2>&1";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string fx(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("semigroup enumeration") {
    RunResult r = run("semigroup --spec " + fx("c2_trivial_z.toml"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "|S(G)| = 3"));
    CHECK(contains(r.out, "dim B = 2"));

    RunResult j = run("semigroup --names --json --spec " +
                      fx("c2_trivial_z.toml"));
    CHECK(j.code == 0);
    json doc = json::parse(j.out);
    CHECK(doc["semigroup_order"] == 3);
    CHECK(doc["dim_B"] == 2);
    CHECK(doc["names"].size() == 2);
}

TEST_CASE("validate reports module rank and axioms") {
    RunResult r = run("validate --spec " + fx("c2_diag.toml"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "axioms OK"));
}

TEST_CASE("homology of the linearized set action over Z") {
    RunResult r = run("homology --json --spec " + fx("c2_setaction.toml"));
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    auto& rows = doc["rows"];
    REQUIRE(rows.size() == 4);
    CHECK(rows[0]["betti"] == 2);
    CHECK(rows[1]["torsion"] == json::array({"2"}));
    CHECK(rows[2]["betti"] == 0);
    CHECK(rows[2]["torsion"].empty());
    CHECK(rows[3]["torsion"] == json::array({"2"}));
}

TEST_CASE("compare homology passes on the diag fixture") {
    RunResult r = run("compare homology --spec " + fx("c2_diag.toml"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "pass"));
    CHECK(!contains(r.out, "MISMATCH"));
}

TEST_CASE("globalize emits the kernel of iota") {
    RunResult r = run("globalize --json --spec " + fx("c2c2c2_kernel.toml"));
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["iota_kernel_rank"] == 1);
    auto& k = doc["iota_kernel"];
    REQUIRE(k.size() == 6);
    for (int i = 0; i < 3; ++i) CHECK(k[i][0] == "1");
    for (int i = 3; i < 6; ++i) CHECK(k[i][0] == "-1");
    CHECK(doc["verified"] == false);  // iota is not injective here

    RunResult p = run("globalize --json --spec " + fx("c3_point.toml"));
    CHECK(p.code == 0);
    json pd = json::parse(p.out);
    CHECK(pd["lambda_rank"] == 3);
    CHECK(pd["iota_kernel_rank"] == 0);
    CHECK(pd["verified"] == true);
}

TEST_CASE("shapiro comparison via the spec's subgroup section") {
    RunResult r = run("shapiro --max-degree 2 --spec " +
                      fx("c4_sub_c2_gf2.toml"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "pass"));
}

TEST_CASE("cohomology over GF(2)") {
    RunResult r = run("cohomology --json --spec " +
                      fx("c2_trivial_right_gf2.toml"));
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    for (int n = 0; n <= 3; ++n) CHECK(doc["rows"][n]["betti"] == 1);
}

TEST_CASE("certify-projective") {
    RunResult r = run("certify-projective --ring Q --spec " +
                      fx("c3_trivial_z.toml"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "dim KG(x)B = 12"));
    CHECK(contains(r.out, "dim N = 4"));
}

TEST_CASE("input errors exit with code 1") {
    RunResult bad_ring = run("homology --ring GF4 --spec " +
                             fx("c2_trivial_z.toml"));
    CHECK(bad_ring.code == 1);
    CHECK(contains(bad_ring.out, "p must be prime, got 4"));

    RunResult missing = run("homology --spec /nonexistent.toml");
    CHECK(missing.code == 1);

    std::string tmp = "/tmp/parhom_bad_spec.toml";
    {
        std::ofstream f(tmp);
        f << "[group]\nkind = \"cyclic\"\nn = 2\n\n[ring]\nkind = \"Q\"\n\n"
             "[module]\nkind = \"rep\"\nside = \"left\"\n\n"
             "[[module.pi]]\ng = \"1\"\nmatrix = [[1]]\n";
    }
    RunResult incomplete = run("homology --spec " + tmp);
    CHECK(incomplete.code == 1);
    CHECK(contains(incomplete.out, "pi required for every group element"));

    RunResult wrong_side = run("homology --spec " +
                               fx("c2_trivial_right_gf2.toml"));
    CHECK(wrong_side.code == 1);
    CHECK(contains(wrong_side.out, "left module"));
}

TEST_CASE("output is byte-for-byte deterministic") {
    std::string cmd = "compare homology --json --spec " + fx("c2_diag.toml");
    RunResult a = run(cmd), b = run(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    REQUIRE(!a.out.empty());
    // round-trip through the parser
    json doc = json::parse(a.out);
    CHECK(doc["pass"] == true);
    CHECK(doc["rows"].size() == 8);
}
