#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args, const std::string& stdin_json = "",
                  const std::string& env = "") {
    std::string cmd = env;
    if (!env.empty()) cmd += " ";
    cmd += std::string(INFPROB_CLI_PATH) + " " + args + " 2>/dev/null";
    if (!stdin_json.empty()) {
        std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/infprob_cli_in.json";
        std::ofstream f(path);
        f << stdin_json;
        f.close();
        cmd += " --input " + path;
    }
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

} // namespace

TEST_CASE("version and argument errors") {
    CliResult v = run_cli("--version");
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("infprob 1.0.0") != std::string::npos);
    CHECK(run_cli("partitions --n 4 --bogus-flag 1").exit_code == 2);
    CHECK(run_cli("no-such-subcommand").exit_code == 2);
    CHECK(run_cli("").exit_code == 2); // a subcommand is required
}

TEST_CASE("partition enumeration with caps") {
    CliResult r = run_cli("partitions --n 4 --class nc");
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["count"] == 14);
    CHECK(doc["partitions"].size() == 14);
    CHECK(doc["config"]["subcommand"] == "partitions");

    CHECK(run_cli("partitions --n 17 --class nc").exit_code == 3);
    CHECK(run_cli("partitions --n 5 --class nc", "", "INFPROB_CAP=4").exit_code == 3);
    CHECK(run_cli("partitions --n 4 --class nc", "", "INFPROB_CAP=4").exit_code == 0);
    CHECK(run_cli("partitions --n 3 --class bogus").exit_code == 2);
}

TEST_CASE("transforms round trip through JSON and CSV") {
    json in{{"moments", {"1", "2"}}, {"inf_moments", {"1", "0"}},
            {"target", "infinitesimal"}, {"order", 2}};
    CliResult r = run_cli("transform --direction to-cumulants", in.dump());
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["result"] == json({"1", "1"}));
    CHECK(doc["inf_result"] == json({"1", "-2"}));

    json back{{"moments", {"1", "1"}}, {"inf_moments", {"1", "-2"}},
              {"target", "infinitesimal"}, {"order", 2}};
    CliResult rb = run_cli("transform --direction to-moments", back.dump());
    REQUIRE(rb.exit_code == 0);
    json bdoc = json::parse(rb.out);
    CHECK(bdoc["result"] == json({"1", "2"}));
    CHECK(bdoc["inf_result"] == json({"1", "0"}));

    CliResult csv = run_cli("transform --direction to-cumulants --format csv", in.dump());
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out == "n,value,inf_value\n1,1,1\n2,1,-2\n");

    json plain{{"moments", {"0", "1", "0", "2"}}, {"target", "free"}};
    CliResult pr = run_cli("transform --format csv", plain.dump());
    CHECK(pr.out == "n,value\n1,0\n2,1\n3,0\n4,0\n");
}

TEST_CASE("malformed input is a usage error") {
    CHECK(run_cli("transform", "{not json").exit_code == 2);
    CHECK(run_cli("transform", "{\"target\":\"free\"}").exit_code == 2);
    CHECK(run_cli("transform", "{\"moments\":[\"1/0\"]}").exit_code == 2);
    json in{{"moments", {"1", "2"}}, {"order", 30}};
    CHECK(run_cli("transform", in.dump()).exit_code == 3);
}

TEST_CASE("series output carries the exponent window") {
    json in{{"moments", {"0", "1", "0", "2"}}};
    CliResult r = run_cli("series --op cauchy", in.dump());
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["series"]["lowest_exp"] == -5);
    CHECK(doc["series"]["coeffs"] == json({"2", "0", "1", "0", "1", "0"}));
    CliResult rr = run_cli("series --op r", in.dump());
    json rdoc = json::parse(rr.out);
    CHECK(rdoc["series"]["coeffs"][1] == "1"); // R(z) = z

    json infin{{"inf_moments", {"1", "0"}}};
    CHECK(run_cli("series --op inf-g", infin.dump()).exit_code == 0);
    CHECK(run_cli("series --op bogus", in.dump()).exit_code == 2);
}

TEST_CASE("free polynomial laws") {
    json in{{"m1", 1}, {"m2", 2}, {"x2_inf", {"1", "1"}}};
    CliResult r = run_cli("inf-law anticommutator", in.dump());
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["inf_moments"] == json({"2", "6"}));

    json with_atoms = in;
    with_atoms["x2_atoms"] = json::array({{{"t", 1}, {"w", 1}}});
    CliResult ra = run_cli("inf-law anticommutator", with_atoms.dump());
    REQUIRE(ra.exit_code == 0);
    json adoc = json::parse(ra.out);
    REQUIRE(adoc["atoms"].size() == 2);
    CHECK(adoc["atoms"][0]["t"]["s"] == "2"); // locations live in Q(sqrt(2))

    CliResult rc = run_cli("inf-law commutator", in.dump());
    json cdoc = json::parse(rc.out);
    CHECK(cdoc["inf_moments"] == json({"0", "2"}));
}

TEST_CASE("boolean polynomial law and its degenerate note") {
    json in{{"beta1_x1", 1}, {"beta2_x1", 1}, {"beta1_x2", 1}, {"beta2_x2", 1},
            {"beta1p_x1", 1}, {"beta2p_x1", 1}, {"beta1p_x2", 1}, {"beta2p_x2", 1}};
    CliResult r = run_cli("boolean-poly --order 3", in.dump());
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["m"] == json({"2", "6", "18"}));
    CHECK(doc["beta_prime"][1] == "6");
    CHECK(doc["gamma_o"].size() == 3);
    bool atom3 = false;
    for (const auto& a : doc["atoms"])
        if (a["t"]["p"] == "3" && a["w"]["p"] == "2/3") atom3 = true;
    CHECK(atom3);

    json degen{{"a", 1}, {"b", -1}, {"beta1_x1", 1}, {"beta2_x1", 1},
               {"beta1_x2", 1}, {"beta2_x2", 1}};
    CliResult rd = run_cli("boolean-poly --order 2", degen.dump());
    REQUIRE(rd.exit_code == 0);
    json ddoc = json::parse(rd.out);
    CHECK(ddoc.contains("atoms_note"));
    CHECK_FALSE(ddoc.contains("m"));

    CHECK(run_cli("boolean-poly --order 2", "{\"beta1_x1\":1}").exit_code == 2);
}

TEST_CASE("R-diagonal subcommand branches") {
    json closure{{"first", {{"alpha", {"1", "2"}}, {"beta", {"1", "1"}}}},
                 {"second", {{"alpha", {"2", "1"}}, {"beta", {"1", "3"}}}}};
    CliResult r = run_cli("rdiagonal --order 4", closure.dump());
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["closed"] == true);
    CHECK(doc["checked"].get<long long>() > 0);

    json alt{{"kappa2_x1", 1}, {"x2_inf_cumulants", {"1", "1", "1", "1"}}};
    CliResult ra = run_cli("rdiagonal --order 4", alt.dump());
    json adoc = json::parse(ra.out);
    CHECK(adoc["alternating"] == json({"0", "1", "0", "1"}));

    json squares{{"alpha", {"2", "3"}}, {"beta", {"5", "7"}},
                 {"alphap", {"11", "13"}}, {"betap", {"17", "19"}}};
    CliResult rs = run_cli("rdiagonal --order 2", squares.dump());
    json sdoc = json::parse(rs.out);
    CHECK(sdoc["square_aastar"] == json({"11", "102"}));
    CHECK(sdoc["square_astara"] == json({"17", "108"}));

    CHECK(run_cli("rdiagonal --order 13", closure.dump()).exit_code == 3);
}

TEST_CASE("independence bridge sweeps") {
    json in{{"algebras", json::array({{{"moments", {"2", "7", "31", "154", "800",
                                                    "4200", "22500"}}},
                                      {{"moments", {"3", "11", "45", "200", "950",
                                                    "4600", "22800"}}}})}};
    CliResult rb = run_cli("bridge --mode boolean --max-len 7", in.dump());
    REQUIRE(rb.exit_code == 0);
    json bdoc = json::parse(rb.out);
    CHECK(bdoc["failures"].empty());
    CHECK(bdoc["checked"].get<long long>() > 0);
    CHECK(bdoc["passed"] == bdoc["checked"]);

    CliResult rm = run_cli("bridge --mode monotone --max-len 7", in.dump());
    CHECK(rm.exit_code == 0);

    CHECK(run_cli("bridge --max-len 2", in.dump()).exit_code == 3);
    CHECK(run_cli("bridge --mode bogus --max-len 6", in.dump()).exit_code == 2);
    CHECK(run_cli("bridge --max-len 6", "{\"algebras\":[]}").exit_code == 2);
}

TEST_CASE("spectral shift sequence") {
    json in{{"moments", {"0", "1", "0", "1"}}};
    CliResult r = run_cli("spectral-shift", in.dump());
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["tau"] == json({"1", "0", "2", "0", "2"}));
}

TEST_CASE("simulation output formats") {
    CliResult csv =
        run_cli("simulate --n 16 --samples 8 --seed 3 --poly anticomm --orders 2");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.rfind("poly,n,empirical_mean,stderr,theory,zscore\n", 0) == 0);

    CliResult js = run_cli(
        "simulate --n 16 --samples 8 --seed 3 --poly anticomm --orders 2 --format json");
    REQUIRE(js.exit_code == 0);
    json doc = json::parse(js.out);
    CHECK(doc["results"].size() == 2);
    CHECK(doc["results"][1]["theory"] == 6.0);
    // the echoed config pins everything that determines the numbers
    CHECK(doc["config"]["seed"] == 3);
    CHECK_FALSE(doc["config"].contains("threads"));

    CHECK(run_cli("simulate --n 16 --samples 8 --orders 9").exit_code == 3);
    CHECK(run_cli("simulate --n 16 --samples 8 --b-eigs 1,x").exit_code == 2);
}
