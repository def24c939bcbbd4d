#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "subriem/cli/cli.hpp"

namespace fs = std::filesystem;
using namespace subriem::cli;

namespace {

const fs::path data = SUBRIEM_DATA_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args)
{
    args.insert(args.begin(), "subriem");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string d(const char* name) { return (data / name).string(); }

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "subriem_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("validate")
{
    for (const char* f : {"h3.json", "h5.json", "h3xR.json", "step3-filiform.json"}) {
        const auto r = call({"validate", d(f)});
        CHECK(r.code == kOk);
        CHECK(nlohmann::json::parse(r.out)["ok"] == true);
    }
    const auto bad = scratch("broken-jacobi.json");
    std::ofstream(bad) << R"({"dims":[3,2,1],"brackets":[
        {"a":[1,1],"b":[1,2],"out":[[2,1,1]]},
        {"a":[1,1],"b":[1,3],"out":[[2,2,1]]},
        {"a":[1,2],"b":[2,2],"out":[[3,1,1]]},
        {"a":[1,3],"b":[2,1],"out":[[3,1,2]]}]})";
    const auto r = call({"validate", bad.string()});
    CHECK(r.code == kFailure);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["ok"] == false);
    bool jacobi = false;
    for (const auto& v : j["violations"])
        jacobi = jacobi || (v["invariant"] == "jacobi" && v["witness"].size() == 3);
    CHECK(jacobi);
}

TEST_CASE("usage and parse errors")
{
    CHECK(call({"frobnicate"}).code == kUsage);
    CHECK(call({}).code == kUsage);
    const auto missing = call({"validate", d("does-not-exist.json")});
    CHECK(missing.code == kFailure);
    CHECK_FALSE(missing.err.empty());

    const auto broken = scratch("broken.json");
    std::ofstream(broken) << "{\"dims\": [2,1],\n \"brackets\": [ }";
    const auto r = call({"validate", broken.string()});
    CHECK(r.code == kFailure);
    CHECK(r.err.find("line") != std::string::npos);
}

TEST_CASE("compose")
{
    const auto r = call({"compose", d("h3.json"), "--x", "1,0,0", "--y", "0,1,0"});
    REQUIRE(r.code == kOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["z"][2].get<double>() == doctest::Approx(0.5));
    CHECK(call({"compose", d("h3.json"), "--x", "1,0", "--y", "0,1,0"}).code == kFailure);
}

TEST_CASE("spectrum CSV starts with the kernel")
{
    const auto r = call({"spectrum", d("h3.json")});
    REQUIRE(r.code == kOk);
    std::istringstream in(r.out);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "label_kind,label,dirac_value_or_abs,square_value,multiplicity");
    CHECK(first.find(",0,0,") != std::string::npos);

    const auto spin = call({"spectrum", d("h3-spin.json"), "--cutoff-tau", "2", "--cutoff-kappa", "2",
                            "--cutoff-alpha", "1"});
    CHECK(spin.code == kOk);

    const auto svg = scratch("count.svg");
    fs::remove(svg);
    CHECK(call({"spectrum", d("h3.json"), "--svg", svg.string()}).code == kOk);
    CHECK(slurp(svg).find("<svg") != std::string::npos);
}

TEST_CASE("hypo check")
{
    auto r = call({"hypo", "check", d("h3.json"), "--dirac"});
    REQUIRE(r.code == kOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "NotHypoelliptic");
    CHECK(j["witness"]["nu"] == 1);
    CHECK(std::abs(j["witness"]["mu"].get<double>()) == doctest::Approx(1.0));

    r = call({"--expect", "hypoelliptic", "hypo", "check", d("h3.json"), "--dirac"});
    CHECK(r.code == kExpectation);

    r = call({"--expect", "hypoelliptic", "hypo", "check", d("h3-laplacian.json")});
    CHECK(r.code == kOk);
    CHECK(nlohmann::json::parse(r.out)["status"] == "Hypoelliptic");

    r = call({"hypo", "check", d("h5.json"), "--theta", "0.5"});
    CHECK(r.code == kOk);
    CHECK(nlohmann::json::parse(r.out)["status"] == "Hypoelliptic");
    CHECK(call({"hypo", "check", d("h3.json"), "--theta", "0"}).code == kFailure);
}

TEST_CASE("clifford spectrum")
{
    const auto r = call({"clifford", "spectrum", "--d", "4", "--lambdas", "1,1"});
    REQUIRE(r.code == kOk);
    CHECK(r.out == "eigenvalue_imag,multiplicity\n-2,1\n0,2\n2,1\n");
    CHECK(call({"clifford", "spectrum", "--d", "2", "--lambdas", "1,1"}).code == kFailure);
}

TEST_CASE("ccdist and dimfit")
{
    auto r = call({"ccdist", d("h3.json"), "--x", "0,0,0", "--y", "1,0,0"});
    REQUIRE(r.code == kOk);
    CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));

    r = call({"dimfit", d("h3.json"), "--cutoff-tau", "40", "--cutoff-kappa", "200", "--cutoff-alpha", "40",
              "--t-lo", "5", "--t-hi", "20"});
    CHECK(r.code == kOk);
    CHECK(nlohmann::json::parse(r.out).contains("exponent"));

    // Cutoffs too small for the window.
    r = call({"dimfit", d("h3.json"), "--t-hi", "400"});
    CHECK(r.code == kFailure);
    CHECK(r.err.find("cutoff") != std::string::npos);
}

TEST_CASE("outputs are deterministic and written atomically")
{
    const auto a = scratch("props-a.csv"), b = scratch("props-b.csv");
    for (const auto& p : {a, b}) {
        fs::remove(p);
        CHECK(call({"--seed", "7", "--out", p.string(), "ccprops", d("h3.json"), "--samples", "2", "--multistart",
                    "2"})
                  .code
              == kOk);
    }
    const auto text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.rfind("property,sample,lhs,rhs,passed", 0) == 0);
    for (const auto& entry : fs::directory_iterator(a.parent_path()))
        CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);

    const auto s1 = call({"spectrum", d("h5.json")});
    const auto s2 = call({"spectrum", d("h5.json")});
    CHECK(s1.out == s2.out);
}
