#include <doctest.h>

#include <sstream>

#include "ratinterp/cli.hpp"

using namespace ratinterp;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "ratinterp");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string &name)
{
    return std::string(RATINTERP_TEST_DATA) + "/" + name;
}

std::vector<std::string> lines(const std::string &s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

// Drops the time_ms and base_time_ms columns of a bench CSV line.
std::string without_times(const std::string &line)
{
    std::vector<std::string> cells;
    std::istringstream in(line);
    for (std::string c; std::getline(in, c, ',');) {
        cells.push_back(c);
    }
    REQUIRE(cells.size() == 12);
    cells[7].clear();
    cells[11].clear();
    std::string joined;
    for (const auto &c : cells) {
        joined += c + ',';
    }
    return joined;
}

} // namespace

TEST_CASE("interpolate with one query")
{
    const auto r = run({"interpolate", "--algo", "urf1", "--input", data("x_plus_1_over_x_minus_1.json"), "--T", "2",
                        "--C", "1"});
    CHECK(r.code == kExitOk);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "(1*x1^0+1*x1^1)/(-1*x1^0+1*x1^1)");
    CHECK(l[1].rfind("queries=1 mu=2 time_ms=", 0) == 0);
}

TEST_CASE("interpolate with two queries")
{
    for (const char *algo : {"urf2", "urfp"}) {
        const auto r = run({"interpolate", "--algo", algo, "--input", data("x_plus_1_over_x_minus_1.json"), "--T", "2",
                            "--D", "1", "--C", "1"});
        CAPTURE(algo);
        CHECK(r.code == kExitOk);
        const auto l = lines(r.out);
        REQUIRE(l.size() == 2);
        CHECK(l[0] == "(1*x1^0+1*x1^1)/(-1*x1^0+1*x1^1)");
        CHECK(l[1].rfind("queries=2 ", 0) == 0);
    }
}

TEST_CASE("multivariate interpolation")
{
    const std::string expected = "(-1*x1^1*x2^0-1*x1^0*x2^1)/(-1*x1^1*x2^0+1*x1^0*x2^1)";
    const auto one = run({"interpolate", "--algo", "mrf1", "--input", data("sum_over_difference.json"), "--T", "2",
                          "--D", "1", "--C", "1", "--validate-extra", "5"});
    CHECK(one.code == kExitOk);
    CHECK(lines(one.out).at(0) == expected);
    CHECK(lines(one.out).at(1).rfind("queries=1 ", 0) == 0);
    const auto two = run({"interpolate", "--algo", "mrf2", "--input", data("sum_over_difference.json"), "--D", "1",
                          "--Dn", "1", "--C", "1"});
    CHECK(two.code == kExitOk);
    CHECK(lines(two.out).at(0) == expected);
}

TEST_CASE("bad input exits with 3")
{
    CHECK(run({"interpolate", "--algo", "urf1", "--input", data("malformed.json"), "--T", "2", "--C", "1"}).code
          == kExitBadInput);
    CHECK(run({"interpolate", "--algo", "urf1", "--input", data("zero_denominator.json"), "--T", "2", "--C", "1"}).code
          == kExitBadInput);
    CHECK(run({"interpolate", "--algo", "urf1", "--input", data("missing.json"), "--T", "2", "--C", "1"}).code
          == kExitBadInput);
    const auto no_d = run({"interpolate", "--algo", "urfp", "--input", data("x_plus_1_over_x_minus_1.json"), "--C", "1"});
    CHECK(no_d.code == kExitBadInput);
    CHECK(no_d.err.find("--D") != std::string::npos);
    CHECK(run({"interpolate", "--algo", "nope", "--input", data("x_plus_1_over_x_minus_1.json")}).code == kExitBadInput);
    CHECK(run({"interpolate", "--algo", "urf1", "--input", data("sum_over_difference.json"), "--T", "2", "--C", "1"})
              .code
          == kExitBadInput);
    CHECK(run({"interpolate", "--algo", "urf1", "--input", data("x_plus_1_over_x_minus_1.json"), "--T", "2", "--C",
               "abc"})
              .code
          == kExitBadInput);
    CHECK(run({}).code == kExitBadInput);
    CHECK(run({"frobnicate"}).code == kExitBadInput);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("wrong bounds exit with 2")
{
    // One term with unit coefficients cannot describe 2(x + 1)/(2(x - 1)).
    const auto r = run({"interpolate", "--algo", "urf1", "--input", data("x_plus_1_over_x_minus_1.json"), "--T", "1",
                        "--C", "1", "--max-iter", "100"});
    CHECK(r.code == kExitNoResult);
}

TEST_CASE("bench output")
{
    const std::vector<std::string> args{"bench", "--algo", "urf2", "--vary", "T", "--values", "2,4,8", "--fixed",
                                        "D=20,C=10", "--trials", "5", "--seed", "7"};
    const auto a = run(args);
    REQUIRE(a.code == kExitOk);
    const auto la = lines(a.out);
    REQUIRE(la.size() == 16);
    CHECK(la[0] == "algo,n,T,D,C,seed,trial,time_ms,queries,mu,success,base_time_ms");
    for (std::size_t i = 1; i < la.size(); ++i) {
        CHECK(la[i].rfind("urf2,1,", 0) == 0);
    }

    auto parallel = args;
    parallel.insert(parallel.end(), {"--jobs", "3"});
    const auto b = run(parallel);
    REQUIRE(b.code == kExitOk);
    const auto lb = lines(b.out);
    REQUIRE(lb.size() == la.size());
    for (std::size_t i = 1; i < la.size(); ++i) {
        CHECK(without_times(la[i]) == without_times(lb[i]));
    }
}

TEST_CASE("bench argument errors")
{
    CHECK(run({"bench", "--algo", "urf2", "--vary", "T", "--values", "2", "--fixed", "T=3,D=20,C=10"}).code
          == kExitBadInput);
    CHECK(run({"bench", "--algo", "urf2", "--vary", "T", "--values", "2", "--fixed", "D=20,D=3,C=10"}).code
          == kExitBadInput);
    CHECK(run({"bench", "--algo", "urf2", "--vary", "Q", "--values", "2", "--fixed", "D=20,C=10"}).code
          == kExitBadInput);
    CHECK(run({"bench", "--algo", "urf2", "--vary", "T", "--values", "2,x", "--fixed", "D=20,C=10"}).code
          == kExitBadInput);
    CHECK(run({"bench", "--algo", "urf2", "--vary", "T", "--values", "2", "--fixed", "D=20"}).code == kExitBadInput);
}

TEST_CASE("selftest subset")
{
    const auto r = run({"selftest", "--quick", "--only", "3,6"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("criterion  3 PASS") != std::string::npos);
    CHECK(r.out.find("criterion  6 PASS") != std::string::npos);
}
