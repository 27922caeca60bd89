#include "loopalg/cli.hpp"

#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = loopalg::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("expand prints canonical series") {
    auto r = cli({"expand", "x\\1", "--degree", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 - x + (x*x) - (x*(x*x)) + (x*(x*(x*x)))\n");

    auto one = cli({"expand", "1", "--degree", "3"});
    CHECK(one.code == 0);
    CHECK(one.out == "1\n");

    auto comm = cli({"expand", "(y*x)\\(x*y)", "--degree", "2"});
    CHECK(comm.code == 0);
    CHECK(comm.out == "1 + (x*y) - (y*x)\n");
}

TEST_CASE("expand records mode lists monomial/num/den triples") {
    auto r = cli({"expand", "x\\1", "--degree", "2", "--format", "records"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"den\":\"1\",\"monomial\":\"1\",\"num\":\"1\"}\n"
                   "{\"den\":\"1\",\"monomial\":\"x\",\"num\":\"-1\"}\n"
                   "{\"den\":\"1\",\"monomial\":\"(x*x)\",\"num\":\"1\"}\n");
}

TEST_CASE("expand reports parse errors on exit code 2") {
    auto r = cli({"expand", "x*("});
    CHECK(r.code == 2);
    CHECK(r.err.find("parse error") != std::string::npos);

    auto unknown = cli({"expand", "x*q", "--vars", "x"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("unknown identifier") != std::string::npos);
}

TEST_CASE("taylor prints a coefficient map") {
    auto r = cli({"taylor", "x*y", "--order", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "{x:1, y:1, (x*y):1}\n");

    auto inv = cli({"taylor", "x\\1", "--order", "3"});
    CHECK(inv.code == 0);
    CHECK(inv.out == "{x:-1, (x*x):1, (x*(x*x)):-1} + O(4)\n");
}

TEST_CASE("pop prints primitive operations on fresh generators") {
    auto r = cli({"pop", "--r", "1", "--s", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "((x1*y1)*z) - (x1*(y1*z))\n");
}

TEST_CASE("deviation subcommand and its alias") {
    auto r = cli({"deviation", "--args", "a,b,c", "--idx", ""});
    CHECK(r.code == 0);
    CHECK(r.out == "(a*(b*c)) \\ ((a*b)*c)\n");

    auto level1 = cli({"dev", "--args", "a,b,c,d", "--idx", "1"});
    CHECK(level1.code == 0);
    // ((a,c,d)(b,c,d)) \ (ab,c,d)
    CHECK(level1.out ==
          "(((a*(c*d))\\((a*c)*d))*((b*(c*d))\\((b*c)*d))) \\ "
          "(((a*b)*(c*d))\\(((a*b)*c)*d))\n");

    auto bad = cli({"deviation", "--args", "a,b,c", "--idx", "1"});
    CHECK(bad.code == 2);
}

TEST_CASE("P subcommand builds the nested deviation") {
    auto p11 = cli({"P", "--m", "1", "--n", "1"});
    CHECK(p11.code == 0);
    CHECK(p11.out == "(x1*(y1*z)) \\ ((x1*y1)*z)\n");

    auto p21 = cli({"P", "--m", "2", "--n", "1"});
    CHECK(p21.code == 0);
    CHECK(p21.out ==
          "(((x1*(y1*z))\\((x1*y1)*z))*((x2*(y1*z))\\((x2*y1)*z))) \\ "
          "(((x1*x2)*(y1*z))\\(((x1*x2)*y1)*z))\n");
}

TEST_CASE("verify subcommand exit codes and determinism") {
    auto ok = cli({"verify", "axioms", "--degree", "5", "--cases", "4", "--seed", "9"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("4 cases: 4 pass, 0 fail, 0 inconclusive") != std::string::npos);

    auto rec1 = cli({"verify", "grading", "--cases", "5", "--seed", "11", "--format",
                     "records"});
    auto rec2 = cli({"verify", "grading", "--cases", "5", "--seed", "11", "--format",
                     "records", "--jobs", "2"});
    CHECK(rec1.code == 0);
    CHECK(rec1.out == rec2.out); // byte-identical, independent of scheduling
    CHECK(rec1.out.find("\"millis\":null") != std::string::npos);

    auto guard = cli({"verify", "grancosa", "--m", "9", "--n", "9"});
    CHECK(guard.code == 2);
    CHECK(guard.err.find("resource guard") != std::string::npos);

    auto small = cli({"verify", "grancosa", "--m", "1", "--n", "1"});
    CHECK(small.code == 0);

    auto unknown = cli({"verify", "nonsense"});
    CHECK(unknown.code == 2);
}

TEST_CASE("help exits zero") {
    auto r = cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("expand") != std::string::npos);
}
