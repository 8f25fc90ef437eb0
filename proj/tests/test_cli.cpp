#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "commands.hpp"
#include "fftd/io.hpp"

#include <sstream>

using namespace fftd;
using namespace fftd::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run decompose_text(const std::string& text, DecomposeArgs args) {
    std::istringstream in(text);
    std::ostringstream out, err;
    int code = cmd_decompose(args, in, out, err);
    return {code, out.str(), err.str()};
}

const char* example6_text = "6 6\n3 2 3 5 1 2\n1 3 4 2 3 4\n3 2 3 5 5 6\n1 3 4 2 2 1\n2 1 3 2 2 3\n2 1 3 2 2 3\n";

}  // namespace

TEST_CASE("decompose the 6x6 reference example with checking") {
    DecomposeArgs args;
    args.check = true;
    auto r = decompose_text(example6_text, args);
    REQUIRE(r.code == ok);
    auto doc = parse_json(r.out);
    CHECK(doc.rank == 5);
    CHECK(doc.alphas == std::vector<std::string>{"3", "7", "10", "40", "-80"});
    CHECK(doc.verified);
    CHECK(doc.domain == "bigint");
}

TEST_CASE("identity input") {
    DecomposeArgs args;
    args.domain = "int";
    auto r = decompose_text("3 3\n1 0 0\n0 1 0\n0 0 1\n", args);
    REQUIRE(r.code == ok);
    auto doc = parse_json(r.out);
    StringMatrix id{{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}};
    CHECK(doc.L == id);
    CHECK(doc.U == id);
    CHECK_FALSE(doc.verified);
}

TEST_CASE("exit codes") {
    DecomposeArgs args;
    CHECK(decompose_text("2 2\n1 2\n3\n", args).code == parse_failure);
    args.domain = "quaternion";
    CHECK(decompose_text("1 1\n1\n", args).code == parse_failure);
    args.domain = "bigint";
    args.split = "0,1";
    CHECK(decompose_text("1 1\n1\n", args).code == parse_failure);
    args.split = "pow2";
    args.emit = "xml";
    CHECK(decompose_text("1 1\n1\n", args).code == parse_failure);
    args.emit = "json";
    args.input = "/nonexistent/matrix.txt";
    CHECK(decompose_text("", args).code == parse_failure);
}

TEST_CASE("fault injection never verifies") {
    DecomposeArgs args;
    args.check = true;
    args.inject_fault = true;
    for (const char* text : {example6_text, "2 2\n3 2\n1 3\n", "3 2\n1 2\n3 4\n5 6\n"}) {
        auto r = decompose_text(text, args);
        CHECK(r.code == verification_failure);
        CHECK_FALSE(parse_json(r.out).verified);
        CHECK(r.err.find("FAIL") != std::string::npos);
    }
}

TEST_CASE("bruhat and pretty output") {
    DecomposeArgs args;
    args.bruhat = true;
    auto r = decompose_text(example6_text, args);
    REQUIRE(r.code == ok);
    auto doc = parse_json(r.out);
    REQUIRE(doc.bruhat.has_value());
    CHECK(doc.bruhat->SD.P.size() == 6);
    CHECK(decompose_text("2 3\n1 2 3\n4 5 6\n", args).code == parse_failure);

    args.emit = "pretty";
    args.check = true;
    auto p = decompose_text(example6_text, args);
    CHECK(p.code == ok);
    CHECK(p.out.find("-1/3200") != std::string::npos);
    CHECK(p.out.find("verified true") != std::string::npos);
    CHECK(p.out.find("S·A = V · SD · U") != std::string::npos);
}

TEST_CASE("other domains through the command") {
    DecomposeArgs args;
    args.check = true;
    args.domain = "poly";
    CHECK(decompose_text("3 3\nx 1 0\nx^2 x+1 2\n1 0 x^2-1\n", args).code == ok);
    args.domain = "rational";
    CHECK(decompose_text("2 2\n1/2 1/3\n1/4 1/5\n", args).code == ok);
}

TEST_CASE("bench is deterministic") {
    BenchArgs args;
    args.sizes = {4, 8, 16};
    args.seed = 42;
    auto a = run_bench(args);
    auto b = run_bench(args);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a[i].checksum == b[i].checksum);
        CHECK(a[i].max_bits == b[i].max_bits);
        CHECK(a[i].size == args.sizes[i]);
    }
    args.seed = 43;
    CHECK(run_bench(args)[2].checksum != a[2].checksum);
    std::ostringstream out, err;
    CHECK(cmd_bench(args, out, err) == ok);
    auto csv = out.str();
    CHECK(csv.rfind("size,seconds,max_bits,ratio,checksum\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
