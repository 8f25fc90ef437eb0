#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace fftd::cli;
    CLI::App app{"Fraction-free recursive LDU decomposition"};
    app.require_subcommand(1);

    DecomposeArgs dec;
    auto* d = app.add_subcommand("decompose", "Decompose a matrix file as P·L·D·U·Q");
    d->add_option("--input", dec.input, "Matrix file ('-' for standard input)");
    d->add_option("--domain", dec.domain, "Element domain")
        ->check(CLI::IsMember({"int", "bigint", "rational", "poly"}));
    d->add_option("--split", dec.split, "pow2, half, or a block-size schedule such as 4,2");
    d->add_option("--emit", dec.emit, "Output format")->check(CLI::IsMember({"json", "pretty"}));
    d->add_flag("--check", dec.check, "Verify the factors against brute-force oracles");
    d->add_flag("--bruhat", dec.bruhat, "Also derive the Bruhat form of S·A");
    d->add_flag("--parallel", dec.parallel, "Evaluate independent branches concurrently");
    d->add_flag("--inject-fault", dec.inject_fault)->group("");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Time decompositions of random square matrices (CSV)");
    b->add_option("--sizes", bench.sizes, "Comma separated sizes")->delimiter(',');
    b->add_option("--domain", bench.domain, "Element domain")
        ->check(CLI::IsMember({"int", "bigint", "rational", "poly"}));
    b->add_option("--split", bench.split, "Split policy");
    b->add_option("--seed", bench.seed, "Random seed");
    b->add_flag("--parallel", bench.parallel, "Evaluate independent branches concurrently");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse_failure;
    }

    if (*d) return cmd_decompose(dec, std::cin, std::cout, std::cerr);
    return cmd_bench(bench, std::cout, std::cerr);
}
