#ifndef FFTD_TOOLS_COMMANDS_HPP
#define FFTD_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fftd::cli {

enum Exit : int { ok = 0, parse_failure = 1, verification_failure = 2, internal_failure = 3 };

struct DecomposeArgs {
    std::string input = "-";
    std::string domain = "bigint";
    std::string split = "pow2";
    std::string emit = "json";
    bool check = false;
    bool bruhat = false;
    bool parallel = false;
    /// Perturbs L(last, 0) by one before checking; exercises the failure path.
    bool inject_fault = false;
};

struct BenchArgs {
    std::vector<std::size_t> sizes{16, 32, 64};
    std::string domain = "bigint";
    std::string split = "pow2";
    std::uint64_t seed = 1;
    int low = -9;
    int high = 9;
    bool parallel = false;
};

struct BenchRow {
    std::size_t size;
    double seconds;
    std::size_t max_bits;
    double ratio;  ///< seconds / previous row's seconds, 0 for the first row
    std::uint64_t checksum;
};

int cmd_decompose(const DecomposeArgs& args, std::istream& in, std::ostream& out, std::ostream& err);

std::vector<BenchRow> run_bench(const BenchArgs& args);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

}  // namespace fftd::cli

#endif
