#include "commands.hpp"

#include "fftd/io.hpp"
#include "fftd/oracle.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fftd::cli {

namespace {

template <typename F>
auto with_domain(const std::string& name, F&& f) {
    if (name == "int") return f(Int64{});
    if (name == "bigint") return f(BigInt{});
    if (name == "rational") return f(Rational{});
    if (name == "poly") return f(Poly{});
    throw std::invalid_argument("unknown domain '" + name + "'");
}

std::string read_all(const std::string& path, std::istream& in) {
    std::ostringstream os;
    if (path == "-") {
        os << in.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw ParseError("cannot open '" + path + "'");
        os << f.rdbuf();
    }
    return os.str();
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h ^ 0xff;
}

template <Domain T>
std::uint64_t checksum(const Factorization<T>& f) {
    std::uint64_t h = 14695981039346656037ULL;
    for (auto i : f.P.images()) h = fnv1a(h, std::to_string(i));
    for (auto i : f.Q.images()) h = fnv1a(h, std::to_string(i));
    for (const auto& v : f.L.data()) h = fnv1a(h, to_string(v));
    for (const auto& v : f.U.data()) h = fnv1a(h, to_string(v));
    for (const auto& v : f.alphas) h = fnv1a(h, to_string(v));
    return h;
}

template <Domain T>
std::size_t max_bits(const Factorization<T>& f) {
    std::size_t b = 0;
    for (const auto& v : f.L.data()) b = std::max(b, DomainTraits<T>::bit_size(v));
    for (const auto& v : f.U.data()) b = std::max(b, DomainTraits<T>::bit_size(v));
    return b;
}

template <Domain T>
int decompose_as(const DecomposeArgs& args, const std::string& text, std::ostream& out, std::ostream& err) {
    Matrix<T> a;
    LduOptions<T> opt;
    try {
        a = parse_matrix<T>(text);
        opt.policy = SplitPolicy::parse(args.split);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return parse_failure;
    }
    opt.parallel = args.parallel;
    Factorization<T> f;
    std::optional<BruhatFactors<T>> br;
    try {
        f = decompose(a, opt);
        if (args.bruhat) {
            if (a.rows() != a.cols()) {
                err << "error: --bruhat needs a square matrix\n";
                return parse_failure;
            }
            br = bruhat(a, opt);
        }
    } catch (const NotDivisible& e) {
        err << "internal error: " << e.what() << "\n";
        return internal_failure;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return internal_failure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return internal_failure;
    }
    if (args.inject_fault && f.L.rows() > 0) {
        auto& v = f.L(f.L.rows() - 1, 0);
        v = v + DomainTraits<T>::one();
    }
    bool verified = false;
    if (args.check) {
        auto rep = verify(a, f);
        verified = rep.ok();
        if (!verified) err << rep.summary();
    }
    if (args.emit == "pretty") {
        out << pretty(f);
        out << "rank " << f.rank() << "\n";
        if (br) {
            out << "\nS·A = V · SD · U\n";
            out << layout_product({{"V", io_detail::strings(br->V)},
                                   {"SD", io_detail::strings(br->SD)},
                                   {"U", io_detail::strings(br->U)}});
        }
        if (args.check) out << "verified " << (verified ? "true" : "false") << "\n";
    } else {
        auto doc = make_document(f);
        if (br) doc.bruhat = bruhat_document(*br);
        doc.verified = verified;
        out << emit_json(doc);
    }
    if (args.check && !verified) return verification_failure;
    return ok;
}

template <Domain T>
std::vector<BenchRow> bench_as(const BenchArgs& args) {
    std::mt19937_64 rng(args.seed);
    std::uniform_int_distribution<int> dist(args.low, args.high);
    LduOptions<T> opt;
    opt.policy = SplitPolicy::parse(args.split);
    opt.parallel = args.parallel;
    std::vector<BenchRow> rows;
    for (auto n : args.sizes) {
        Matrix<T> a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = DomainTraits<T>::from_int(dist(rng));
        auto t0 = std::chrono::steady_clock::now();
        auto f = decompose(a, opt);
        auto t1 = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(t1 - t0).count();
        double ratio = rows.empty() || rows.back().seconds <= 0 ? 0.0 : s / rows.back().seconds;
        rows.push_back({n, s, max_bits(f), ratio, checksum(f)});
    }
    return rows;
}

}  // namespace

int cmd_decompose(const DecomposeArgs& args, std::istream& in, std::ostream& out, std::ostream& err) {
    if (args.emit != "json" && args.emit != "pretty") {
        err << "error: --emit must be json or pretty\n";
        return parse_failure;
    }
    std::string text;
    try {
        text = read_all(args.input, in);
        return with_domain(args.domain, [&](auto tag) {
            return decompose_as<decltype(tag)>(args, text, out, err);
        });
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return parse_failure;
    }
}

std::vector<BenchRow> run_bench(const BenchArgs& args) {
    return with_domain(args.domain, [&](auto tag) { return bench_as<decltype(tag)>(args); });
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    std::vector<BenchRow> rows;
    try {
        rows = run_bench(args);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return parse_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return internal_failure;
    }
    out << "size,seconds,max_bits,ratio,checksum\n";
    for (const auto& r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu,%.6f,%zu,%.3f,%016llx\n", r.size, r.seconds, r.max_bits, r.ratio,
                      static_cast<unsigned long long>(r.checksum));
        out << buf;
    }
    return ok;
}

}  // namespace fftd::cli
