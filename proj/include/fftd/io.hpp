#ifndef FFTD_IO_HPP
#define FFTD_IO_HPP

#include "fftd/derive.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fftd {

using StringMatrix = std::vector<std::vector<std::string>>;

struct FractionText {
    std::string num;
    std::string den;
    friend bool operator==(const FractionText&, const FractionText&) = default;
};

/// Permuted diagonal P·diag·Q.
struct PermutedDiagonal {
    std::vector<std::size_t> P;
    std::vector<FractionText> D;
    std::vector<std::size_t> Q;
    friend bool operator==(const PermutedDiagonal&, const PermutedDiagonal&) = default;
};

struct BruhatDocument {
    StringMatrix V;
    PermutedDiagonal SD;
    StringMatrix U;
    friend bool operator==(const BruhatDocument&, const BruhatDocument&) = default;
};

struct FactorsDocument {
    std::string domain;
    std::size_t rank = 0;
    std::vector<std::string> alphas;
    std::vector<std::size_t> P;
    std::vector<std::size_t> Q;
    StringMatrix L;
    StringMatrix U;
    std::vector<FractionText> D;
    std::optional<StringMatrix> M;
    std::optional<StringMatrix> W;
    std::optional<BruhatDocument> bruhat;
    bool verified = false;
    friend bool operator==(const FactorsDocument&, const FactorsDocument&) = default;
};

std::string emit_json(const FactorsDocument& doc);
/// Throws ParseError on malformed or incomplete documents.
FactorsDocument parse_json(std::string_view text);

/// Whitespace-separated tokens with 1-based line/column positions.
struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
};
std::vector<Token> tokenize(std::string_view text);

/// Side-by-side layout of labelled blocks, separated by " · ".
std::string layout_product(const std::vector<std::pair<std::string, StringMatrix>>& blocks);

namespace io_detail {

template <typename E>
StringMatrix strings(const Matrix<E>& m) {
    StringMatrix s(m.rows(), std::vector<std::string>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s[i][j] = DomainTraits<E>::to_string(m(i, j));
    return s;
}

template <Domain T>
Matrix<T> elements(const StringMatrix& s, std::size_t rows, std::size_t cols, const char* what) {
    if (s.size() != rows) throw ParseError(std::string(what) + ": wrong row count", 0, 0);
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (s[i].size() != cols) throw ParseError(std::string(what) + ": wrong column count", 0, 0);
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_element<T>(s[i][j]);
    }
    return m;
}

template <Domain T>
std::vector<FractionText> diagonal_text(const DiagonalSpec<T>& spec) {
    std::vector<FractionText> d;
    auto fm = materialize_D(spec);
    for (std::size_t t = 0; t < std::min(spec.rows, spec.cols); ++t)
        d.push_back({to_string(fm(t, t).num()), to_string(fm(t, t).den())});
    return d;
}

}  // namespace io_detail

/// Reads "rows cols" followed by rows·cols element literals.
template <Domain T>
Matrix<T> parse_matrix(std::string_view text) {
    auto toks = tokenize(text);
    if (toks.size() < 2) throw ParseError("missing \"rows cols\" header", toks.empty() ? 1 : toks[0].line, 1);
    auto dim = [](const Token& t) {
        std::size_t v = 0;
        for (char c : t.text) {
            if (c < '0' || c > '9') throw ParseError("bad dimension '" + t.text + "'", t.line, t.column);
            v = v * 10 + std::size_t(c - '0');
        }
        return v;
    };
    const std::size_t rows = dim(toks[0]), cols = dim(toks[1]);
    if (toks.size() - 2 != rows * cols) {
        const auto& last = toks.back();
        throw ParseError("expected " + std::to_string(rows * cols) + " elements, found " +
                             std::to_string(toks.size() - 2),
                         last.line, last.column);
    }
    Matrix<T> m(rows, cols);
    for (std::size_t k = 0; k < rows * cols; ++k) {
        const auto& t = toks[k + 2];
        try {
            m(k / cols, k % cols) = parse_element<T>(t.text);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), t.line, t.column + e.column());
        } catch (const std::exception& e) {
            throw ParseError(e.what(), t.line, t.column);
        }
    }
    return m;
}

template <Domain T>
std::string format_matrix(const Matrix<T>& m) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? " " : "") + to_string(m(i, j));
        out += "\n";
    }
    return out;
}

template <Domain T>
BruhatDocument bruhat_document(const BruhatFactors<T>& b) {
    return {io_detail::strings(b.V),
            {b.SD_rows.images(), io_detail::diagonal_text(b.SD_diag), b.SD_cols.images()},
            io_detail::strings(b.U)};
}

template <Domain T>
FactorsDocument make_document(const Factorization<T>& f, bool with_mw = true) {
    FactorsDocument doc;
    doc.domain = DomainTraits<T>::name;
    doc.rank = f.rank();
    for (const auto& a : f.alphas) doc.alphas.push_back(to_string(a));
    doc.P = f.P.images();
    doc.Q = f.Q.images();
    doc.L = io_detail::strings(f.L);
    doc.U = io_detail::strings(f.U);
    doc.D = io_detail::diagonal_text(f.diagonal());
    if (with_mw) {
        doc.M = io_detail::strings(f.M);
        doc.W = io_detail::strings(f.W);
    }
    return doc;
}

/// Inverse of make_document; M and W are empty when absent.
template <Domain T>
Factorization<T> factorization_from_document(const FactorsDocument& doc) {
    if (doc.domain != DomainTraits<T>::name) throw ParseError("document domain is " + doc.domain, 0, 0);
    if (doc.alphas.size() != doc.rank) throw ParseError("rank does not match alphas", 0, 0);
    Factorization<T> f;
    const std::size_t n = doc.P.size(), m = doc.Q.size();
    try {
        f.P = Permutation(doc.P);
        f.Q = Permutation(doc.Q);
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad permutation: ") + e.what(), 0, 0);
    }
    for (const auto& a : doc.alphas) f.alphas.push_back(parse_element<T>(a));
    f.L = io_detail::elements<T>(doc.L, n, n, "L");
    f.U = io_detail::elements<T>(doc.U, m, m, "U");
    if (doc.M) f.M = io_detail::elements<T>(*doc.M, doc.rank, doc.rank, "M");
    if (doc.W) f.W = io_detail::elements<T>(*doc.W, doc.rank, doc.rank, "W");
    return f;
}

/// The five factors side by side: P · L · D · U · Q.
template <Domain T>
std::string pretty(const Factorization<T>& f) {
    using io_detail::strings;
    return layout_product({{"P", strings(f.P.template to_matrix<T>())},
                           {"L", strings(f.L)},
                           {"D", strings(materialize_D(f.diagonal()))},
                           {"U", strings(f.U)},
                           {"Q", strings(f.Q.template to_matrix<T>())}});
}

}  // namespace fftd

#endif
