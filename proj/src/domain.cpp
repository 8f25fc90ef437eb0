#include "fftd/domain.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>

namespace fftd {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

/// Optional sign followed by decimal digits.
bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    return all_digits(s);
}

BigInt parse_bigint(std::string_view s) {
    if (!is_integer_literal(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
    if (s.front() == '+') s.remove_prefix(1);
    return BigInt(std::string(s), 10);
}

}  // namespace

// ---------------------------------------------------------------------------
// Int64

Int64 DomainTraits<Int64>::exact_div(Int64 a, Int64 b) {
    if (b.value() == 0) throw ZeroDivisor("division by zero");
    if (b.value() == -1 && a.value() == std::numeric_limits<std::int64_t>::min())
        throw Overflow("int64 overflow in div");
    if (a.value() % b.value() != 0)
        throw NotDivisible(std::to_string(a.value()) + " is not divisible by " + std::to_string(b.value()));
    return a.value() / b.value();
}

Int64 DomainTraits<Int64>::parse(std::string_view s) {
    BigInt v = parse_bigint(s);
    if (!v.fits_slong_p()) throw ParseError("integer out of int64 range: '" + std::string(s) + "'");
    return static_cast<std::int64_t>(v.get_si());
}

void DomainTraits<Int64>::normalize(Int64& num, Int64& den) {
    if (den.value() == 0) throw ZeroDivisor("zero denominator");
    std::int64_t g = std::gcd(num.value(), den.value());
    if (g != 0 && g != 1) {
        num = num.value() / g;
        den = den.value() / g;
    }
    if (den.value() < 0) {
        num = -num;
        den = -den;
    }
}

std::size_t DomainTraits<Int64>::bit_size(Int64 a) {
    auto v = a.value();
    std::uint64_t u = v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
    return u == 0 ? 0 : 64 - static_cast<std::size_t>(__builtin_clzll(u));
}

// ---------------------------------------------------------------------------
// BigInt

BigInt DomainTraits<BigInt>::exact_div(const BigInt& a, const BigInt& b) {
    if (sgn(b) == 0) throw ZeroDivisor("division by zero");
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
        throw NotDivisible(a.get_str() + " is not divisible by " + b.get_str());
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt DomainTraits<BigInt>::parse(std::string_view s) { return parse_bigint(s); }

void DomainTraits<BigInt>::normalize(BigInt& num, BigInt& den) {
    if (sgn(den) == 0) throw ZeroDivisor("zero denominator");
    BigInt g = gcd(num, den);
    if (g != 1 && sgn(g) != 0) {
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    }
    if (sgn(den) < 0) {
        num = -num;
        den = -den;
    }
}

std::size_t DomainTraits<BigInt>::bit_size(const BigInt& a) {
    return sgn(a) == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2);
}

// ---------------------------------------------------------------------------
// Rational

Rational DomainTraits<Rational>::exact_div(const Rational& a, const Rational& b) {
    if (sgn(b) == 0) throw ZeroDivisor("division by zero");
    return Rational(a / b);
}

Rational DomainTraits<Rational>::parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(s));
    auto den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("bad rational denominator: '" + std::string(s) + "'");
    BigInt num = parse_bigint(s.substr(0, slash));
    BigInt den(std::string(den_text), 10);
    if (sgn(den) == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

void DomainTraits<Rational>::normalize(Rational& num, Rational& den) {
    if (sgn(den) == 0) throw ZeroDivisor("zero denominator");
    num /= den;
    den = 1;
}

std::size_t DomainTraits<Rational>::bit_size(const Rational& a) {
    return std::max(DomainTraits<BigInt>::bit_size(a.get_num()), DomainTraits<BigInt>::bit_size(a.get_den()));
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(long c) : c_{BigInt(c)} { trim(); }

Poly::Poly(const BigInt& c) : c_{c} { trim(); }

Poly::Poly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(std::size_t k, const BigInt& c) {
    std::vector<BigInt> v(k + 1, BigInt(0));
    v[k] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Poly(std::move(r));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly Poly::exact_div(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw ZeroDivisor("division by the zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree())
        throw NotDivisible(a.to_string() + " is not divisible by " + b.to_string());
    std::vector<BigInt> rem = a.c_;
    std::vector<BigInt> quot(a.c_.size() - b.c_.size() + 1, BigInt(0));
    const BigInt& lead = b.leading();
    for (std::size_t k = quot.size(); k-- > 0;) {
        BigInt& top = rem[k + b.c_.size() - 1];
        if (sgn(top) == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
            throw NotDivisible(a.to_string() + " is not divisible by " + b.to_string());
        BigInt q;
        mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= q * b.c_[j];
        quot[k] = q;
    }
    if (std::any_of(rem.begin(), rem.end(), [](const BigInt& c) { return sgn(c) != 0; }))
        throw NotDivisible(a.to_string() + " is not divisible by " + b.to_string());
    return Poly(std::move(quot));
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const BigInt& c = c_[k];
        if (sgn(c) == 0) continue;
        BigInt mag = abs(c);
        if (sgn(c) < 0)
            out += '-';
        else if (!out.empty())
            out += '+';
        if (k == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1) out += mag.get_str() + "*";
        out += 'x';
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

Poly Poly::parse(std::string_view text) {
    // term := [sign] ( digits ['*'] 'x' ['^' digits] | digits | 'x' ['^' digits] )
    if (text.empty()) throw ParseError("empty polynomial literal");
    Poly result;
    std::size_t i = 0;
    auto fail = [&](const char* why) {
        throw ParseError(std::string(why) + " in polynomial '" + std::string(text) + "' at offset "
                         + std::to_string(i));
    };
    auto read_digits = [&]() {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        return text.substr(start, i - start);
    };
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        BigInt coeff = 1;
        std::size_t exponent = 0;
        auto digits = read_digits();
        bool has_coeff = !digits.empty();
        if (has_coeff) coeff = BigInt(std::string(digits), 10);
        if (i < text.size() && text[i] == '*') {
            if (!has_coeff) fail("'*' without coefficient");
            ++i;
            if (i >= text.size() || text[i] != 'x') fail("expected 'x' after '*'");
        }
        if (i < text.size() && text[i] == 'x') {
            ++i;
            exponent = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                auto e = read_digits();
                if (e.empty()) fail("expected exponent after '^'");
                exponent = std::stoul(std::string(e));
            }
        } else if (!has_coeff) {
            fail("expected coefficient or 'x'");
        }
        result += Poly::monomial(exponent, sign * coeff);
    }
    return result;
}

void DomainTraits<Poly>::normalize(Poly& num, Poly& den) {
    if (den.is_zero()) throw ZeroDivisor("zero denominator");
    if (sgn(den.leading()) < 0) {
        num = -num;
        den = -den;
    }
    // Constant denominators can be cleared against the content of the numerator.
    if (den.degree() == 0) {
        BigInt g = den.leading();
        for (const auto& c : num.coeffs()) g = gcd(g, c);
        if (g != 1) {
            std::vector<BigInt> n = num.coeffs();
            for (auto& c : n) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
            num = Poly(std::move(n));
            den = Poly(BigInt(den.leading() / g));
        }
    }
}

std::size_t DomainTraits<Poly>::bit_size(const Poly& a) {
    std::size_t best = 0;
    for (const auto& c : a.coeffs()) best = std::max(best, DomainTraits<BigInt>::bit_size(c));
    return best;
}

}  // namespace fftd
