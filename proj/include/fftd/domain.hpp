#ifndef FFTD_DOMAIN_HPP
#define FFTD_DOMAIN_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fftd {

/*
 * Commutative domains with exact division.
 *
 * Every element type T used by the engine provides the ring operators
 * (+, -, *, unary -, ==) and a DomainTraits<T> specialization with
 * zero/one, zero test, exact division, and text conversion.
 *
 * Instances:
 *   Int64     - 64-bit integers, every operation overflow-checked
 *   BigInt    - arbitrary precision integers (GMP)
 *   Rational  - arbitrary precision rationals (GMP), used for verification
 *   Poly      - dense univariate polynomials with BigInt coefficients
 */

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when exact_div is asked for a quotient that does not exist in R.
/// Inside the engine this always means a bug: divisibility is guaranteed.
class NotDivisible : public DomainError {
public:
    using DomainError::DomainError;
};

class ZeroDivisor : public DomainError {
public:
    using DomainError::DomainError;
};

/// Fixed-width overflow; switch to the bigint domain.
class Overflow : public DomainError {
public:
    using DomainError::DomainError;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ", column "
                                        + std::to_string(column) + ")"
                                  : what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// ---------------------------------------------------------------------------
// Int64

class Int64 {
public:
    constexpr Int64() = default;
    constexpr Int64(std::int64_t v) : v_(v) {}  // NOLINT: implicit by design of literals

    constexpr std::int64_t value() const noexcept { return v_; }

    friend Int64 operator+(Int64 a, Int64 b) {
        std::int64_t r;
        if (__builtin_add_overflow(a.v_, b.v_, &r)) throw Overflow("int64 overflow in add");
        return r;
    }
    friend Int64 operator-(Int64 a, Int64 b) {
        std::int64_t r;
        if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw Overflow("int64 overflow in sub");
        return r;
    }
    friend Int64 operator*(Int64 a, Int64 b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw Overflow("int64 overflow in mul");
        return r;
    }
    Int64 operator-() const { return Int64(0) - *this; }
    Int64& operator+=(Int64 o) { return *this = *this + o; }
    Int64& operator-=(Int64 o) { return *this = *this - o; }
    Int64& operator*=(Int64 o) { return *this = *this * o; }

    friend bool operator==(Int64 a, Int64 b) = default;

private:
    std::int64_t v_ = 0;
};

using BigInt = mpz_class;
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Poly

/// Dense polynomial in x over the integers. Coefficients lowest degree first,
/// never with a trailing zero; the zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    Poly(long c);  // NOLINT
    Poly(const BigInt& c);  // NOLINT
    explicit Poly(std::vector<BigInt> coeffs);

    /// x^k
    static Poly monomial(std::size_t k, const BigInt& c = 1);

    const std::vector<BigInt>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const BigInt& leading() const { return c_.back(); }

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Quotient q with a = b*q; NotDivisible when the remainder is nonzero.
    static Poly exact_div(const Poly& a, const Poly& b);

    std::string to_string() const;
    static Poly parse(std::string_view text);

private:
    void trim();
    std::vector<BigInt> c_;
};

// ---------------------------------------------------------------------------
// Traits

template <typename T>
struct DomainTraits;

template <>
struct DomainTraits<Int64> {
    static constexpr std::string_view name = "int";
    static Int64 zero() { return 0; }
    static Int64 one() { return 1; }
    static Int64 from_int(long v) { return v; }
    static bool is_zero(Int64 a) { return a.value() == 0; }
    static Int64 exact_div(Int64 a, Int64 b);
    static std::string to_string(Int64 a) { return std::to_string(a.value()); }
    static Int64 parse(std::string_view s);
    /// Reduce num/den by their gcd, denominator positive.
    static void normalize(Int64& num, Int64& den);
    static std::size_t bit_size(Int64 a);
};

template <>
struct DomainTraits<BigInt> {
    static constexpr std::string_view name = "bigint";
    static BigInt zero() { return 0; }
    static BigInt one() { return 1; }
    static BigInt from_int(long v) { return v; }
    static bool is_zero(const BigInt& a) { return sgn(a) == 0; }
    static BigInt exact_div(const BigInt& a, const BigInt& b);
    static std::string to_string(const BigInt& a) { return a.get_str(); }
    static BigInt parse(std::string_view s);
    static void normalize(BigInt& num, BigInt& den);
    static std::size_t bit_size(const BigInt& a);
};

template <>
struct DomainTraits<Rational> {
    static constexpr std::string_view name = "rational";
    static Rational zero() { return 0; }
    static Rational one() { return 1; }
    static Rational from_int(long v) { return v; }
    static bool is_zero(const Rational& a) { return sgn(a) == 0; }
    static Rational exact_div(const Rational& a, const Rational& b);
    static std::string to_string(const Rational& a) {
        Rational c = a;
        c.canonicalize();
        return c.get_str();
    }
    static Rational parse(std::string_view s);
    static void normalize(Rational& num, Rational& den);
    static std::size_t bit_size(const Rational& a);
};

template <>
struct DomainTraits<Poly> {
    static constexpr std::string_view name = "poly";
    static Poly zero() { return {}; }
    static Poly one() { return 1; }
    static Poly from_int(long v) { return v; }
    static bool is_zero(const Poly& a) { return a.is_zero(); }
    static Poly exact_div(const Poly& a, const Poly& b) { return Poly::exact_div(a, b); }
    static std::string to_string(const Poly& a) { return a.to_string(); }
    static Poly parse(std::string_view s) { return Poly::parse(s); }
    /// Only makes the denominator's leading coefficient positive.
    static void normalize(Poly& num, Poly& den);
    /// Largest coefficient bit length.
    static std::size_t bit_size(const Poly& a);
};

template <typename T>
concept Domain = requires(const T& a, const T& b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { a == b } -> std::convertible_to<bool>;
    { DomainTraits<T>::zero() } -> std::same_as<T>;
    { DomainTraits<T>::exact_div(a, b) } -> std::same_as<T>;
};

template <Domain T>
inline bool is_zero(const T& a) { return DomainTraits<T>::is_zero(a); }

template <Domain T>
inline T exact_div(const T& a, const T& b) { return DomainTraits<T>::exact_div(a, b); }

template <Domain T>
inline std::string to_string(const T& a) { return DomainTraits<T>::to_string(a); }

template <Domain T>
inline T parse_element(std::string_view s) { return DomainTraits<T>::parse(s); }

}  // namespace fftd

#endif  // FFTD_DOMAIN_HPP
