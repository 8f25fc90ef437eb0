#ifndef FFTD_MATRIX_HPP
#define FFTD_MATRIX_HPP

#include "fftd/domain.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fftd {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Half-open index range [begin, end).
struct Range {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const noexcept { return end - begin; }
};

// ---------------------------------------------------------------------------
// Permutation

/// Bijection on {0..n-1}. images[i] is where index i is sent; as a matrix,
/// row i holds its single one in column images[i].
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> images);

    static Permutation identity(std::size_t n);
    /// Reverses index order (the anti-diagonal identity).
    static Permutation flip(std::size_t n);
    /// [[0, I_top], [I_bottom, 0]] read as a row operation: the bottom block of
    /// indices moves in front of the top block, order preserved inside each.
    static Permutation block_flip(std::size_t n_top, std::size_t n_bottom);
    /// Permutation that moves order[t] to position t, i.e. whose matrix P satisfies
    /// (Pᵀ·A) row t == A row order[t].
    static Permutation from_order(std::span<const std::size_t> order);

    std::size_t size() const noexcept { return images_.size(); }
    std::size_t operator[](std::size_t i) const { return images_[i]; }
    const std::vector<std::size_t>& images() const noexcept { return images_; }

    Permutation inverse() const;
    /// Matrix product (*this)·other.
    Permutation compose(const Permutation& other) const;
    bool is_identity() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

    template <Domain T>
    auto to_matrix() const;

private:
    std::vector<std::size_t> images_;
};

// ---------------------------------------------------------------------------
// Matrix

template <Domain T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, DomainTraits<T>::zero()) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows * cols) throw DimensionError("entry count does not match rows*cols");
    }
    /// Row-major nested literal; all rows must have the same length.
    Matrix(std::initializer_list<std::initializer_list<T>> rows) : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionError("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = DomainTraits<T>::one();
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
    const std::vector<T>& data() const noexcept { return data_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!DomainTraits<T>::is_zero(v)) return false;
        return true;
    }

    bool is_lower_triangular() const {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!DomainTraits<T>::is_zero((*this)(i, j))) return false;
        return true;
    }

    bool is_upper_triangular() const {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < i && j < cols_; ++j)
                if (!DomainTraits<T>::is_zero((*this)(i, j))) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

    Matrix scaled(const T& c) const {
        Matrix r = *this;
        for (auto& v : r.data_) v *= c;
        return r;
    }

    /// Every entry divided exactly by c.
    Matrix divided(const T& c) const {
        Matrix r = *this;
        for (auto& v : r.data_) v = DomainTraits<T>::exact_div(v, c);
        return r;
    }

private:
    static void require_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <Domain T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows())
        throw DimensionError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times "
                             + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    Matrix<T> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (DomainTraits<T>::is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

template <Domain T>
Matrix<T> submatrix(const Matrix<T>& a, Range rows, Range cols) {
    if (rows.begin > rows.end || cols.begin > cols.end || rows.end > a.rows() || cols.end > a.cols())
        throw DimensionError("submatrix range out of bounds");
    Matrix<T> r(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = a(rows.begin + i, cols.begin + j);
    return r;
}

/// Entries at the listed rows and columns, in list order.
template <Domain T>
Matrix<T> select(const Matrix<T>& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
    Matrix<T> r(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = a(rows[i], cols[j]);
    return r;
}

/// [[a11, a12], [a21, a22]]. Empty blocks are allowed as long as the
/// surrounding dimensions agree.
template <Domain T>
Matrix<T> assemble_2x2(const Matrix<T>& a11, const Matrix<T>& a12, const Matrix<T>& a21, const Matrix<T>& a22) {
    if (a11.rows() != a12.rows() || a21.rows() != a22.rows() || a11.cols() != a21.cols() || a12.cols() != a22.cols())
        throw DimensionError("assemble_2x2: blocks are not conformable");
    const std::size_t top = a11.rows(), left = a11.cols();
    Matrix<T> r(top + a21.rows(), left + a12.cols());
    auto put = [&r](const Matrix<T>& b, std::size_t r0, std::size_t c0) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) r(r0 + i, c0 + j) = b(i, j);
    };
    put(a11, 0, 0);
    put(a12, 0, left);
    put(a21, top, 0);
    put(a22, top, left);
    return r;
}

enum class Side { rows, cols };

/// P·A (rows) or A·P (cols); with transpose, Pᵀ·A or A·Pᵀ.
template <Domain T>
Matrix<T> permute(const Permutation& p, const Matrix<T>& a, Side side, bool transpose = false) {
    const std::size_t n = side == Side::rows ? a.rows() : a.cols();
    if (p.size() != n) throw DimensionError("permute: permutation size does not match matrix");
    Matrix<T> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < n; ++i) {
        // P·A: row i of the result is row images[i] of A.  A·P: column images[i]
        // of the result is column i of A.  Transposes swap source and target.
        bool take_from_image = (side == Side::rows) != transpose;
        std::size_t dst = take_from_image ? i : p[i];
        std::size_t src = take_from_image ? p[i] : i;
        if (side == Side::rows)
            for (std::size_t j = 0; j < a.cols(); ++j) r(dst, j) = a(src, j);
        else
            for (std::size_t j = 0; j < a.rows(); ++j) r(j, dst) = a(j, src);
    }
    return r;
}

template <Domain T>
auto Permutation::to_matrix() const {
    Matrix<T> m(size(), size());
    for (std::size_t i = 0; i < size(); ++i) m(i, images_[i]) = DomainTraits<T>::one();
    return m;
}

/// n x n identity with `count` rows and columns inserted at `pos`, i.e.
/// diag(a_leading, I_count, a_trailing) split at pos.
template <Domain T>
Matrix<T> insert_identity(const Matrix<T>& a, std::size_t pos, std::size_t count) {
    const std::size_t n = a.rows() + count;
    Matrix<T> r(n, a.cols() + count);
    auto map = [pos, count](std::size_t i) { return i < pos ? i : i + count; };
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(map(i), map(j)) = a(i, j);
    for (std::size_t k = 0; k < count; ++k) r(pos + k, pos + k) = DomainTraits<T>::one();
    return r;
}

// ---------------------------------------------------------------------------
// Fractions

/// Element of the fraction field of T. Equality is cross-multiplicative, so
/// unreduced representations compare correctly in every domain.
template <Domain T>
class Fraction {
public:
    Fraction() : num_(DomainTraits<T>::zero()), den_(DomainTraits<T>::one()) {}
    Fraction(T num) : num_(std::move(num)), den_(DomainTraits<T>::one()) {}  // NOLINT
    Fraction(T num, T den) : num_(std::move(num)), den_(std::move(den)) {
        if (DomainTraits<T>::is_zero(den_)) throw ZeroDivisor("fraction with zero denominator");
        DomainTraits<T>::normalize(num_, den_);
    }

    const T& num() const noexcept { return num_; }
    const T& den() const noexcept { return den_; }
    bool is_zero() const { return DomainTraits<T>::is_zero(num_); }

    friend Fraction operator+(const Fraction& a, const Fraction& b) {
        if (a.den_ == b.den_) return Fraction(a.num_ + b.num_, a.den_);
        return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }
    friend Fraction operator*(const Fraction& a, const Fraction& b) {
        return Fraction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Fraction operator/(const Fraction& a, const Fraction& b) {
        if (b.is_zero()) throw ZeroDivisor("fraction division by zero");
        return Fraction(a.num_ * b.den_, a.den_ * b.num_);
    }
    Fraction operator-() const {
        Fraction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
    Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
    Fraction& operator*=(const Fraction& o) { return *this = *this * o; }

    friend bool operator==(const Fraction& a, const Fraction& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

    std::string to_string() const {
        if (den_ == DomainTraits<T>::one()) return DomainTraits<T>::to_string(num_);
        return DomainTraits<T>::to_string(num_) + "/" + DomainTraits<T>::to_string(den_);
    }

private:
    T num_;
    T den_;
};

template <Domain T>
struct DomainTraits<Fraction<T>> {
    static Fraction<T> zero() { return {}; }
    static Fraction<T> one() { return Fraction<T>(DomainTraits<T>::one()); }
    static bool is_zero(const Fraction<T>& a) { return a.is_zero(); }
    static Fraction<T> exact_div(const Fraction<T>& a, const Fraction<T>& b) { return a / b; }
    static std::string to_string(const Fraction<T>& a) { return a.to_string(); }
};

template <Domain T>
using FractionMatrix = Matrix<Fraction<T>>;

template <Domain T>
FractionMatrix<T> to_fractions(const Matrix<T>& a) {
    std::vector<Fraction<T>> d;
    d.reserve(a.data().size());
    for (const auto& v : a.data()) d.emplace_back(v);
    return FractionMatrix<T>(a.rows(), a.cols(), std::move(d));
}

}  // namespace fftd

#endif  // FFTD_MATRIX_HPP
