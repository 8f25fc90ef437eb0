#include "fftd/matrix.hpp"

#include <numeric>

namespace fftd {

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto v : images_) {
        if (v >= images_.size() || seen[v]) throw std::invalid_argument("Permutation: images are not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return Permutation(std::move(v));
}

Permutation Permutation::flip(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = n - 1 - i;
    return Permutation(std::move(v));
}

Permutation Permutation::block_flip(std::size_t n_top, std::size_t n_bottom) {
    std::vector<std::size_t> v(n_top + n_bottom);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i < n_bottom ? n_top + i : i - n_bottom;
    return Permutation(std::move(v));
}

Permutation Permutation::from_order(std::span<const std::size_t> order) {
    std::vector<std::size_t> v(order.size());
    for (std::size_t t = 0; t < order.size(); ++t) {
        if (order[t] >= order.size()) throw std::invalid_argument("Permutation::from_order: index out of range");
        v[order[t]] = t;
    }
    return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[images_[i]] = i;
    return Permutation(std::move(v));
}

Permutation Permutation::compose(const Permutation& other) const {
    if (other.size() != size()) throw std::invalid_argument("Permutation::compose: size mismatch");
    // (A·B)[i][k] = 1 iff k = B.images[A.images[i]]
    std::vector<std::size_t> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[i] = other.images_[images_[i]];
    return Permutation(std::move(v));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < size(); ++i)
        if (images_[i] != i) return false;
    return true;
}

}  // namespace fftd
