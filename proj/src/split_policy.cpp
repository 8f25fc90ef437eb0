#include "fftd/ldu.hpp"

#include <charconv>
#include <stdexcept>

namespace fftd {

SplitPolicy SplitPolicy::parse(std::string_view text) {
    if (text == "pow2") return pow2();
    if (text == "half") return half();
    std::vector<std::size_t> sizes;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto part = text.substr(0, comma);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size() || v == 0)
            throw std::invalid_argument("bad split schedule: " + std::string(text));
        sizes.push_back(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (sizes.empty()) throw std::invalid_argument("empty split schedule");
    return schedule(std::move(sizes));
}

}  // namespace fftd
