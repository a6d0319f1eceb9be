#include "qwalk/csv.hpp"

#include <array>
#include <charconv>

namespace qwalk::csv {

std::string format(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, 17);
    return std::string(buf.data(), end);
}

std::string format(std::int64_t value) {
    return std::to_string(value);
}

std::string shortest(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

}  // namespace qwalk::csv
