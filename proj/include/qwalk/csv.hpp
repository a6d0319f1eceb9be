#pragma once

#include <cstdint>
#include <string>

namespace qwalk::csv {

// Round-trippable decimal for a double: 17 significant digits, shortest
// exponent form, locale independent.
std::string format(double value);
std::string format(std::int64_t value);

// Shortest representation that parses back to the same double. Used for
// file-name tags such as alpha values.
std::string shortest(double value);

}  // namespace qwalk::csv
