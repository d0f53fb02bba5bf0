#pragma once

#include <string>

namespace fnls {

// Shortest decimal string that parses back to exactly the same double
// (round-trip safe; used by every CSV writer).
std::string format_shortest(double value);

// Fixed 17-significant-digit form for manifest constants.
std::string format_full(double value);

}  // namespace fnls
