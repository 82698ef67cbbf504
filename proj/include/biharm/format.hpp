#pragma once

#include <string>

namespace biharm {

/// Shortest decimal string that round-trips to the same double.
std::string format_shortest(double value);

/// Fixed 17 significant digits, for CSV columns.
std::string format_17g(double value);

}  // namespace biharm
