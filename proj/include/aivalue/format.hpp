#pragma once

#include <string>

namespace aivalue {

/// Shortest decimal that parses back to the same double.
std::string format_shortest(double value);

/// Fixed six significant digits ("%.6g"); "inf", "-inf", "nan" for non-finite.
std::string format_sig6(double value);

}  // namespace aivalue
