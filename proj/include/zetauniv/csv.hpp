#pragma once

#include <string>

namespace zetauniv {

// Shortest round-trip decimal form, locale independent. Non-finite values
// print as "nan", "inf" or "-inf".
std::string format_number(double x);

}  // namespace zetauniv
