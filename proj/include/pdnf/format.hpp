#pragma once

#include <string>

namespace pdnf {

/// Decimal form used by every CSV writer. By default the shortest string
/// that parses back to the same double; after set_significant_digits(d > 0)
/// values are rounded to d significant digits instead.
std::string format_real(double v);

/// 0 restores the exact round-trip form. Applies process-wide.
void set_significant_digits(int digits);
int significant_digits();

}  // namespace pdnf
