#include "pdnf/format.hpp"

#include <array>
#include <atomic>
#include <charconv>

#include "pdnf/error.hpp"

namespace pdnf {

namespace {
std::atomic<int> g_digits{0};
}

std::string format_real(double v) {
  std::array<char, 64> buf{};
  const int digits = g_digits.load(std::memory_order_relaxed);
  const auto result = digits == 0
                          ? std::to_chars(buf.data(), buf.data() + buf.size(), v)
                          : std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, digits);
  return std::string(buf.data(), result.ptr);
}

void set_significant_digits(int digits) {
  if (digits < 0 || digits > 17) throw Error("significant digits must lie in [0, 17]");
  g_digits.store(digits, std::memory_order_relaxed);
}

int significant_digits() { return g_digits.load(std::memory_order_relaxed); }

}  // namespace pdnf
