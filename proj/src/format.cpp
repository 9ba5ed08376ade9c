#include "fockctx/format.hpp"

#include <charconv>
#include <system_error>

namespace fockctx {

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // normalize -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 15);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace fockctx
