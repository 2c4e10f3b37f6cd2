#pragma once

#include <cstdio>
#include <string>

namespace rqf {

/// 17 significant digits, '.' decimal separator; round-trips every double.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Short scientific form for human-readable summaries.
inline std::string format_e3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

}  // namespace rqf
