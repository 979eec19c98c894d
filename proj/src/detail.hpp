#pragma once
// Internal helpers shared by the library translation units. Not installed.

#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "cpt/series.hpp"

namespace cpt::detail {

inline std::string fmt_msg(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

// S_0 = 0, S_t = x_1 + ... + x_t
inline std::vector<double> prefix_sums(const RealSeries& x) {
  std::vector<double> s(x.size() + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) s[i + 1] = s[i] + x[i];
  return s;
}

}  // namespace cpt::detail
