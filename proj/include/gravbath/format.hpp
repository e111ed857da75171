#pragma once

#include <cstdio>
#include <string>

namespace gravbath {

/// Round-trip double formatting for all delimited-text output. Locale-free
/// (the tools never call setlocale), so output bytes are reproducible.
inline std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace gravbath
