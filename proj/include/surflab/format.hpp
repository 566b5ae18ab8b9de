#pragma once

#include <cstdio>
#include <string>

namespace surflab {

// Fixed 17-significant-digit formatting: identical inputs give byte-identical
// output files, and doubles survive a round trip.
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace surflab
