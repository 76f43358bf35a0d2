// Fixed-format CSV emission: 17 significant digits in scientific notation so
// repeated runs produce byte-identical files.

#pragma once

#include <cstdio>
#include <ostream>
#include <string>

namespace smatpi {

inline std::string csv_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

inline std::string csv_num(int v) { return std::to_string(v); }

inline std::string csv_num(std::uint64_t v) { return std::to_string(v); }

}  // namespace smatpi
