#pragma once

#include <string>

#include "skewgreen/mapfile.hpp"

namespace skewgreen::testing {

inline ExactSkewProduct exact_map(const std::string& p, const std::string& q) {
    return parse_map("p: " + p + "\nq: " + q + "\n").map;
}

inline FloatSkewProduct float_map(const std::string& p, const std::string& q) {
    return normalize_monic(exact_map(p, q)).map;
}

}  // namespace skewgreen::testing
