#pragma once

#include <string>

#include "thimac/analysis.hpp"
#include "thimac/parser.hpp"

namespace thimac::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(THIMAC_MODELS_DIR) + "/" + name;
}

inline Document load_fixture(const std::string& name) {
  return parse(read_source(fixture_path(name)));
}

inline const char* kFixtures[] = {
    "airport.tm",     "airport_variant.tm", "bread.tm",         "delta_cr.tm",
    "empty.tm",       "green_cheese.tm",    "green_cheese_full.tm", "john_mary_v1.tm",
    "john_mary_v2.tm", "liar.tm",           "telescope_1.tm",   "telescope_2.tm",
    "zero_plus_zero.tm"};

}  // namespace thimac::testing
