#pragma once

#include <map>
#include <optional>
#include <stdexcept>

#include "thimac/model.hpp"

namespace thimac {

/// Raised when a model exceeds the thimac count the exact search accepts.
class SizeLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IsoResult {
  bool isomorphic = false;
  std::map<ThimacId, ThimacId> mapping;  // a -> b, populated when isomorphic
};

inline constexpr std::size_t kDefaultIsoBound = 64;

/// Structural equivalence: a bijection of thimacs preserving containment,
/// stage sets and the multiset of (kind, from, to) arcs. Labels, ids, thing
/// labels and the notation flag are ignored.
IsoResult models_isomorphic(const StaticModel& a, const StaticModel& b,
                            std::size_t bound = kDefaultIsoBound);

}  // namespace thimac
