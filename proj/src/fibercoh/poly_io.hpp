#pragma once

#include <string_view>

#include "fibercoh/poly.hpp"

namespace fibercoh {

Poly parse_poly(const RingPtr& ring, std::string_view text);

}  // namespace fibercoh
