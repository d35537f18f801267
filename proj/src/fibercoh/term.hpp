#pragma once

#include <vector>

#include <gmpxx.h>

#include "fibercoh/monomial.hpp"

namespace fibercoh {

struct Term {
  Monomial m;
  mpq_class c;
};

using TermList = std::vector<Term>;

}  // namespace fibercoh
