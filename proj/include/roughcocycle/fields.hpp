#pragma once

#include <vector>

#include "roughcocycle/rde.hpp"

namespace rough {

// Named coefficient fields used by the CLI and the experiment drivers.
//   sincos2d  d=m=2 bounded C^3 field built from sin/cos of linear forms
//   const1d   d=m=1 constant field (0.7)
//   const2d   d=m=2 constant field
//   linear1d  d=m=1 f(y)=y; not bounded, kept as a desk-scale oracle
const VectorField& field_by_name(const std::string& name);
std::vector<std::string> field_names();

}  // namespace rough
