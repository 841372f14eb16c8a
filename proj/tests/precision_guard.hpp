#pragma once

#include "aim/ext_real.hpp"

// Every test binary runs at the library default working precision.
inline const aim::PrecisionScope kTestPrecision{aim::kDefaultPrecisionBits};
