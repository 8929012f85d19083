#pragma once

#include <cmath>

namespace corruptnet {

// Size thresholds like "at most 2*delta*n" are evaluated on integers. The
// epsilon absorbs float representation error when the product is integral
// (e.g. 0.1 * 25 * 2), so the conservative reading of the paper's bounds
// is applied exactly: "at most x" means <= floor(x), "at least x" means
// >= ceil(x).
inline long floor_frac(double x) { return static_cast<long>(std::floor(x + 1e-9)); }
inline long ceil_frac(double x) { return static_cast<long>(std::ceil(x - 1e-9)); }

} // namespace corruptnet
