#pragma once

namespace gi {

// Moment tables at bucket level reach ~1e32 while the centered quantities
// derived from them cancel down by ~8 decades; 80-bit extended precision keeps
// the closed-form identity checks honest at 1e-9 relative for large M, R.
using real = long double;

}  // namespace gi
