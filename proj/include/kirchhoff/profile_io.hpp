#pragma once

// CSV persistence for radial profiles.  Layout:
//
//   # N=3
//   # p=4
//   # lambda=1
//   # beta=4.3373877...
//   # r_max=18.49
//   r,u,du
//   0,4.3373877...,0
//   ...
//
// Values are written with 17 significant digits (std::to_chars, locale-free)
// so a write/read round trip reproduces every double bit for bit.

#include <iosfwd>
#include <string>

#include "kirchhoff/types.hpp"

namespace kirchhoff {

void write_profile_csv(const RadialProfile& profile, std::ostream& os);
void write_profile_csv(const RadialProfile& profile, const std::string& path);

// Rebuilds derived fields (functionals by quadrature, tail bound, error
// estimate) from the parsed grid; header metadata must be complete.
RadialProfile read_profile_csv(std::istream& is);
RadialProfile read_profile_csv(const std::string& path);

// 17-significant-digit decimal form of v, independent of the global locale.
std::string format_double(double v);

}  // namespace kirchhoff
