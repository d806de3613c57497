#pragma once

#include <iosfwd>
#include <string>

#include "siegel/expansion.hpp"

namespace siegel {

// Line oriented text format:
//   #degree: 2
//   #weight: 4,4
//   #level: 1 1 1 1
//   #modulus: 0
//   #traceBound: 2
//   T: 0 0 0 C: 1
// Optional headers: "#embed: e" and "#twist: r p t" (one line per twist).
// Records are sorted by (trace, upper triangle of 2T).

void write_sfex(std::ostream& os, const FourierExpansion& f);
FourierExpansion read_sfex(std::istream& is);

void save_sfex(const std::string& path, const FourierExpansion& f);
FourierExpansion load_sfex(const std::string& path);

}  // namespace siegel
