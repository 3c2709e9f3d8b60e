#pragma once

#include <iosfwd>
#include <string>

#include "rp2bundle/scalar_modules.hpp"

namespace rp2bundle {

// Wire formats for sampled sections.  CSV rows are
//   index,x1,x2,x3,re0,im0[,re1,im1,...]
// and the JSON form mirrors them as
//   {"dimension": d, "rows": [{"index": k, "x": [..], "re": [..], "im": [..]}, ...]}
// The antipodal pairing is positional: rows 2k and 2k+1 belong together, and
// readers reject files violating it.

void write_section_csv(std::ostream& out, const SampledSection& section);
SampledSection read_section_csv(std::istream& in);

void write_section_json(std::ostream& out, const SampledSection& section);
SampledSection read_section_json(std::istream& in);

void write_section_file(const std::string& path, const SampledSection& section);  // by extension
SampledSection read_section_file(const std::string& path);

}  // namespace rp2bundle
