#pragma once
#include <string>

#include "glat/structure.hpp"

namespace glat {

// JSON window of a structure: every canonical support pair inside the box with
// a nonzero bracket coefficient, plus rank / field / moduli metadata.
//   { "name": ..., "rank": 2, "field": "Q", "moduli": [0,0], "box": 4,
//     "entries": [ {"lam": [1,0], "mu": [0,1], "c": "3/2"}, ... ] }
std::string save_structure(const ScalarStructure& s, const Box& box);
void save_structure_file(const ScalarStructure& s, const Box& box,
                         const std::string& path);

// Rebuild a structure from the JSON window.  Pairs not listed evaluate to
// zero; the support is the set of degrees seen in entries plus the origin.
// Throws Error on malformed input.
ScalarStructure load_structure(const std::string& json_text);
ScalarStructure load_structure_file(const std::string& path);

}  // namespace glat
