#pragma once

#include <string>

#include "stablab/complex.hpp"

namespace stablab {

// JSON interchange for complexes.
//
//   simplicial       {"vertices":[ints], "maximal":[[ints],...]}
//   semi-simplicial  {"cells":{"0":[0,...],...}, "faces":{"1":[[cell,i,face],...],...}}
//
// Output is canonical (keys and face lists sorted), so equal complexes render
// to identical strings and parsing a rendered string gives back the same
// complex.  Malformed or inconsistent input raises malformed_input.

std::string complex_json(const SimplicialComplex& x);
SimplicialComplex complex_from_json(const std::string& text);

std::string semi_complex_json(const SemiSimplicialComplex& x);
SemiSimplicialComplex semi_complex_from_json(const std::string& text);

// Reader accepting either format, dispatching on the top-level keys.
struct ParsedComplex {
    bool is_simplicial = true;
    SimplicialComplex simplicial;
    SemiSimplicialComplex semi;
};
ParsedComplex any_complex_from_json(const std::string& text);

}  // namespace stablab
