#pragma once

// JSON encodings of specs, lattices, tensor fields and points. Index lists in
// JSON are 1-based; everything in C++ is 0-based.

#include "hopflab/eigendata.hpp"
#include "hopflab/field_tensors.hpp"
#include "hopflab/relation_lattice.hpp"
#include "hopflab/tensor_invariants.hpp"
#include "hopflab/zariski_closure.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace hopflab {

using json = nlohmann::json;

/// {"mode":"exact","eigenvalues":[{"modulus":{"num":3,"den":2},"arg_over_pi":{"num":1,"den":3}}]}
/// or {"mode":"float","eigenvalues":[{"re":2.0,"im":0.0}]}. Rationals may
/// also be given as integers or "p/q" strings. Throws ParseError.
ContractionSpec spec_from_json(const json& j);
ContractionSpec spec_from_text(std::string_view text);
json spec_to_json(const ContractionSpec& spec);

Rational rational_from_json(const json& j);
json rational_to_json(const Rational& r);

json scalar_to_json(const Scalar& s);

/// {"rank":1,"certified":true,"basis":[[4,-4]]}
json lattice_to_json(const RelationLattice& lattice);
RelationLattice lattice_from_json(const json& j);

/// {"dim_connected":1,"rank":1,"contains_A1":true,"certified":true}
json closure_report(const TorusClosure& c, bool contains_a1);

json index_to_json(const TensorMonomialIndex& idx);

/// {"m":[0,4],"vector_slots":[1,1,1,1],"form_slots":[]}
MonomialTensorField field_from_json(const json& j);
json field_to_json(const MonomialTensorField& t);

/// Comma-separated coordinates; each is "x", "yi", "x+yi" or "x-yi".
std::vector<std::complex<double>> parse_point(std::string_view text);

} // namespace hopflab
