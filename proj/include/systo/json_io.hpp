#pragma once

#include <string>

#include <json.hpp>

#include "systo/complex.hpp"
#include "systo/verify.hpp"

namespace systo {

// Stable complex format:
//   {"vertices":[{"id":0,"type":"2","origin":"original"}, ...],
//    "edges":[[0,1,"original"], ...],
//    "maximal_simplices":[[0,1,2], ...],
//    "metadata":{...}}
nlohmann::json complex_to_json(const TypedComplex& complex);
TypedComplex complex_from_json(const nlohmann::json& j);

/// Canonical serialization: sorted keys, 2-space indent, trailing newline.
/// Identical complexes serialize to identical bytes.
std::string complex_to_canonical_string(const TypedComplex& complex);

nlohmann::json report_to_json(const VerificationReport& report);
std::string report_to_canonical_string(const VerificationReport& report);

/// 1-skeleton as Graphviz DOT, vertices coloured by type (rank 3: slots
/// red/green/blue; rank 4: letters), new edges coloured by origin.
std::string export_dot(const TypedComplex& complex);

TypedComplex read_complex_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

// Coxeter system description:
//   {"rank":3, "exponents":[2,3,6], "generator_names":["s","t","u"]}
// or with "exponent_matrix" (rank x rank) instead of "exponents". Rank-4
// "exponents" are the tetrahedron labels in pair order (ab,ac,ad,bc,bd,cd).
CoxeterSystem system_from_json(const nlohmann::json& j);
CoxeterSystem read_system_file(const std::string& path);

} // namespace systo
