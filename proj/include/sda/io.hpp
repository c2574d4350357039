#pragma once

#include "sda/fooling.hpp"

#include <json.hpp>

namespace sda {

using Json = nlohmann::ordered_json;

// {"type", "rows", "cols", "entries": [[...], ...]}; exact entries are strings.
Json to_json(const RatMatrix& m);
Json to_json(const IntMatrix& m);
Json to_json(const FloatMatrix& m);
RatMatrix rat_matrix_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);
FloatMatrix float_matrix_from_json(const Json& j);

Json to_json(const VertexMap& f);
Json to_json(const OrbitalStructure& o);
Json to_json(const CharacterTable& t);
Json to_json(const AxiomReport& r);
Json to_json(const RelaxReport& r);
Json to_json(const Spectrum& s);
Json to_json(const FoolingParams& p);
Json to_json(const FoolingCertificate& c);
Json to_json(const FoolingWitness& w, bool include_matrices);
Json to_json(const SlaterReport& r);
Json to_json(const NonSlaterReport& r);
Json to_json(const AipAssignment& mu);

}  // namespace sda
