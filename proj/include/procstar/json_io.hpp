#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "procstar/prostructure.hpp"
#include "procstar/witnesses.hpp"

namespace procstar {

using Json = nlohmann::json;

/// Canonical text: sorted keys, two-space indent, floats with 17 significant digits.
std::string canonical_dump(const Json& j);
/// Parses text, rethrowing syntax errors as UsageError.
Json parse_json(const std::string& text, const std::string& what = "input");

Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const Eigen::MatrixXcd& m);
Json vector_to_json(const Eigen::VectorXcd& v);

Json to_json(const GroupDescriptor& d);
GroupDescriptor descriptor_from_json(const Json& j);
/// Inverse of the "family(p,...)" labels of built groups.
std::optional<GroupDescriptor> parse_descriptor_label(const std::string& label);

/// {"family": "integers", "params": [d]}, "heisenberg", "free2", or a finite descriptor.
DiscreteGroup group_from_json(const Json& j, const Config& cfg = {});
Json group_to_json(const DiscreteGroup& g);

Element element_from_json(const DiscreteGroup& g, const Json& j);
Json element_to_json(const DiscreteGroup& g, const Element& e);

/// {"group": descriptor, "terms": [{"g": literal, "c": [re, im]}]}
GroupAlgebraElement algebra_element_from_json(const Json& j, const Config& cfg = {});
Json to_json(const GroupAlgebraElement& a);

/// {"group": descriptor, "kind": "mod" | "catalog" | "normal", "params": ...}
FiniteQuotient quotient_from_json(const Json& j, const Config& cfg = {});
FiniteQuotient quotient_from_json(const DiscreteGroup& g, const std::string& kind, const Json& params,
                                  const Config& cfg = {});
Json to_json(const FiniteQuotient& q);

Json to_json(const SeminormValue& v);
Json to_json(const SupSeminormReport& r);
Json to_json(const IrrepDecomposition& d);
Json to_json(const SeparationWitness& w);
Json to_json(const GeneratorRep& r);
Json to_json(const HeisenbergSeparation& s);
Json to_json(const Factorization& f);
Json to_json(const U3Report& r);
Json to_json(const ConsistencyReport& r);
Json to_json(const BoundedFamilyReport& r);
Json to_json(const FullnessReport& r);

}  // namespace procstar
