#pragma once

#include "paramod/higgslimit.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace paramod::io {

using json = nlohmann::ordered_json;

/// Splits "a,b,c" on commas; empty input gives an empty list.
std::vector<std::string> split_list(const std::string& text, char sep = ',');

/// Scalars travel as strings ("p/q"); plain JSON integers are accepted on input.
json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, const std::string& what);
json to_json(const ProjectivePoint& p);
ProjectivePoint point_from_json(const json& j, const std::string& what);

/// A list given either as a JSON array or as a comma-separated string.
std::vector<json> list_from_json(const json& j, const std::string& what);

MarkedConfiguration config_from_json(const json& j);
WeightVector weight_from_json(const json& j);
json weight_to_json(const WeightVector& w);

json to_json(const ParabolicStructure& L);
ParabolicStructure structure_from_json(const json& j);

json to_json(const SpectrumRank2& nu);
/// {"d", "nu"}; "nu" may also be the compact "a:b,c:d,..." string.
SpectrumRank2 spectrum_from_json(const json& j);
std::array<std::pair<Scalar, Scalar>, kPoints> nu_pairs_from_json(const json& j);

json to_json(const MCBranch& b);
MCBranch branch_from_json(const json& j);
json to_json(const MCSpectrumRank3& s);

json to_json(const LogConnection& c);
LogConnection connection_from_json(const BundleType& bundle, const json& j);

json to_json(const FlatTriple& t);
FlatTriple triple_from_json(const json& j);

json contact_to_json(ContactSet c);
json to_json(const StabilityReport& r);

json to_json(const StronglyParabolicHiggs& h);
StronglyParabolicHiggs higgs_from_json(const json& j);

/// Fixed points also carry the derived "zeros" and "flagChoice" fields.
json to_json(const FixedLocusPoint& p, const MarkedConfiguration& cfg);
FixedLocusPoint fixed_point_from_json(const json& j);

json to_json(const ChamberDescriptor& c);
json to_json(const FiberDimension& f);

} // namespace paramod::io
