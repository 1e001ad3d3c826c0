#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>

#include "ecf/bernstein.hpp"
#include "ecf/dependency_set.hpp"
#include "ecf/ecf_table.hpp"
#include "ecf/set_function.hpp"
#include "ecf/tm_process.hpp"

namespace ecf {

using Json = nlohmann::json;

/// Subset key used in all JSON tables: the compact JSON text of the
/// lexicographically sorted member labels, e.g. ["s0","s2"]; the empty set
/// is "[]".
std::string subset_key(const GroundSet& ground, SubsetMask subset);
SubsetMask subset_from_key(const GroundSet& ground, const std::string& key);

/// { "m": int, "values": { "<sorted label list>": number, ... } } over the
/// default labels s0..s{m-1}; every subset present, IEEE-exact values.
Json set_function_to_json(const SetFunction& f);
SetFunction set_function_from_json(const Json& j);

/// { "labels": [...], "theta": { "<sorted label list>": number } } with the
/// empty set omitted (implied 0).
Json ecf_to_json(const EcfTable& ecf);
EcfTable ecf_from_json(const Json& j);

/// Same layout under key "tau".
Json tau_to_json(const TauTable& tau);
TauTable tau_from_json(const Json& j);

/// { "halfspaces": [{"A": [...], "b": theta}], "vertices": [[...]] } plus
/// the site labels.
Json polytope_to_json(const DepSetPolytope& poly);

/// { "kind": "...", params... }
Json bernstein_to_json(const BernsteinFunction& g);
BernsteinFunction bernstein_from_json(const Json& j);

/// Shorthand: "log1p", "pow:0.5", "negpow:-1", "affine:c,b",
/// "mix:c,b,[w:lambda,...]".
BernsteinFunction parse_bernstein(const std::string& text);

/// CSV with header "site,a1,a2,...", one row per site.
std::string spectral_measure_to_csv(const DiscreteSpectralMeasure& sm);
DiscreteSpectralMeasure spectral_measure_from_csv(std::istream& in);

/// CSV with the site labels as header and one replicate per row, full
/// double precision (%.17g).
std::string sample_batch_to_csv(const SampleBatch& batch);
SampleBatch sample_batch_from_csv(std::istream& in);

/// Sidecar metadata for a sample batch.
Json sample_metadata(const SampleBatch& batch);

/// Site coordinates CSV: "label,x1,...,xd".
GroundSet sites_from_csv(std::istream& in);
std::string sites_to_csv(const GroundSet& ground);

/// Vertex table for external plotting: header "v1,...,vm" with labels.
std::string vertices_to_csv(const DepSetPolytope& poly);

/// Formats a double as %.17g (value-exact round trip).
std::string format_double(Scalar value);

}  // namespace ecf
