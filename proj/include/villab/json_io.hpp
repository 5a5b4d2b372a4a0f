#pragma once

#include "villab/bundles.hpp"
#include "villab/cohomology.hpp"
#include "villab/construction.hpp"
#include "villab/embeddings.hpp"
#include "villab/ints.hpp"
#include "villab/rank_calculus.hpp"

#include <json.hpp>

#include <string>

namespace villab::json_io {

using json = nlohmann::json;

// Integers are emitted as JSON numbers while they fit in 64 bits, as decimal
// strings beyond that; both forms parse back.
json int_to_json(const Int& x);
Int int_from_json(const json& j);

// Exact value as "p/q" plus a double approximation.
json rational_to_json(const Rational& r);

// Decimal, scientific, or "p/q" text into an exact rational.
Rational parse_rational(const std::string& text);

json to_json(const cohomology::CohomologyClass& c);
cohomology::CohomologyClass cohomology_from_json(const json& j);

json to_json(const bundles::LineBundle& line);
bundles::LineBundle line_from_json(const json& j, std::int64_t ambient);

json to_json(const bundles::VectorBundle& v);
bundles::VectorBundle bundle_from_json(const json& j);

json to_json(const bundles::KClass& x);
bundles::KClass kclass_from_json(const json& j);

json to_json(const bundles::HallResult& h);

json to_json(const bundles::VilCertificate& cert);

json to_json(const construction::PerforationCertificate& cert);
json to_json(const construction::CertifyOutcome& outcome);
json to_json(const construction::StageState& s);

json to_json(const rank_calculus::GrValue& v);
rank_calculus::GrValue gr_from_json(const json& j);

json to_json(const rank_calculus::DescriptorGraph& g);
rank_calculus::DescriptorGraph graph_from_json(const json& j);

json propagation_to_json(const rank_calculus::PropagationResult& r);

rank_calculus::RankOneSystem rank_one_system_from_json(const json& j);
json to_json(const rank_calculus::PruneVerdict& v);

json to_json(const rank_calculus::TdgResult& r);

rank_calculus::GrowthProfile profile_from_json(const json& j);
rank_calculus::GrowthProfile profile_from_csv(const std::string& text);
std::string profile_to_csv(const rank_calculus::GrowthProfile& p);

// Rejects unknown keys: config files are validated before any computation.
void require_keys(const json& j, const std::vector<std::string>& allowed,
                  const std::string& where);

}  // namespace villab::json_io
