/**
 * @file io.hpp
 * @brief JSON reading and writing for every input and report type.
 *
 * Infinite reals are written as the strings "+inf" / "-inf"; a missing
 * trade-off bound as "not-applicable". Readers are strict: unknown keys and
 * wrongly typed fields raise ValidationError.
 */

#ifndef MOPEF_IO_HPP
#define MOPEF_IO_HPP

#include <string>

#include "json.hpp"
#include "mopef/analytic.hpp"
#include "mopef/certify.hpp"
#include "mopef/core.hpp"
#include "mopef/divergence.hpp"
#include "mopef/scalarize.hpp"
#include "mopef/sweep.hpp"
#include "mopef/transform.hpp"

namespace mopef {

using json = nlohmann::json;

/// Parses text; ValidationError on malformed JSON.
json parse_json(const std::string& text);
/// Reads and parses a file; ValidationError naming the path on failure.
json read_json_file(const std::string& path);

/// A real, or the strings "+inf" / "-inf".
json real_to_json(double v);
double real_from_json(const json& j, const std::string& what);

ValidationResult instance_result_from_json(const json& j);
/// Throws ValidationError listing every problem.
DiscreteInstance instance_from_json(const json& j);
AnalyticInstance analytic_from_json(const json& j);
ScalarizationSpec spec_from_json(const json& j);
ParamGrid grid_from_json(const json& j);
TransformSpec transform_from_json(const json& j);
/// {"kind": "spacing" | "truncation", "values": [...], "truncation"?, "spacing"?}
RefinementSchedule schedule_from_json(const json& j);

void to_json(json& j, const DiscreteInstance& instance);
void to_json(json& j, const AnalyticInstance& analytic);
void to_json(json& j, const ScalarizationSpec& spec);
void to_json(json& j, const TransformSpec& spec);
void to_json(json& j, const GeoffrionCertificate& c);
void to_json(json& j, const BensonCertificate& c);
void to_json(json& j, const HenigCertificate& c);
void to_json(json& j, const DivergenceReport& r);
void to_json(json& j, const SolveResult& r);
void to_json(json& j, const ValidityVerdict& v);
void to_json(json& j, const SubdiffAudit& a);
void to_json(json& j, const UnboundednessReport& r);
void to_json(json& j, const SweepEntry& e);
void to_json(json& j, const CoverageReport& r);
void to_json(json& j, const JacobianAudit& a);
void to_json(json& j, const PreservationReport& r);
void to_json(json& j, const ZarepishehReport& r);

json param_value_to_json(const ParamValue& v);

}  // namespace mopef

#endif  // MOPEF_IO_HPP
