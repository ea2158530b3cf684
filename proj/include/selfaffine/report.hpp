#pragma once

// JSON serialization for instance files, reports and certificates. Integers
// and rationals are written as decimal strings ("12", "-3/4") so nothing is
// truncated; instance files may use plain JSON integers for small values.

#include <optional>
#include <string>

#include "json.hpp"
#include "selfaffine/classifier.hpp"
#include "selfaffine/oracle.hpp"

namespace selfaffine {

using Json = nlohmann::json;  // std::map-backed, so keys dump sorted

/// Throws Error(Malformed) on schema violations and propagates the domain
/// errors of ProblemInstance.
ProblemInstance parse_instance(const Json& j);
ProblemInstance parse_instance_text(const std::string& text);
ProblemInstance load_instance(const std::string& path);

Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(const IntVector& v);
Json to_json(const RatVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const RatMatrix& m);
Json to_json(const Frame& f);
Json to_json(const Witness& w);
Json to_json(const HadamardTriple& t);
Json to_json(const OrthogonalityCertificate& c);
Json to_json(const Conditions& c);
/// null for ConditionOnly.
Json to_json(const Certificate& c);
Json to_json(const CliqueReport& r);
Json to_json(const CompletenessReport& r);

Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
IntVector int_vector_from_json(const Json& j);
RatVector rat_vector_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);
RatMatrix rat_matrix_from_json(const Json& j);
Frame frame_from_json(const Json& j);
Certificate certificate_from_json(const Json& j);

struct ReportOptions {
  std::optional<Json> evidence;
  std::optional<Json> timings_ms;  // emitted as {} when absent
};

/// The ReportFile object: verdict, conditions, certificate,
/// theorems_applied, timings_ms and certificate_verified.
Json make_report(const Classification& c, bool certificate_verified,
                 const ReportOptions& options = {});

}  // namespace selfaffine
