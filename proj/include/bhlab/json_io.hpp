#pragma once

#include <json.hpp>

#include "bhlab/inequalities.hpp"
#include "bhlab/norms.hpp"
#include "bhlab/poly.hpp"

namespace bhlab {

using Json = nlohmann::json;

// Polynomial document: {"N": int, "m": int|null, "terms": [{"alpha": [...],
// "re": f, "im": f}]}. m = null marks a mixed-degree analytic polynomial.
// Round-trips are lossless for finite doubles.
Json to_json(const HomogeneousPolynomial& p);
Json to_json(const AnalyticPolynomial& f);
bool poly_json_is_homogeneous(const Json& j);
HomogeneousPolynomial homogeneous_from_json(const Json& j);
AnalyticPolynomial analytic_from_json(const Json& j);

Json to_json(const NormEstimate& e);
NormEstimate norm_estimate_from_json(const Json& j);

Json to_json(const InequalityReport& r);
InequalityReport inequality_report_from_json(const Json& j);

Json to_json(const TraceReport& r);
TraceReport trace_report_from_json(const Json& j);

Json to_json(const ScanRecord& r);
ScanRecord scan_record_from_json(const Json& j);

}  // namespace bhlab
