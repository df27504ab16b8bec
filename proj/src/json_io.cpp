#include "bhlab/json_io.hpp"

#include <cmath>

namespace bhlab {

namespace {

Json terms_to_json(const std::map<MultiIndex, Complex>& terms) {
    Json arr = Json::array();
    for (const auto& [alpha, c] : terms) {
        Json t;
        t["alpha"] = alpha.exponents();
        t["re"] = c.real();
        t["im"] = c.imag();
        arr.push_back(std::move(t));
    }
    return arr;
}

std::vector<std::pair<MultiIndex, Complex>> terms_from_json(const Json& arr) {
    std::vector<std::pair<MultiIndex, Complex>> terms;
    for (const Json& t : arr) {
        terms.emplace_back(MultiIndex(t.at("alpha").get<std::vector<int>>()),
                           Complex{t.at("re").get<double>(),
                                   t.at("im").get<double>()});
    }
    return terms;
}

double number_or_nan(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null())
        return std::numeric_limits<double>::quiet_NaN();
    return j.at(key).get<double>();
}

}  // namespace

Json to_json(const HomogeneousPolynomial& p) {
    Json j;
    j["N"] = p.dimension();
    j["m"] = p.degree();
    j["terms"] = terms_to_json(p.terms());
    return j;
}

Json to_json(const AnalyticPolynomial& f) {
    Json j;
    j["N"] = f.dimension();
    j["m"] = nullptr;
    j["terms"] = terms_to_json(f.terms());
    return j;
}

bool poly_json_is_homogeneous(const Json& j) {
    return j.contains("m") && !j.at("m").is_null();
}

HomogeneousPolynomial homogeneous_from_json(const Json& j) {
    if (!poly_json_is_homogeneous(j))
        throw std::invalid_argument(
            "polynomial document: homogeneous form requires integer \"m\"");
    return HomogeneousPolynomial::from_terms(j.at("N").get<int>(),
                                             j.at("m").get<int>(),
                                             terms_from_json(j.at("terms")));
}

AnalyticPolynomial analytic_from_json(const Json& j) {
    return AnalyticPolynomial::from_terms(j.at("N").get<int>(),
                                          terms_from_json(j.at("terms")));
}

Json to_json(const NormEstimate& e) {
    Json j;
    j["value"] = e.value;
    j["kind"] = std::string(to_string(e.kind));
    j["stderr"] = e.stderr_value;
    j["quad_error"] = e.quad_error;
    j["method"] = e.method;
    j["effort"] = Json{{"restarts", e.effort.restarts},
                       {"grid_K", e.effort.grid_points},
                       {"samples", e.effort.samples}};
    return j;
}

NormEstimate norm_estimate_from_json(const Json& j) {
    NormEstimate e;
    e.value = j.at("value").get<double>();
    e.kind = estimate_kind_from_string(j.at("kind").get<std::string>());
    e.stderr_value = j.at("stderr").get<double>();
    e.quad_error = j.at("quad_error").get<double>();
    e.method = j.at("method").get<std::string>();
    const Json& eff = j.at("effort");
    e.effort.restarts = eff.at("restarts").get<int>();
    e.effort.grid_points = eff.at("grid_K").get<int>();
    e.effort.samples = eff.at("samples").get<std::int64_t>();
    return e;
}

Json to_json(const InequalityReport& r) {
    Json j;
    j["name"] = r.name;
    j["lhs"] = to_json(r.lhs);
    j["rhs_base"] = to_json(r.rhs_base);
    j["constant"] = r.constant;
    if (std::isfinite(r.ratio))
        j["ratio"] = r.ratio;
    else
        j["ratio"] = nullptr;
    j["verdict"] = std::string(to_string(r.verdict));
    j["detail"] = r.detail;
    return j;
}

InequalityReport inequality_report_from_json(const Json& j) {
    InequalityReport r;
    r.name = j.at("name").get<std::string>();
    r.lhs = norm_estimate_from_json(j.at("lhs"));
    r.rhs_base = norm_estimate_from_json(j.at("rhs_base"));
    r.constant = j.at("constant").get<double>();
    r.ratio = number_or_nan(j, "ratio");
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.detail = j.at("detail").get<std::string>();
    return r;
}

Json to_json(const TraceReport& r) {
    Json stages = Json::array();
    for (const TraceStage& s : r.stages) {
        stages.push_back(Json{{"name", s.name},
                              {"value", s.value},
                              {"identity", s.identity_step},
                              {"margin", s.margin},
                              {"ok", s.ok},
                              {"note", s.note}});
    }
    return Json{{"m", r.m},
                {"N", r.N},
                {"variant", std::string(to_string(r.variant))},
                {"stages", std::move(stages)},
                {"all_ok", r.all_ok},
                {"first_failed", r.first_failed},
                {"identity_tol", r.identity_tol},
                {"inequality_tol", r.inequality_tol}};
}

TraceReport trace_report_from_json(const Json& j) {
    TraceReport r;
    r.m = j.at("m").get<int>();
    r.N = j.at("N").get<int>();
    r.variant = j.at("variant").get<std::string>() == "as_printed"
                    ? HarrisVariant::as_printed
                    : HarrisVariant::plus_variant;
    for (const Json& sj : j.at("stages")) {
        TraceStage s;
        s.name = sj.at("name").get<std::string>();
        s.value = sj.at("value").get<double>();
        s.identity_step = sj.at("identity").get<bool>();
        s.margin = sj.at("margin").get<double>();
        s.ok = sj.at("ok").get<bool>();
        s.note = sj.at("note").get<std::string>();
        r.stages.push_back(std::move(s));
    }
    r.all_ok = j.at("all_ok").get<bool>();
    r.first_failed = j.at("first_failed").get<int>();
    r.identity_tol = j.at("identity_tol").get<double>();
    r.inequality_tol = j.at("inequality_tol").get<double>();
    return r;
}

Json to_json(const ScanRecord& r) {
    return Json{{"m", r.m},
                {"N", r.N},
                {"trials", r.trials},
                {"max_ratio", r.max_ratio},
                {"argmax_trial", r.argmax_trial},
                {"argmax_seed", r.argmax_seed}};
}

ScanRecord scan_record_from_json(const Json& j) {
    ScanRecord r;
    r.m = j.at("m").get<int>();
    r.N = j.at("N").get<int>();
    r.trials = j.at("trials").get<int>();
    r.max_ratio = j.at("max_ratio").get<double>();
    r.argmax_trial = j.at("argmax_trial").get<int>();
    r.argmax_seed = j.at("argmax_seed").get<std::uint64_t>();
    return r;
}

}  // namespace bhlab
