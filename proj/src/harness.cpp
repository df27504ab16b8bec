#include "bhlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "bhlab/rng.hpp"

namespace bhlab {

namespace {

std::string csv_num(double v) {
    if (!std::isfinite(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --- config access with field-level diagnostics ------------------------------

const Json& need(const Json& j, const char* key, const char* ctx) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError(std::string("config: missing required field '") + key +
                          "' in " + ctx);
    return j.at(key);
}

template <class T>
T need_as(const Json& j, const char* key, const char* ctx, const char* type) {
    try {
        return need(j, key, ctx).get<T>();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError(std::string("config: field '") + key + "' in " + ctx +
                          " must be " + type);
    }
}

template <class T>
T opt_as(const Json& j, const char* key, T fallback, const char* ctx,
         const char* type) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return need_as<T>(j, key, ctx, type);
}

// --- worker pool ---------------------------------------------------------------

template <class Fn>
void parallel_for(std::size_t jobs, Fn&& fn) {
    const unsigned workers = effective_workers(jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::size_t err_index = jobs;
    std::exception_ptr err;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (i < err_index) {
                    err_index = i;
                    err = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// --- instance sources ------------------------------------------------------------

EnsembleKind kind_from_string(const std::string& s) {
    if (s == "steinhaus") return EnsembleKind::steinhaus;
    if (s == "rademacher") return EnsembleKind::rademacher;
    if (s == "complex-gaussian") return EnsembleKind::complex_gaussian;
    throw ConfigError("config: unknown ensemble kind '" + s + "'");
}

SupportSpec support_from_json(const Json& j) {
    if (j.is_null()) return SupportSpec::full();
    const std::string mode = need_as<std::string>(j, "mode", "support", "a string");
    if (mode == "full") return SupportSpec::full();
    if (mode == "lambda")
        return SupportSpec::lambda(
            need_as<int>(j, "max_vars", "support", "an integer"));
    if (mode == "explicit") {
        std::vector<MultiIndex> list;
        for (const Json& a :
             need_as<Json>(j, "list", "support", "an array of exponent vectors"))
            list.emplace_back(a.get<std::vector<int>>());
        return SupportSpec::explicit_list(std::move(list));
    }
    throw ConfigError("config: unknown support mode '" + mode + "'");
}

struct SourceSpec {
    enum class Type { ensemble, analytic_ensemble, file, inline_poly } type;
    EnsembleKind kind = EnsembleKind::steinhaus;
    int N = 1;
    int m = 1;
    SupportSpec support;
    int max_degree = 6;       // analytic ensembles
    double density = 0.35;    // analytic ensembles
    std::filesystem::path file;
    Json poly;
};

SourceSpec parse_source(const Json& j) {
    SourceSpec s;
    const std::string type = need_as<std::string>(j, "type", "source", "a string");
    if (type == "ensemble") {
        s.type = SourceSpec::Type::ensemble;
        s.kind = kind_from_string(
            need_as<std::string>(j, "kind", "source", "a string"));
        s.N = need_as<int>(j, "N", "source", "an integer");
        s.m = need_as<int>(j, "m", "source", "an integer");
        s.support = support_from_json(j.contains("support") ? j.at("support")
                                                            : Json());
    } else if (type == "analytic-ensemble") {
        s.type = SourceSpec::Type::analytic_ensemble;
        s.kind = kind_from_string(
            need_as<std::string>(j, "kind", "source", "a string"));
        s.N = need_as<int>(j, "N", "source", "an integer");
        s.max_degree = need_as<int>(j, "max_degree", "source", "an integer");
        s.density = opt_as<double>(j, "density", 0.35, "source", "a number");
    } else if (type == "file") {
        s.type = SourceSpec::Type::file;
        s.file = need_as<std::string>(j, "path", "source", "a string");
    } else if (type == "inline") {
        s.type = SourceSpec::Type::inline_poly;
        s.poly = need(j, "poly", "source");
    } else {
        throw ConfigError("config: unknown source type '" + type + "'");
    }
    return s;
}

Json load_poly_document(const SourceSpec& src) {
    if (src.type == SourceSpec::Type::inline_poly) return src.poly;
    std::ifstream in(src.file);
    if (!in)
        throw ConfigError("config: cannot open polynomial file '" +
                          src.file.string() + "'");
    Json doc;
    in >> doc;
    return doc;
}

HomogeneousPolynomial make_homogeneous(const SourceSpec& src,
                                       std::uint64_t instance_seed) {
    switch (src.type) {
        case SourceSpec::Type::ensemble: {
            EnsembleSpec spec;
            spec.kind = src.kind;
            spec.support = src.support;
            spec.seed = instance_seed;
            spec.dimension = src.N;
            spec.degree = src.m;
            return random_polynomial(spec);
        }
        case SourceSpec::Type::file:
        case SourceSpec::Type::inline_poly:
            return homogeneous_from_json(load_poly_document(src));
        case SourceSpec::Type::analytic_ensemble:
            break;
    }
    throw ConfigError("config: this command needs a homogeneous source");
}

AnalyticPolynomial make_analytic(const SourceSpec& src,
                                 std::uint64_t instance_seed) {
    switch (src.type) {
        case SourceSpec::Type::analytic_ensemble:
            return random_analytic(src.N, src.max_degree, src.density, src.kind,
                                   instance_seed);
        case SourceSpec::Type::ensemble:
            return as_analytic(make_homogeneous(src, instance_seed));
        case SourceSpec::Type::file:
        case SourceSpec::Type::inline_poly: {
            const Json doc = load_poly_document(src);
            return poly_json_is_homogeneous(doc)
                       ? as_analytic(homogeneous_from_json(doc))
                       : analytic_from_json(doc);
        }
    }
    throw ConfigError("config: unusable source");
}

// --- report files ------------------------------------------------------------------

struct BatchRecord {
    int index = 0;
    std::uint64_t seed = 0;
    int m = 0;
    int N = 0;
    std::optional<int> M;
    InequalityReport report;
};

void write_jsonl(const std::filesystem::path& path,
                 const std::vector<Json>& lines) {
    std::ofstream out(path, std::ios::binary);
    for (const Json& j : lines) out << j.dump() << '\n';
}

void write_batch_files(const std::filesystem::path& dir,
                       const std::vector<BatchRecord>& records,
                       std::vector<std::filesystem::path>& outputs) {
    std::vector<Json> lines;
    lines.reserve(records.size());
    for (const BatchRecord& r : records) {
        Json j;
        j["instance"] = r.index;
        j["seed"] = r.seed;
        j["m"] = r.m;
        j["N"] = r.N;
        if (r.M)
            j["M"] = *r.M;
        else
            j["M"] = nullptr;
        j["report"] = to_json(r.report);
        lines.push_back(std::move(j));
    }
    const auto jsonl = dir / "report.jsonl";
    write_jsonl(jsonl, lines);
    outputs.push_back(jsonl);

    const auto csv = dir / "summary.csv";
    std::ofstream out(csv, std::ios::binary);
    out << "name,m,N,M,lhs,rhs,constant,ratio,verdict,seed\n";
    for (const BatchRecord& r : records) {
        out << r.report.name << ',' << r.m << ',' << r.N << ','
            << (r.M ? std::to_string(*r.M) : "") << ','
            << csv_num(r.report.lhs.value) << ','
            << csv_num(r.report.rhs_base.value) << ','
            << csv_num(r.report.constant) << ',' << csv_num(r.report.ratio)
            << ',' << to_string(r.report.verdict) << ',' << r.seed << '\n';
    }
    outputs.push_back(csv);
}

int count_violations(const std::vector<BatchRecord>& records) {
    int n = 0;
    for (const BatchRecord& r : records)
        if (r.report.verdict == Verdict::violated_estimates) ++n;
    return n;
}

RunResult finish(const RunConfig& cfg, std::vector<std::filesystem::path> outputs,
                 int jobs, int violations) {
    RunResult res;
    res.jobs = jobs;
    res.violations = violations;
    res.outputs = std::move(outputs);
    res.exit_code = exit_code_for(violations, cfg.expect_violations);
    std::ostringstream s;
    s << to_string(cfg.command) << ": " << jobs << " job(s), " << violations
      << " sound violation(s)";
    if (violations > 0 && cfg.expect_violations) s << " (expected)";
    s << '\n';
    for (const auto& p : res.outputs) s << "wrote " << p.string() << '\n';
    res.summary = s.str();
    return res;
}

// --- verify ---------------------------------------------------------------------------

RunResult run_verify(const RunConfig& cfg) {
    const Json& params = cfg.params;
    const std::string ineq =
        need_as<std::string>(params, "inequality", "params", "a string");
    const SourceSpec src = parse_source(need(params, "source", "params"));
    const int count = opt_as<int>(params, "count", 1, "params", "an integer");
    if (count < 1) throw ConfigError("config: params.count must be >= 1");
    const bool randomized = src.type == SourceSpec::Type::ensemble ||
                            src.type == SourceSpec::Type::analytic_ensemble;
    if (count > 1 && !randomized)
        throw ConfigError(
            "config: params.count > 1 requires an ensemble source");

    std::vector<BatchRecord> records(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
        BatchRecord rec;
        rec.index = static_cast<int>(i);
        rec.seed = derive_seed(cfg.seed, i);
        const std::uint64_t verifier_seed = derive_seed(cfg.seed, 1000000 + i);
        if (ineq == "helson") {
            const AnalyticPolynomial f = make_analytic(src, rec.seed);
            rec.m = f.max_total_degree();
            rec.N = f.dimension();
            rec.report = verify_helson(f, cfg.effort, verifier_seed);
        } else {
            const HomogeneousPolynomial p = make_homogeneous(src, rec.seed);
            rec.m = p.degree();
            rec.N = p.dimension();
            if (ineq == "main") {
                std::optional<std::set<MultiIndex>> lambda;
                if (params.contains("lambda_max_vars")) {
                    const int mv = need_as<int>(params, "lambda_max_vars",
                                                "params", "an integer");
                    rec.M = mv;
                    const auto list = enumerate_Lambda(p.degree(), p.dimension(), mv);
                    lambda.emplace(list.begin(), list.end());
                }
                rec.report =
                    verify_weighted_bh(p, lambda, cfg.effort, verifier_seed);
            } else if (ineq == "bayart") {
                rec.report = verify_bayart(p, cfg.effort, verifier_seed);
            } else if (ineq == "classic-bh") {
                const bool user = params.contains("user_constant");
                rec.report = verify_classic_bh(
                    p,
                    user ? BhConstantSource::user
                         : BhConstantSource::weighted_times_sqrt2m,
                    opt_as<double>(params, "user_constant", 0.0, "params",
                                   "a number"),
                    cfg.effort, verifier_seed);
            } else if (ineq == "corollary") {
                const int M = need_as<int>(params, "M", "params", "an integer");
                rec.M = M;
                rec.report = verify_corollary(p, M, cfg.effort, verifier_seed);
            } else if (ineq == "harris") {
                const int k = opt_as<int>(params, "k", 1, "params", "an integer");
                const std::string v = opt_as<std::string>(
                    params, "variant", "plus_variant", "params", "a string");
                rec.report = verify_harris(p, k,
                                           v == "as_printed"
                                               ? HarrisVariant::as_printed
                                               : HarrisVariant::plus_variant,
                                           cfg.effort, verifier_seed);
            } else {
                throw ConfigError("config: unknown inequality '" + ineq + "'");
            }
        }
        records[i] = std::move(rec);
    });

    std::vector<std::filesystem::path> outputs;
    write_batch_files(cfg.out_dir, records, outputs);
    return finish(cfg, std::move(outputs), count, count_violations(records));
}

// --- blei ------------------------------------------------------------------------------

RunResult run_blei(const RunConfig& cfg) {
    const Json& params = cfg.params;
    const int m = need_as<int>(params, "m", "params", "an integer");
    const int N = need_as<int>(params, "N", "params", "an integer");
    const int trials = opt_as<int>(params, "trials", 1, "params", "an integer");
    const std::string variant_s = opt_as<std::string>(
        params, "variant", "standard", "params", "a string");
    const BleiVariant variant = variant_s == "printed"
                                    ? BleiVariant::printed_2_over_m_minus_1
                                    : BleiVariant::standard_2_over_m_plus_1;
    const EnsembleKind kind = kind_from_string(opt_as<std::string>(
        params, "kind", "complex-gaussian", "params", "a string"));
    std::size_t size = 1;
    for (int q = 0; q < m; ++q) size *= static_cast<std::size_t>(N);

    std::vector<BatchRecord> records(static_cast<std::size_t>(trials));
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
        BatchRecord rec;
        rec.index = static_cast<int>(t);
        rec.seed = derive_seed(cfg.seed, t);
        rec.m = m;
        rec.N = N;
        Xoshiro256ss rng(rec.seed);
        std::vector<Complex> b(size);
        for (auto& v : b) {
            switch (kind) {
                case EnsembleKind::steinhaus:
                    v = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform01());
                    break;
                case EnsembleKind::rademacher:
                    v = {(rng.next() >> 63) ? 1.0 : -1.0, 0.0};
                    break;
                case EnsembleKind::complex_gaussian: {
                    const auto [x, y] = rng.normal_pair();
                    v = {x / std::sqrt(2.0), y / std::sqrt(2.0)};
                    break;
                }
            }
        }
        rec.report = verify_blei(b, m, N, variant, cfg.effort.eps_rel);
        records[t] = std::move(rec);
    });

    std::vector<std::filesystem::path> outputs;
    write_batch_files(cfg.out_dir, records, outputs);
    return finish(cfg, std::move(outputs), trials, count_violations(records));
}

// --- scan ------------------------------------------------------------------------------

RunResult run_scan(const RunConfig& cfg) {
    const Json& params = cfg.params;
    const auto m_values = need_as<std::vector<int>>(params, "m_values", "params",
                                                    "an integer array");
    const int N = need_as<int>(params, "N", "params", "an integer");
    const int trials = opt_as<int>(params, "trials", 50, "params", "an integer");
    const EnsembleKind kind = kind_from_string(
        opt_as<std::string>(params, "kind", "steinhaus", "params", "a string"));
    const SupportSpec support = support_from_json(
        params.contains("support") ? params.at("support") : Json());

    std::vector<ScanRecord> records(m_values.size());
    parallel_for(m_values.size(), [&](std::size_t i) {
        EnsembleSpec spec;
        spec.kind = kind;
        spec.support = support;
        spec.dimension = N;
        spec.degree = m_values[i];
        spec.seed = derive_seed(cfg.seed, i);
        records[i] = empirical_min_constant(spec, trials, cfg.effort);
    });

    std::vector<Json> lines;
    for (const ScanRecord& r : records) lines.push_back(to_json(r));
    std::vector<std::filesystem::path> outputs;
    const auto jsonl = cfg.out_dir / "report.jsonl";
    write_jsonl(jsonl, lines);
    outputs.push_back(jsonl);
    const auto csv = cfg.out_dir / "summary.csv";
    {
        std::ofstream out(csv, std::ios::binary);
        out << "m,N,trials,max_ratio,argmax_trial,argmax_seed\n";
        for (const ScanRecord& r : records)
            out << r.m << ',' << r.N << ',' << r.trials << ','
                << csv_num(r.max_ratio) << ',' << r.argmax_trial << ','
                << r.argmax_seed << '\n';
    }
    outputs.push_back(csv);
    return finish(cfg, std::move(outputs),
                  static_cast<int>(m_values.size()), 0);
}

// --- trace -----------------------------------------------------------------------------

RunResult run_trace(const RunConfig& cfg) {
    const Json& params = cfg.params;
    const SourceSpec src = parse_source(need(params, "source", "params"));
    const int count = opt_as<int>(params, "count", 1, "params", "an integer");
    const std::string variant_s = opt_as<std::string>(
        params, "variant", "plus_variant", "params", "a string");
    const HarrisVariant variant = variant_s == "as_printed"
                                      ? HarrisVariant::as_printed
                                      : HarrisVariant::plus_variant;
    const double id_tol = opt_as<double>(params, "identity_tol", 1e-12, "params",
                                         "a number");
    const double ineq_tol = opt_as<double>(params, "inequality_tol", 1e-9,
                                           "params", "a number");
    if (count > 1 && src.type != SourceSpec::Type::ensemble)
        throw ConfigError("config: params.count > 1 requires an ensemble source");

    struct TraceRecord {
        std::uint64_t seed = 0;
        TraceReport report;
    };
    std::vector<TraceRecord> records(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
        TraceRecord rec;
        rec.seed = derive_seed(cfg.seed, i);
        const HomogeneousPolynomial p = make_homogeneous(src, rec.seed);
        rec.report = trace_proof_chain(p, cfg.effort,
                                       derive_seed(cfg.seed, 1000000 + i),
                                       variant, id_tol, ineq_tol);
        records[i] = std::move(rec);
    });

    std::vector<Json> lines;
    for (std::size_t i = 0; i < records.size(); ++i) {
        Json j;
        j["instance"] = i;
        j["seed"] = records[i].seed;
        j["report"] = to_json(records[i].report);
        lines.push_back(std::move(j));
    }
    std::vector<std::filesystem::path> outputs;
    const auto jsonl = cfg.out_dir / "report.jsonl";
    write_jsonl(jsonl, lines);
    outputs.push_back(jsonl);

    const auto csv = cfg.out_dir / "summary.csv";
    {
        std::ofstream out(csv, std::ios::binary);
        out << "instance,m,N,variant,all_ok,first_failed";
        const char* names[] = {"lhs_J_sum",       "M_sum_rewrite",
                               "blei_product",    "card_pullout",
                               "divisor_monotonic", "helson_per_factor",
                               "harris_sup"};
        for (const char* n : names) out << ',' << n;
        out << '\n';
        for (std::size_t i = 0; i < records.size(); ++i) {
            const TraceReport& r = records[i].report;
            out << i << ',' << r.m << ',' << r.N << ',' << to_string(r.variant)
                << ',' << (r.all_ok ? 1 : 0) << ',' << r.first_failed;
            for (const TraceStage& s : r.stages) out << ',' << csv_num(s.value);
            out << '\n';
        }
    }
    outputs.push_back(csv);

    int failures = 0;
    for (const auto& rec : records)
        if (!rec.report.all_ok) ++failures;
    return finish(cfg, std::move(outputs), count, failures);
}

// --- constants -------------------------------------------------------------------------

RunResult run_constants(const RunConfig& cfg) {
    const Json& params = cfg.params;
    std::vector<int> m_values;
    if (params.contains("m_values")) {
        m_values = need_as<std::vector<int>>(params, "m_values", "params",
                                             "an integer array");
    } else {
        const int lo = need_as<int>(params, "m_min", "params", "an integer");
        const int hi = need_as<int>(params, "m_max", "params", "an integer");
        for (int m = lo; m <= hi; ++m) m_values.push_back(m);
    }
    const auto M_values = opt_as<std::vector<int>>(
        params, "M_values", {}, "params", "an integer array");
    for (int m : m_values)
        if (m < 2) throw ConfigError("config: constants need m >= 2");

    std::vector<std::filesystem::path> outputs;
    const auto csv = cfg.out_dir / "constants.csv";
    {
        std::ofstream out(csv, std::ios::binary);
        emit_constant_table(out, m_values, M_values);
    }
    outputs.push_back(csv);

    std::vector<Json> lines;
    for (int m : m_values) {
        const ConstantProfile p = constant_profile(m);
        Json j{{"m", p.m},
               {"weighted_bh_constant", p.weighted_bh_constant},
               {"degenerate", p.degenerate},
               {"harris_variant_constant", p.harris_variant_constant},
               {"classic_bh_reference", p.classic_bh_reference},
               {"asymptote", p.asymptote}};
        Json per_M = Json::array();
        for (int M : M_values) {
            const CorollaryConstant cc = corollary_constant(m, M);
            per_M.push_back(Json{{"M", M},
                                 {"lagrange_form", cc.lagrange_form},
                                 {"simplified_form", cc.simplified_form}});
        }
        j["corollary"] = std::move(per_M);
        lines.push_back(std::move(j));
    }
    const auto jsonl = cfg.out_dir / "report.jsonl";
    write_jsonl(jsonl, lines);
    outputs.push_back(jsonl);
    return finish(cfg, std::move(outputs), static_cast<int>(m_values.size()), 0);
}

// --- lemmas ----------------------------------------------------------------------------

BatchRecord lemma_record(std::string name, double lhs, double bound, int m,
                         int N, std::uint64_t seed, std::string detail) {
    BatchRecord rec;
    rec.m = m;
    rec.N = N;
    rec.seed = seed;
    rec.report.name = std::move(name);
    rec.report.lhs.value = lhs;
    rec.report.lhs.kind = EstimateKind::exact;
    rec.report.lhs.method = "exhaustive";
    rec.report.rhs_base.value = bound;
    rec.report.rhs_base.kind = EstimateKind::exact;
    rec.report.rhs_base.method = "bound";
    rec.report.constant = 1.0;
    rec.report.ratio = ratio_of(rec.report.lhs, 1.0, rec.report.rhs_base);
    rec.report.verdict = judge(rec.report.lhs, 1.0, rec.report.rhs_base);
    rec.report.detail = std::move(detail);
    return rec;
}

RunResult run_lemmas(const RunConfig& cfg) {
    const Json& params = cfg.params;
    const int max_m = opt_as<int>(params, "max_m", 5, "params", "an integer");
    const int max_N = opt_as<int>(params, "max_N", 4, "params", "an integer");
    const int part_m = opt_as<int>(params, "partition_max_m", 6, "params",
                                   "an integer");
    const int part_N = opt_as<int>(params, "partition_max_N", 5, "params",
                                   "an integer");
    const int hyper_m = opt_as<int>(params, "hyper_max_m", 12, "params",
                                    "an integer");
    const int hyper_N = opt_as<int>(params, "hyper_max_N", 6, "params",
                                    "an integer");
    const int comp_m = opt_as<int>(params, "comp_max_m", 40, "params",
                                   "an integer");
    const int comp_M = opt_as<int>(params, "comp_max_M", 6, "params",
                                   "an integer");
    const std::int64_t div_limit = opt_as<std::int64_t>(
        params, "divisor_limit", 1000000, "params", "an integer");

    std::vector<BatchRecord> records;

    // Partition identity: sum of card[i] over J(m,N) is N^m.
    {
        std::uint64_t worst = 0;
        for (int N = 1; N <= part_N; ++N) {
            for (int m = 0; m <= part_m; ++m) {
                std::uint64_t total = 0, power = 1;
                for_each_J(m, N, [&total](const IndexTuple& i) {
                    total += class_cardinality(i);
                });
                for (int q = 0; q < m; ++q) power *= static_cast<std::uint64_t>(N);
                const std::uint64_t diff =
                    total > power ? total - power : power - total;
                worst = std::max(worst, diff);
            }
        }
        records.push_back(lemma_record(
            "partition-identity", static_cast<double>(worst), 0.5, part_m,
            part_N, cfg.seed, "max |sum card[i] - N^m| over the range"));
    }

    // Bijection round-trips in both directions.
    {
        std::uint64_t mismatches = 0;
        for (int N = 1; N <= part_N; ++N) {
            for (int m = 0; m <= part_m; ++m) {
                for_each_J(m, N, [&](const IndexTuple& i) {
                    if (!(alpha_to_tuple(tuple_to_alpha(i, N)) == i)) ++mismatches;
                });
                for_each_degree(m, N, [&](const MultiIndex& a) {
                    if (!(tuple_to_alpha(alpha_to_tuple(a), N) == a)) ++mismatches;
                });
            }
        }
        records.push_back(lemma_record(
            "bijection-roundtrip", static_cast<double>(mismatches), 0.5, part_m,
            part_N, cfg.seed, "round-trip mismatches over the range"));
    }

    // card[(i,_k j)] <= m card[i] and divisor monotonicity, exhaustively.
    {
        double worst_growth = 0.0, worst_div = 0.0;
        for (int N = 1; N <= max_N; ++N) {
            for (int m = 1; m <= max_m; ++m) {
                for_each_M(m - 1, N, [&](const IndexTuple& i) {
                    const double card_i =
                        static_cast<double>(class_cardinality(i));
                    const double d_i = static_cast<double>(
                        divisor_weight(tuple_to_alpha(i, N)));
                    for (int k = 1; k <= m; ++k) {
                        for (int j = 1; j <= N; ++j) {
                            const IndexTuple ins = insert_at(i, k, j);
                            worst_growth = std::max(
                                worst_growth,
                                static_cast<double>(class_cardinality(ins)) /
                                    (m * card_i));
                            worst_div = std::max(
                                worst_div,
                                d_i / static_cast<double>(divisor_weight(
                                          tuple_to_alpha(ins, N))));
                        }
                    }
                });
            }
        }
        records.push_back(lemma_record(
            "insertion-growth", worst_growth, 1.0, max_m, max_N, cfg.seed,
            "max card[(i,_k j)] / (m card[i])"));
        records.push_back(lemma_record(
            "divisor-monotonic", worst_div, 1.0, max_m, max_N, cfg.seed,
            "max d(p_i) / d(p_(i,_k j))"));
    }

    // sqrt(alpha + 1) <= sqrt(2)^m.
    {
        double worst = 0.0;
        for (int N = 1; N <= hyper_N; ++N) {
            for (int m = 1; m <= hyper_m; ++m) {
                const double bound = std::pow(2.0, m / 2.0);
                for_each_degree(m, N, [&](const MultiIndex& a) {
                    worst = std::max(
                        worst,
                        std::sqrt(static_cast<double>(divisor_weight(a))) / bound);
                });
            }
        }
        records.push_back(lemma_record("hypercontractive-weight", worst, 1.0,
                                       hyper_m, hyper_N, cfg.seed,
                                       "max sqrt(alpha+1) / sqrt(2)^m"));
    }

    // Lagrange bound on the divisor weight over compositions.
    {
        double worst = 0.0;
        for (int m = 1; m <= comp_m; ++m) {
            for (int M = 1; M <= comp_M; ++M) {
                const CompositionBound b = divisor_weight_bound(m, M, comp_m,
                                                                comp_M);
                worst = std::max(
                    worst, static_cast<double>(b.integer_max) / b.real_bound);
            }
        }
        records.push_back(lemma_record(
            "composition-bound", worst, 1.0, comp_m, comp_M, cfg.seed,
            "max brute-force prod(alpha_r+1) / (m/M+1)^M"));
    }

    // divisor_weight(alpha) == d(n) for every n = p^alpha <= limit.
    {
        const std::size_t limit = static_cast<std::size_t>(div_limit);
        std::vector<std::uint32_t> dcount(limit + 1, 0);
        for (std::size_t d = 1; d <= limit; ++d)
            for (std::size_t n = d; n <= limit; n += d) ++dcount[n];
        std::vector<std::uint32_t> spf(limit + 1, 0);
        for (std::size_t p = 2; p <= limit; ++p) {
            if (spf[p] != 0) continue;
            for (std::size_t n = p; n <= limit; n += p)
                if (spf[n] == 0) spf[n] = static_cast<std::uint32_t>(p);
        }
        std::uint64_t mismatches = 0;
        std::vector<int> exps;
        for (std::size_t n = 2; n <= limit; ++n) {
            exps.clear();
            std::size_t q = n;
            while (q > 1) {
                const std::uint32_t p = spf[q];
                int e = 0;
                while (q % p == 0) {
                    q /= p;
                    ++e;
                }
                exps.push_back(e);
            }
            if (divisor_weight(MultiIndex(exps)) != dcount[n]) ++mismatches;
        }
        // spot-check the sieve itself against trial division
        for (std::size_t n = 1; n <= limit; n += 9973)
            if (count_divisors(n) != dcount[n]) ++mismatches;
        records.push_back(lemma_record(
            "divisor-crosscheck", static_cast<double>(mismatches), 0.5, 0, 0,
            cfg.seed,
            "mismatches of prod(alpha_r+1) vs divisor sieve up to " +
                std::to_string(limit)));
    }

    std::vector<std::filesystem::path> outputs;
    write_batch_files(cfg.out_dir, records, outputs);
    return finish(cfg, std::move(outputs), static_cast<int>(records.size()),
                  count_violations(records));
}

}  // namespace

std::string_view to_string(Command c) {
    switch (c) {
        case Command::verify: return "verify";
        case Command::trace: return "trace";
        case Command::scan: return "scan";
        case Command::constants: return "constants";
        case Command::blei: return "blei";
        case Command::lemmas: return "lemmas";
    }
    return "?";
}

Command command_from_string(std::string_view s) {
    if (s == "verify") return Command::verify;
    if (s == "trace") return Command::trace;
    if (s == "scan") return Command::scan;
    if (s == "constants") return Command::constants;
    if (s == "blei") return Command::blei;
    if (s == "lemmas") return Command::lemmas;
    throw ConfigError("config: unknown command '" + std::string(s) + "'");
}

RunConfig parse_config(const Json& doc, std::optional<Command> cli_command) {
    if (!doc.is_object())
        throw ConfigError("config: document must be a JSON object");
    const int version =
        need_as<int>(doc, "schema_version", "top level", "an integer");
    if (version != 1)
        throw ConfigError("config: unsupported schema_version " +
                          std::to_string(version) + " (expected 1)");

    RunConfig cfg;
    if (doc.contains("command")) {
        cfg.command = command_from_string(
            need_as<std::string>(doc, "command", "top level", "a string"));
        if (cli_command && *cli_command != cfg.command)
            throw ConfigError(
                "config: command field disagrees with the CLI subcommand");
    } else if (cli_command) {
        cfg.command = *cli_command;
    } else {
        throw ConfigError("config: missing required field 'command' in top level");
    }

    cfg.seed = need_as<std::uint64_t>(doc, "seed", "top level",
                                      "an unsigned integer");

    if (doc.contains("effort")) {
        const Json& e = doc.at("effort");
        cfg.effort.search.restarts = opt_as<int>(e, "restarts",
                                                 cfg.effort.search.restarts,
                                                 "effort", "an integer");
        cfg.effort.search.max_sweeps = opt_as<int>(e, "max_sweeps",
                                                   cfg.effort.search.max_sweeps,
                                                   "effort", "an integer");
        cfg.effort.search.tol = opt_as<double>(e, "tol", cfg.effort.search.tol,
                                               "effort", "a number");
        cfg.effort.grid_K =
            opt_as<int>(e, "grid_K", cfg.effort.grid_K, "effort", "an integer");
        cfg.effort.mc_samples = opt_as<std::int64_t>(
            e, "mc_samples", cfg.effort.mc_samples, "effort", "an integer");
        cfg.effort.cost_cap = opt_as<std::int64_t>(
            e, "cost_cap", cfg.effort.cost_cap, "effort", "an integer");
        cfg.effort.quad_max_N = opt_as<int>(e, "quad_max_N",
                                            cfg.effort.quad_max_N, "effort",
                                            "an integer");
        cfg.effort.eps_rel = opt_as<double>(e, "eps_rel", cfg.effort.eps_rel,
                                            "effort", "a number");
    }
    cfg.out_dir = opt_as<std::string>(doc, "out", cfg.out_dir.string(),
                                      "top level", "a string");
    cfg.expect_violations = opt_as<bool>(doc, "expect_violations", false,
                                         "top level", "a boolean");
    if (doc.contains("params")) {
        if (!doc.at("params").is_object())
            throw ConfigError("config: 'params' must be an object");
        cfg.params = doc.at("params");
    }
    return cfg;
}

int exit_code_for(int violations, bool expect_violations) {
    return (violations > 0 && !expect_violations) ? 1 : 0;
}

unsigned effective_workers(std::size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("BHLAB_MAX_WORKERS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw)
            hw = static_cast<unsigned>(cap);
    }
    return static_cast<unsigned>(
        std::min<std::size_t>(hw, std::max<std::size_t>(jobs, 1)));
}

RunResult run(const RunConfig& config) {
    std::filesystem::create_directories(config.out_dir);
    switch (config.command) {
        case Command::verify: return run_verify(config);
        case Command::trace: return run_trace(config);
        case Command::scan: return run_scan(config);
        case Command::constants: return run_constants(config);
        case Command::blei: return run_blei(config);
        case Command::lemmas: return run_lemmas(config);
    }
    throw std::logic_error("run: unreachable");
}

void emit_constant_table(std::ostream& out, const std::vector<int>& m_values,
                         const std::vector<int>& M_values) {
    out << "m,weighted_bh_constant,degenerate,harris_plus_constant,sqrt_m_over_e,"
           "ratio_to_asymptote";
    for (int M : M_values)
        out << ",lagrange_form_M" << M << ",simplified_form_M" << M;
    out << '\n';
    for (int m : m_values) {
        const ConstantProfile p = constant_profile(m);
        out << m << ',' << csv_num(p.weighted_bh_constant) << ','
            << (p.degenerate ? 1 : 0) << ',' << csv_num(p.harris_variant_constant)
            << ',' << csv_num(p.asymptote) << ','
            << csv_num(p.weighted_bh_constant / p.asymptote);
        for (int M : M_values) {
            const CorollaryConstant cc = corollary_constant(m, M);
            out << ',' << csv_num(cc.lagrange_form) << ','
                << csv_num(cc.simplified_form);
        }
        out << '\n';
    }
}

}  // namespace bhlab
