// Acceptance suite: every criterion prints one [PASS]/[FAIL] line; run all
// or a single one with --criterion N. Exit code is the number of failures.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bhlab/harness.hpp"
#include "bhlab/rng.hpp"

using namespace bhlab;

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

HomogeneousPolynomial monomial(int N, int m, std::vector<int> alpha,
                               Complex c = {1.0, 0.0}) {
    HomogeneousPolynomial p(N, m);
    p.set_coefficient(MultiIndex(std::move(alpha)), c);
    return p;
}

HomogeneousPolynomial random_poly(int N, int m, std::uint64_t seed,
                                  EnsembleKind kind, SupportSpec support = {}) {
    EnsembleSpec spec;
    spec.kind = kind;
    spec.support = std::move(support);
    spec.dimension = N;
    spec.degree = m;
    spec.seed = seed;
    return random_polynomial(spec);
}

// ---- criterion 1: combinatorial oracle suite --------------------------------

bool criterion_1(std::string& note) {
    std::uint64_t checks = 0, failures = 0;
    for (int N = 1; N <= 5; ++N) {
        for (int m = 0; m <= 6; ++m) {
            std::uint64_t sum = 0;
            for_each_J(m, N,
                       [&sum](const IndexTuple& i) { sum += class_cardinality(i); });
            std::uint64_t power = 1;
            for (int q = 0; q < m; ++q) power *= static_cast<std::uint64_t>(N);
            ++checks;
            if (sum != power) ++failures;

            for_each_J(m, N, [&](const IndexTuple& i) {
                ++checks;
                if (!(alpha_to_tuple(tuple_to_alpha(i, N)) == i)) ++failures;
            });
            for_each_degree(m, N, [&](const MultiIndex& a) {
                ++checks;
                if (!(tuple_to_alpha(alpha_to_tuple(a), N) == a)) ++failures;
            });
        }
    }
    for (int N = 1; N <= 4; ++N) {
        for (int m = 1; m <= 5; ++m) {
            for_each_M(m - 1, N, [&](const IndexTuple& i) {
                const std::uint64_t card_i = class_cardinality(i);
                const std::uint64_t d_i = divisor_weight(tuple_to_alpha(i, N));
                for (int k = 1; k <= m; ++k) {
                    for (int j = 1; j <= N; ++j) {
                        const IndexTuple ins = insert_at(i, k, j);
                        ++checks;
                        if (class_cardinality(ins) >
                            static_cast<std::uint64_t>(m) * card_i)
                            ++failures;
                        ++checks;
                        if (divisor_weight(tuple_to_alpha(ins, N)) < d_i)
                            ++failures;
                    }
                }
            });
        }
    }
    note = std::to_string(checks) + " exhaustive checks, " +
           std::to_string(failures) + " failures";
    return failures == 0;
}

// ---- criterion 2: divisor-weight cross-check to 1e6 --------------------------

bool criterion_2(std::string& note) {
    constexpr std::size_t limit = 1000000;
    std::vector<std::uint32_t> dcount(limit + 1, 0);
    for (std::size_t d = 1; d <= limit; ++d)
        for (std::size_t n = d; n <= limit; n += d) ++dcount[n];
    std::vector<std::uint32_t> spf(limit + 1, 0);
    for (std::size_t p = 2; p <= limit; ++p) {
        if (spf[p] != 0) continue;
        for (std::size_t n = p; n <= limit; n += p)
            if (spf[n] == 0) spf[n] = static_cast<std::uint32_t>(p);
    }
    std::uint64_t failures = 0;
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
        if (divisor_weight(MultiIndex(exps)) != dcount[n]) ++failures;
    }
    // independent spot-check of the sieve itself, and of the positional
    // p^alpha construction on the small-prime block
    for (std::size_t n = 1; n <= limit; n += 9973)
        if (count_divisors(n) != dcount[n]) ++failures;
    for (int m = 0; m <= 19; ++m) {
        for_each_degree(m, 6, [&](const MultiIndex& a) {
            std::uint64_t n;
            try {
                n = prime_power_product(a);
            } catch (const std::overflow_error&) {
                return;
            }
            if (n > limit) return;
            if (divisor_weight(a) != dcount[n]) ++failures;
        });
    }
    note = "all n <= 1e6 plus positional small-prime block, " +
           std::to_string(failures) + " mismatches";
    return failures == 0;
}

// ---- criterion 3: Lagrange bound over compositions ---------------------------

bool criterion_3(std::string& note) {
    std::uint64_t failures = 0;
    for (int m = 1; m <= 40; ++m) {
        for (int M = 1; M <= 6; ++M) {
            const CompositionBound b = divisor_weight_bound(m, M);
            if (static_cast<double>(b.integer_max) >
                b.real_bound * (1.0 + 1e-12))
                ++failures;
        }
    }
    const CompositionBound eq = divisor_weight_bound(4, 2);
    const bool equality = eq.integer_max == 9 && eq.real_bound == 9.0;
    if (!equality) ++failures;
    note = "m <= 40, M <= 6; equality at (m=4, M=2): integer_max = " +
           std::to_string(eq.integer_max) + ", real_bound = " +
           fmt(eq.real_bound);
    return failures == 0;
}

// ---- criterion 4: Blei, standard exponent -------------------------------------

bool criterion_4(std::string& note) {
    const std::pair<int, int> shapes[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
    std::uint64_t failures = 0, total = 0;
    for (const auto& [m, N] : shapes) {
        std::size_t size = 1;
        for (int q = 0; q < m; ++q) size *= static_cast<std::size_t>(N);
        for (int trial = 0; trial < 500; ++trial) {
            Xoshiro256ss rng(derive_seed(0xb1e1, static_cast<std::uint64_t>(
                                                     m * 1000 + N * 100 + trial)));
            std::vector<Complex> b(size);
            for (auto& v : b) {
                const auto [x, y] = rng.normal_pair();
                v = {x, y};
            }
            const auto rep =
                verify_blei(b, m, N, BleiVariant::standard_2_over_m_plus_1,
                            1e-10);
            ++total;
            if (rep.verdict != Verdict::verified) ++failures;
        }
    }
    std::vector<Complex> ones(4, Complex{1.0, 0.0});
    const auto eq =
        verify_blei(ones, 2, 2, BleiVariant::standard_2_over_m_plus_1, 1e-10);
    const bool equality = std::abs(eq.lhs.value - 4.0) <= 4e-12 &&
                          std::abs(eq.rhs_base.value - 4.0) <= 4e-12;
    note = std::to_string(total) + " random arrays, " +
           std::to_string(failures) + " failures; all-ones case LHS = " +
           fmt(eq.lhs.value) + ", RHS = " + fmt(eq.rhs_base.value);
    return failures == 0 && equality;
}

// ---- criterion 5: Helson verifier ----------------------------------------------

bool criterion_5(std::string& note) {
    int violations = 0, verified = 0;
    for (int i = 0; i < 200; ++i) {
        const int N = 1 + i % 3;
        const EnsembleKind kind = (i % 2 == 0) ? EnsembleKind::steinhaus
                                               : EnsembleKind::complex_gaussian;
        const AnalyticPolynomial f =
            random_analytic(N, 6, 0.35, kind, derive_seed(0x4e15, i));
        Effort effort;
        effort.grid_K = N <= 2 ? 512 : 128;
        const auto rep = verify_helson(f, effort, derive_seed(0x4e16, i));
        if (rep.verdict == Verdict::violated_estimates) ++violations;
        if (rep.verdict == Verdict::verified) ++verified;
    }
    AnalyticPolynomial f(1);
    f.set_coefficient(MultiIndex({0}), {1.0, 0.0});
    f.set_coefficient(MultiIndex({1}), {1.0, 0.0});
    Effort fine;
    fine.grid_K = 4096;
    const auto rep = verify_helson(f, fine, 1);
    const double four_over_pi = 1.2732395447351628;
    const bool closed_form = std::abs(rep.rhs_base.value - four_over_pi) < 1e-6;
    note = "200 instances: " + std::to_string(verified) + " verified, " +
           std::to_string(violations) +
           " sound violations; 1+w case RHS = " + fmt(rep.rhs_base.value) +
           " vs 4/pi = " + fmt(four_over_pi);
    return violations == 0 && closed_form;
}

// ---- criterion 6: Bayart verifier ----------------------------------------------

bool criterion_6(std::string& note) {
    int violations = 0, verified = 0;
    for (int i = 0; i < 200; ++i) {
        const int N = 1 + i % 3;
        const int m = 1 + i % 4;
        const EnsembleKind kind = (i % 2 == 0) ? EnsembleKind::steinhaus
                                               : EnsembleKind::complex_gaussian;
        const HomogeneousPolynomial p =
            random_poly(N, m, derive_seed(0xba1a, i), kind);
        Effort effort;
        effort.grid_K = N <= 2 ? 256 : 64;
        const auto rep = verify_bayart(p, effort, derive_seed(0xba1b, i));
        if (rep.verdict == Verdict::violated_estimates) ++violations;
        if (rep.verdict == Verdict::verified) ++verified;
    }
    note = "200 instances: " + std::to_string(verified) + " verified, " +
           std::to_string(violations) + " sound violations";
    return violations == 0;
}

// ---- criterion 7: weighted-inequality scan plus documented probes ---------------------

bool criterion_7(std::string& note) {
    int violations = 0, verified = 0;
    const Effort effort;
    for (int m : {4, 5, 6}) {
        for (int i = 0; i < 100; ++i) {
            const int N = 2 + i % 3;
            const HomogeneousPolynomial p = random_poly(
                N, m, derive_seed(0x3a17, m * 1000 + i), EnsembleKind::steinhaus);
            const auto rep = verify_weighted_bh(p, std::nullopt, effort,
                                                 derive_seed(0x3a18, m * 1000 + i));
            if (rep.verdict == Verdict::violated_estimates) ++violations;
            if (rep.verdict == Verdict::verified) ++verified;
        }
    }

    // documented probes
    const auto probe = verify_weighted_bh(monomial(1, 3, {3}), std::nullopt,
                                           effort, 7);
    const double expect_ratio = 0.5 / weighted_bh_constant(3).value;
    const bool probe_ok =
        probe.verdict == Verdict::violated_estimates &&
        std::abs(probe.lhs.value - 0.5) < 1e-13 &&
        std::abs(expect_ratio - 1.3867225487012694) < 1e-12 &&
        std::abs(probe.ratio - expect_ratio) < 1e-3;
    const auto degen = verify_weighted_bh(monomial(2, 2, {1, 1}), std::nullopt,
                                           effort, 8);
    const bool degen_ok = degen.verdict == Verdict::degenerate;

    // the probes run through the harness under --expect-violations
    Json cfg_json;
    cfg_json["schema_version"] = 1;
    cfg_json["command"] = "verify";
    cfg_json["seed"] = 7;
    cfg_json["expect_violations"] = true;
    cfg_json["out"] = (std::filesystem::temp_directory_path() /
                       "bhlab-acceptance-probe").string();
    Json poly;
    poly["N"] = 1;
    poly["m"] = 3;
    poly["terms"] =
        Json::array({Json{{"alpha", {3}}, {"re", 1.0}, {"im", 0.0}}});
    cfg_json["params"] = Json{
        {"inequality", "main"},
        {"source", Json{{"type", "inline"}, {"poly", poly}}}};
    const RunResult probe_run = run(parse_config(cfg_json));
    const bool harness_ok = probe_run.exit_code == 0 && probe_run.violations == 1;

    note = "300 Steinhaus instances (m in {4,5,6}): " +
           std::to_string(verified) + " verified, " + std::to_string(violations) +
           " sound violations; z^3 probe ratio = " + fmt(probe.ratio) +
           " (expected ~" + fmt(expect_ratio) + "), m=2 degenerate, " +
           "--expect-violations exit " + std::to_string(probe_run.exit_code);
    return violations == 0 && probe_ok && degen_ok && harness_ok;
}

// ---- criterion 8: bounded-variable corollary ------------------------------------

bool criterion_8(std::string& note) {
    int violations = 0, verified = 0, count = 0;
    const Effort effort;
    const auto run_block = [&](int M, int max_m, int instances) {
        for (int i = 0; i < instances; ++i) {
            const int m = 2 + i % (max_m - 1);
            const HomogeneousPolynomial p =
                random_poly(3, m, derive_seed(0xc070 + M, i),
                            EnsembleKind::steinhaus, SupportSpec::lambda(M));
            const auto rep =
                verify_corollary(p, M, effort, derive_seed(0xc080 + M, i));
            ++count;
            if (rep.verdict == Verdict::violated_estimates) ++violations;
            if (rep.verdict == Verdict::verified) ++verified;
        }
    };
    run_block(1, 8, 50);
    run_block(2, 6, 50);
    note = std::to_string(count) + " instances on Lambda(N,M): " +
           std::to_string(verified) + " verified, " + std::to_string(violations) +
           " sound violations";
    return violations == 0;
}

// ---- criterion 9: asymptote of the constant --------------------------------------

bool criterion_9(std::string& note) {
    const auto ratio = [](int m) {
        return weighted_bh_constant(m).value * std::exp(1.0) / std::sqrt(m);
    };
    const double r50 = ratio(50), r100 = ratio(100), r200 = ratio(200),
                 r400 = ratio(400);
    const bool at100 = std::abs(r100 - 0.9772) <= 0.0005;
    const bool at200 = std::abs(r200 - 0.9844) <= 0.0005;
    const bool mono = r50 < r100 && r100 < r200 && r200 < r400;
    note = "ratio(m) = constant*e/sqrt(m): r(50) = " + fmt(r50) +
           ", r(100) = " + fmt(r100) + " (target 0.9772 +- 0.0005: " +
           (at100 ? "ok" : "MISS") + "), r(200) = " + fmt(r200) +
           " (target 0.9844 +- 0.0005: " + (at200 ? "ok" : "MISS") +
           "), monotone: " + (mono ? "yes" : "no") +
           "; note: exact evaluation of the constant formula gives 0.97228 at "
           "m = 100 - the 0.9772 target matches only the m^(-1/2m) factor";
    return at100 && at200 && mono;
}

// ---- criterion 10: proof-chain tracer ---------------------------------------------

bool criterion_10(std::string& note) {
    int failures = 0, identity_misses = 0;
    const Effort effort;
    for (int i = 0; i < 50; ++i) {
        const int m = 3 + i % 2;
        const int N = 2 + i % 2;
        const HomogeneousPolynomial p =
            random_poly(N, m, derive_seed(0x7ace, i), EnsembleKind::steinhaus);
        const auto rep = trace_proof_chain(p, effort, derive_seed(0x7acf, i),
                                           HarrisVariant::plus_variant);
        if (!rep.all_ok) ++failures;
        if (std::abs(rep.stages[1].value - rep.stages[0].value) >
            1e-12 * std::max(rep.stages[0].value, 1e-30))
            ++identity_misses;
    }
    note = "50 instances (m in {3,4}, N <= 3): " + std::to_string(failures) +
           " chain failures, " + std::to_string(identity_misses) +
           " identity mismatches beyond 1e-12";
    return failures == 0 && identity_misses == 0;
}

// ---- criterion 11: sup-norm sandwich and Parseval ----------------------------------

bool criterion_11(std::string& note) {
    int sandwich_failures = 0, parseval_failures = 0;
    const SearchBudget budget;
    for (int i = 0; i < 100; ++i) {
        const int N = 1 + i % 3;
        const int m = 1 + i % 4;
        const HomogeneousPolynomial p = random_poly(
            N, m, derive_seed(0x5a4d, i),
            (i % 2 == 0) ? EnsembleKind::steinhaus
                         : EnsembleKind::complex_gaussian);
        const double lo = sup_norm_lower(p, budget, derive_seed(0x5a4e, i)).value;
        const double hi = sup_norm_upper(p, 64).value;
        if (!(lo <= hi * (1.0 + 1e-12))) ++sandwich_failures;
        const double viagrid = torus_l2_grid(p, 2 * m + 2).value;
        const double exact = l2_coeff_norm(p).value;
        if (std::abs(viagrid - exact) > 1e-10 * std::max(exact, 1e-30))
            ++parseval_failures;
    }

    // single monomials: both bounds within 1e-6 of 1
    double worst_lo = 0.0, worst_hi = 0.0;
    for (int m = 1; m <= 4; ++m) {
        const auto p = monomial(1, m, {m});
        const double lo = sup_norm_lower(p, budget, 1).value;
        const int K =
            static_cast<int>(std::ceil(3.14159265358979 * m * 1.02e6)) + 1;
        const double hi = sup_norm_upper(p, K).value;
        worst_lo = std::max(worst_lo, std::abs(lo - 1.0));
        worst_hi = std::max(worst_hi, std::abs(hi - 1.0));
    }
    note = "100 instances: " + std::to_string(sandwich_failures) +
           " sandwich failures, " + std::to_string(parseval_failures) +
           " Parseval misses; single monomials |lower-1| <= " + fmt(worst_lo) +
           ", |upper-1| <= " + fmt(worst_hi);
    return sandwich_failures == 0 && parseval_failures == 0 &&
           worst_lo <= 1e-6 && worst_hi <= 1e-6;
}

// ---- criterion 12: byte-identical reruns --------------------------------------------

bool criterion_12(std::string& note) {
    const auto read_all = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const auto base = std::filesystem::temp_directory_path();
    std::vector<Json> configs;
    {
        Json j;
        j["schema_version"] = 1;
        j["command"] = "verify";
        j["seed"] = 20240809;
        j["params"] = Json{{"inequality", "main"},
                           {"source", Json{{"type", "ensemble"},
                                           {"kind", "steinhaus"},
                                           {"N", 3},
                                           {"m", 4}}},
                           {"count", 10}};
        configs.push_back(j);
    }
    {
        Json j;
        j["schema_version"] = 1;
        j["command"] = "scan";
        j["seed"] = 99;
        j["params"] = Json{{"m_values", Json::array({3, 4, 5})},
                           {"N", 1},
                           {"kind", "steinhaus"},
                           {"trials", 5}};
        configs.push_back(j);
    }
    {
        Json j;
        j["schema_version"] = 1;
        j["command"] = "constants";
        j["seed"] = 1;
        j["params"] = Json{{"m_values", Json::array({2, 3, 4, 50, 100})},
                           {"M_values", Json::array({1, 2})}};
        configs.push_back(j);
    }
    {
        Json j;
        j["schema_version"] = 1;
        j["command"] = "blei";
        j["seed"] = 5;
        j["params"] = Json{{"m", 2}, {"N", 3}, {"trials", 20}};
        configs.push_back(j);
    }
    {
        Json j;
        j["schema_version"] = 1;
        j["command"] = "trace";
        j["seed"] = 6;
        j["params"] = Json{{"source", Json{{"type", "ensemble"},
                                           {"kind", "steinhaus"},
                                           {"N", 2},
                                           {"m", 3}}},
                           {"count", 5}};
        configs.push_back(j);
    }
    {
        Json j;
        j["schema_version"] = 1;
        j["command"] = "lemmas";
        j["seed"] = 2;
        j["params"] = Json{{"max_m", 4},          {"max_N", 3},
                           {"partition_max_m", 5}, {"partition_max_N", 4},
                           {"hyper_max_m", 8},    {"hyper_max_N", 4},
                           {"comp_max_m", 20},    {"comp_max_M", 4},
                           {"divisor_limit", 100000}};
        configs.push_back(j);
    }

    int mismatched_files = 0, compared = 0;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        const auto d1 = base / ("bhlab-acc12-a-" + std::to_string(c));
        const auto d2 = base / ("bhlab-acc12-b-" + std::to_string(c));
        std::filesystem::remove_all(d1);
        std::filesystem::remove_all(d2);
        RunConfig c1 = parse_config(configs[c]);
        c1.out_dir = d1;
        c1.expect_violations = true;
        RunConfig c2 = parse_config(configs[c]);
        c2.out_dir = d2;
        c2.expect_violations = true;
        const RunResult r1 = run(c1);
        const RunResult r2 = run(c2);
        if (r1.outputs.size() != r2.outputs.size()) {
            ++mismatched_files;
            continue;
        }
        for (std::size_t f = 0; f < r1.outputs.size(); ++f) {
            ++compared;
            const std::string a = read_all(r1.outputs[f]);
            if (a.empty() || a != read_all(r2.outputs[f])) ++mismatched_files;
        }
    }
    note = std::to_string(configs.size()) + " commands rerun, " +
           std::to_string(compared) + " report files compared, " +
           std::to_string(mismatched_files) + " byte mismatches";
    return mismatched_files == 0;
}

struct Criterion {
    int id;
    const char* title;
    bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "combinatorial oracle suite (partition, bijection, insertion, divisor)",
     criterion_1},
    {2, "divisor-weight cross-check up to 1e6", criterion_2},
    {3, "Lagrange bound over compositions (m <= 40, M <= 6)", criterion_3},
    {4, "mixed-norm inequality, standard exponent, 2000 random arrays",
     criterion_4},
    {5, "weighted-l2 vs torus L1 verifier, 200 analytic instances", criterion_5},
    {6, "coefficient-l2 vs torus L1 verifier, 200 homogeneous instances",
     criterion_6},
    {7, "main weighted inequality scan plus documented small-degree probes",
     criterion_7},
    {8, "bounded-variable corollary, 100 instances", criterion_8},
    {9, "constant asymptote sqrt(m)/e", criterion_9},
    {10, "proof-chain tracer monotonicity", criterion_10},
    {11, "sup-norm sandwich and Parseval cross-check", criterion_11},
    {12, "byte-identical reruns of the full harness suite", criterion_12},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[i + 1]);
    }
    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        std::string note;
        bool ok = false;
        try {
            ok = c.fn(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %2d: %s - %s\n", ok ? "PASS" : "FAIL", c.id,
                    c.title, note.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
