// Acceptance run: one PASS/FAIL line per criterion, tolerances and time
// limits pinned below. Exit status is nonzero if any criterion fails.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "causalpath/cli.hpp"
#include "causalpath/graphs.hpp"
#include "causalpath/ingest.hpp"
#include "causalpath/markov.hpp"
#include "causalpath/measure.hpp"
#include "causalpath/scenarios.hpp"
#include "enumeration.hpp"
#include "random_models.hpp"
#include <json.hpp>

using namespace causalpath;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;
    std::function<Outcome()> run;
};

double binary_kl(double p, double q) { return p * std::log2(p / q) + (1 - p) * std::log2((1 - p) / (1 - q)); }

JointPath make_path(const JointMarkovModel& m, std::vector<Symbol> x, std::vector<Symbol> y) {
    return JointPath{SymbolSeq(m.alphabet_x(), std::move(x)), SymbolSeq(m.alphabet_y(), std::move(y)), std::nullopt};
}

// 1. Recursive filter vs brute-force marginalization.
Outcome filter_vs_brute() {
    constexpr double tol = 1e-10;
    constexpr int exhaustive_len = 8;  // every binary history up to this length
    constexpr int random_len = 12;     // longer prefixes of random histories
    constexpr int random_histories = 10;
    double worst = 0.0;
    std::size_t checks = 0;
    std::mt19937_64 rng(kSeed);
    std::bernoulli_distribution coin(0.5);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const JointMarkovModel m = testutil::random_model(kSeed * 1000 + s);
        auto check = [&](const FilterState& f, std::span<const Symbol> x) {
            worst = std::max(worst, std::abs(true_restricted_brute(m, x)[0] - f.predict_x()[0]));
            ++checks;
        };
        // Depth-first over the binary history tree, each history once.
        std::vector<Symbol> x;
        std::function<void(const FilterState&)> walk = [&](const FilterState& f) {
            check(f, x);
            if (static_cast<int>(x.size()) == exhaustive_len) return;
            for (Symbol v : {0, 1}) {
                x.push_back(v);
                walk(true_restricted_dist_recursive(f, v).second);
                x.pop_back();
            }
        };
        walk(FilterState(m));
        for (int r = 0; r < random_histories; ++r) {
            std::vector<Symbol> h(random_len);
            for (auto& v : h) v = coin(rng) ? 1 : 0;
            FilterState f(m);
            for (std::size_t i = 0; i <= h.size(); ++i) {
                if (static_cast<int>(i) > exhaustive_len) check(f, std::span(h).first(i));
                if (i < h.size()) f = true_restricted_dist_recursive(f, h[i]).second;
            }
        }
    }
    return {worst <= tol, fmt::format("max |filter - brute| = {:.2e} (tol {:.0e}) over {} predictions", worst, tol, checks)};
}

// 2. Expected causal measure summed over time vs entropy-difference DI.
Outcome finite_horizon_identity() {
    constexpr double tol = 1e-9;
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const JointMarkovModel m = testutil::random_model(kSeed * 2000 + s);
        for (int n = 1; n <= 8; ++n) {
            const oracle::JointPathLaw law = oracle::enumerate_paths(m, n);
            double lhs = 0.0;
            for (std::uint64_t code = 0; code < law.prob.size(); ++code) {
                const JointPath p = make_path(m, law.xs(code), law.ys(code));
                for (double c : true_causal_series(m, p).measure) lhs += law.prob[code] * c;
            }
            worst = std::max(worst, std::abs(lhs - oracle::directed_information_by_entropies(law)));
        }
    }
    return {worst <= tol, fmt::format("max |sum E[C(i)] - DI| = {:.2e} (tol {:.0e}), 20 models, n = 1..8", worst, tol)};
}

// 3. Closed forms of the two analytic examples, and the estimator on the first.
Outcome analytic_examples() {
    constexpr double exact_tol = 1e-12;
    constexpr double est_tol = 0.02;
    const double p1 = 0.9, p2 = 0.1, eps = 0.1;
    const double mix = p1 * eps + p2 * (1 - eps);
    const double c_y1 = binary_kl(p1, mix), c_y0 = binary_kl(p2, mix);
    const JointMarkovModel m = iid_influence_model(p1, p2, eps);
    const JointPath path = simulate(m, 10000, kSeed);
    CausalTrace trace = estimate_causal_trace(path.x, path.y, {});
    attach_truth(trace, m, path);
    double exact_err = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        exact_err = std::max(exact_err, std::abs((*trace.truth)[i] - (path.y[i - 1] == 1 ? c_y1 : c_y0)));
    }
    double sum[2] = {0, 0};
    int cnt[2] = {0, 0};
    for (std::size_t i = path.size() - 1000; i < path.size(); ++i) {
        const int s = path.y[i - 1];
        sum[s] += trace.estimate[i];
        ++cnt[s];
    }
    const double est1 = sum[1] / cnt[1], est0 = sum[0] / cnt[0];

    const double ce = 0.05;
    const JointMarkovModel cc = cross_copy_model(ce);
    const JointPath cp = simulate(cc, 5000, kSeed);
    const TruthSeries ct = true_causal_series(cc, cp);
    const double agree = binary_kl(ce, 2 * ce * (1 - ce));
    const double differ = binary_kl(ce, ce * ce + (1 - ce) * (1 - ce));
    double cc_err = 0.0;
    for (std::size_t i = 2; i < cp.size(); ++i) {
        cc_err = std::max(cc_err, std::abs(ct.measure[i] - (cp.x[i - 2] == cp.y[i - 1] ? agree : differ)));
    }
    const bool pass = exact_err <= exact_tol && cc_err <= exact_tol && std::abs(est1 - c_y1) <= est_tol &&
                      std::abs(est0 - c_y0) <= est_tol;
    return {pass, fmt::format("closed-form err {:.1e}, cross-copy err {:.1e} (tol {:.0e}); estimator y=1 {:.4f} vs "
                              "{:.4f} ({} steps), y=0 {:.4f} vs {:.4f} ({} steps) (tol {})",
                              exact_err, cc_err, exact_tol, est1, c_y1, cnt[1], est0, c_y0, cnt[0], est_tol)};
}

// 4. Realized regrets within their bounds.
Outcome regret_containment() {
    int violations = 0;
    double worst_ratio = 0.0;
    for (Scenario sc : {Scenario::Independent, Scenario::Unidirectional}) {
        const JointMarkovModel m = scenario_model(sc);
        for (std::uint64_t seed = kSeed; seed < kSeed + 5; ++seed) {
            const JointPath p = simulate(m, 10000, seed);
            CausalTrace t = estimate_causal_trace(p.x, p.y, {});
            attach_truth(t, m, p);
            const auto cr = realized_causality_regret(t);
            const auto bound = cumulative_bound(t);
            for (std::size_t n : {100u, 1000u, 10000u}) {
                const double r = cr[n - 1] / static_cast<double>(n);
                const double b = bound[n - 1] / static_cast<double>(n);
                worst_ratio = std::max(worst_ratio, r / b);
                if (r > b) ++violations;
            }
            const PredictorRegret pr = realized_predictor_regret(t);
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (pr.complete[i] > complete_regret_budget(t.meta, i + 1)) ++violations;
                if (pr.reference[i] > reference_regret_budget(t.meta, i + 1)) ++violations;
            }
        }
    }
    return {violations == 0, fmt::format("{} violations; largest CR/bound at checkpoints {:.3f}", violations, worst_ratio)};
}

// 5. Partial measure consistency.
Outcome pdi_consistency() {
    constexpr double tol = 0.01;
    const JointMarkovModel m = scenario_model(Scenario::Bidirectional);
    const JointPath p = simulate(m, 50000, kSeed);
    EstimatorConfig cfg;
    cfg.staleness = 1;
    const CausalTrace t = estimate_partial_trace(p.x, p.y, cfg);
    const double avg = tail_average(t, 3);  // steps i > d + k
    const double pdi = exact_pdi_rate(m, 1);
    return {std::abs(avg - pdi) <= tol,
            fmt::format("time-averaged partial trace {:.5f}, PDI rate {:.5f}, |diff| {:.5f} (tol {})", avg, pdi,
                        std::abs(avg - pdi), tol)};
}

// 6. Plug-in bias toward the truncated rate, and the rate sandwich.
Outcome bias_and_sandwich() {
    constexpr double tol = 0.01;
    constexpr double z = 3.0;
    constexpr std::size_t n = 1000000;
    const JointMarkovModel m = scenario_model(Scenario::Bidirectional);
    const JointPath p = simulate(m, n, kSeed);
    const double plug = tail_average(estimate_causal_trace(p.x, p.y, {}), 2);
    const double tdi = exact_tdi_rate(m, 1);
    const double pdi = exact_pdi_rate(m, 1);
    const MonteCarloRate mc = mc_di_rate(m, n, kSeed);
    const double se = mc.standard_error;
    const bool near = std::abs(plug - tdi) <= tol;
    const bool sandwich = pdi - z * se <= mc.mean && mc.mean <= tdi + z * se;
    const bool gap = tdi - mc.mean > z * se;
    return {near && sandwich && gap,
            fmt::format("plug-in {:.5f} vs TDI {:.5f} (tol {}); PDI {:.5f} <= MC {:.5f} <= TDI within {} SE "
                        "(SE {:.5f}): {}; TDI - MC = {:.5f} > {} SE: {}",
                        plug, tdi, tol, pdi, mc.mean, z, se, sandwich ? "yes" : "no", tdi - mc.mean, z,
                        gap ? "yes" : "no")};
}

// 7. d-separation cases, classification, soundness.
Outcome graph_suite() {
    auto X = [](int t) { return Node{Process::X, t}; };
    auto Y = [](int t) { return Node{Process::Y, t}; };
    auto Zn = [](int t) { return Node{Process::Z, t}; };
    struct Case {
        std::vector<std::pair<Node, Node>> edges;
        NodeSet a, b, c;
        bool separated;
    };
    const std::vector<std::pair<Node, Node>> chain{{X(1), X(2)}, {X(2), X(3)}};
    const std::vector<std::pair<Node, Node>> long_chain{{X(1), Y(2)}, {Y(2), Zn(3)}, {Zn(3), X(4)}};
    const std::vector<std::pair<Node, Node>> fork{{X(1), Y(2)}, {X(1), X(2)}};
    const std::vector<std::pair<Node, Node>> collider{{X(1), X(2)}, {Y(1), X(2)}};
    const std::vector<std::pair<Node, Node>> collider_child{{X(1), X(2)}, {Y(1), X(2)}, {X(2), Y(3)}};
    const std::vector<Case> cases{
        {chain, {X(1)}, {X(3)}, {}, false},
        {chain, {X(1)}, {X(3)}, {X(2)}, true},
        {long_chain, {X(1)}, {X(4)}, {}, false},
        {long_chain, {X(1)}, {X(4)}, {Y(2)}, true},
        {long_chain, {X(1)}, {X(4)}, {Zn(3)}, true},
        {fork, {Y(2)}, {X(2)}, {}, false},
        {fork, {Y(2)}, {X(2)}, {X(1)}, true},
        {collider, {X(1)}, {Y(1)}, {}, true},
        {collider, {X(1)}, {Y(1)}, {X(2)}, false},
        {collider_child, {X(1)}, {Y(1)}, {Y(3)}, false},
        {collider_child, {X(1)}, {Y(3)}, {X(2)}, true},
        {{{X(1), X(2)}, {Y(1), Y(2)}}, {X(1), X(2)}, {Y(1), Y(2)}, {}, true},
    };
    int case_ok = 0;
    for (const Case& k : cases) {
        UnrolledDag g(4, 3, true);
        for (const auto& [from, to] : k.edges) g.add_edge(from, to);
        if (d_separated(g, k.a, k.b, k.c) == k.separated) ++case_ok;
    }

    const std::vector<std::pair<Scenario, Markovicity>> expected{
        {Scenario::Independent, Markovicity::ConditionallyDMarkov},
        {Scenario::Unidirectional, Markovicity::MarkovOrderAtMost2d},
        {Scenario::Bidirectional, Markovicity::NoFiniteOrder},
    };
    int class_ok = 0;
    for (const auto& [sc, branch] : expected) {
        if (classify_markovicity(scenario_model(sc)).branch == branch) ++class_ok;
    }

    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<int> pick(0, 4);
    int triples = 0, separated = 0, unsound = 0;
    for (std::uint64_t seed = kSeed; triples < 200; ++seed) {
        const JointMarkovModel m = testutil::sparse_model(seed, true);
        const UnrolledDag g = build_unrolled_network(m, 6);
        const HorizonLaw law = HorizonLaw::from_initial(m, 6);
        for (int rep = 0; rep < 10 && triples < 200;) {
            NodeSet a, b, c;
            for (Node nd : g.nodes()) {
                switch (pick(rng)) {
                    case 0: if (a.size() < 2) a.insert(nd); break;
                    case 1: if (b.size() < 2) b.insert(nd); break;
                    case 2: c.insert(nd); break;
                    default: break;
                }
            }
            if (a.empty() || b.empty()) continue;
            ++rep;
            ++triples;
            if (d_separated(g, a, b, c)) {
                ++separated;
                if (law.conditional_mutual_information(a, b, c) > kZeroInformationBits) ++unsound;
            }
        }
    }
    const bool pass = case_ok == static_cast<int>(cases.size()) && class_ok == 3 && unsound == 0;
    return {pass, fmt::format("d-sep cases {}/{}; classifications {}/3; soundness {} triples, {} separated, {} with "
                              "CMI > {:.0e}",
                              case_ok, cases.size(), class_ok, triples, separated, unsound, kZeroInformationBits)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

int run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    return cli::run(args, out, err);
}

// 8. Fixture pipeline against frozen outputs, quantizer cases, optional real data.
Outcome ingestion_golden() {
    const fs::path src = CAUSALPATH_SOURCE_DIR;
    const fs::path out = fs::temp_directory_path() / "causalpath-acceptance-stocks";
    fs::remove_all(out);
    Outcome o;
    const int rc = run_cli({"causalpath", "stocks", "--x", (src / "data/fixtures/market_a.csv").string(), "--y",
                            (src / "data/fixtures/market_b.csv").string(), "--names", "a,b", "--out", out.string()});
    int identical = 0;
    const std::vector<std::string> files{"symbols_a.csv", "symbols_b.csv", "summary.csv"};
    for (const auto& f : files) {
        const std::string got = slurp(out / f);
        if (!got.empty() && got == slurp(src / "tests/golden/stocks" / f)) ++identical;
    }
    o.pass = rc == 0 && identical == static_cast<int>(files.size());

    struct QCase {
        double to;
        Symbol expect;
    };
    const std::vector<QCase> qcases{{101.2, 2}, {99.1, 0}, {100.3, 1}, {100.8, 1}, {99.2, 1}};
    int q_ok = 0;
    for (const auto& q : qcases) {
        if (pct_change_quantize(std::vector<double>{100.0, q.to})[0] == q.expect) ++q_ok;
    }
    o.pass = o.pass && q_ok == static_cast<int>(qcases.size());
    o.detail = fmt::format("golden files identical {}/{}; quantizer cases {}/{}", identical, files.size(), q_ok,
                           qcases.size());

    const char* dj = std::getenv("CAUSALPATH_DJ_CSV");
    const char* hs = std::getenv("CAUSALPATH_HS_CSV");
    if (dj == nullptr || hs == nullptr) {
        o.detail += "; real-data check SKIP (set CAUSALPATH_DJ_CSV and CAUSALPATH_HS_CSV)";
        return o;
    }
    const fs::path real = fs::temp_directory_path() / "causalpath-acceptance-real";
    fs::remove_all(real);
    if (run_cli({"causalpath", "stocks", "--x", dj, "--y", hs, "--names", "dj,hs", "--out", real.string()}) != 0) {
        o.pass = false;
        o.detail += "; real-data pipeline failed";
        return o;
    }
    const auto meta = nlohmann::json::parse(slurp(real / "metadata.json"));
    const double dj_hs = meta["directions"]["dj->hs"]["plug_in_rate_bits"].get<double>();
    const double hs_dj = meta["directions"]["hs->dj"]["plug_in_rate_bits"].get<double>();
    o.pass = o.pass && dj_hs > hs_dj;
    o.detail += fmt::format("; real data DI(dj->hs) {:.5f} vs DI(hs->dj) {:.5f}", dj_hs, hs_dj);
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "filter-vs-brute", 10, filter_vs_brute},
        {2, "finite-horizon-identity", 30, finite_horizon_identity},
        {3, "analytic-examples", 20, analytic_examples},
        {4, "regret-containment", 60, regret_containment},
        {5, "pdi-consistency", 60, pdi_consistency},
        {6, "bias-and-sandwich", 120, bias_and_sandwich},
        {7, "graph-suite", 30, graph_suite},
        {8, "ingestion-golden", 10, ingestion_golden},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.time_limit_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failed;
        fmt::print("{} {} {}: {}; {:.2f} s (limit {} s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail, secs,
                   c.time_limit_s);
        std::fflush(stdout);
    }
    fmt::print("{}/{} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
