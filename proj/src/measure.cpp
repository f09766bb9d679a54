#include "causalpath/measure.hpp"

#include <cmath>
#include <numeric>

namespace causalpath {

std::string direction_label(Direction d) { return d == Direction::YtoX ? "yx" : "xy"; }

namespace {

ContextSchema complete_schema(const TraceMetadata& m) {
    const Alphabet target(m.target_alphabet);
    const Alphabet own(m.target_alphabet * m.conditioning_alphabet);
    return ContextSchema::with_side(target, own, Alphabet(m.side_alphabet), m.config.depth, 0);
}

ContextSchema reference_schema(const TraceMetadata& m) {
    const Alphabet target(m.target_alphabet);
    const Alphabet own(m.target_alphabet * m.conditioning_alphabet);
    if (m.reference_has_side) {
        return ContextSchema::with_side(target, own, Alphabet(m.side_alphabet), m.config.depth,
                                        *m.config.staleness);
    }
    return ContextSchema::plain(target, own, m.config.depth);
}

CausalTrace run_pair(const SymbolSeq& x, const SymbolSeq& y, const EstimatorConfig& config,
                     const std::optional<SymbolSeq>& z) {
    if (config.depth < 1) {
        throw InputError("estimator depth must be at least 1");
    }
    if (config.staleness && *config.staleness < 1) {
        throw InputError("staleness must be at least 1");
    }
    if (x.size() != y.size() || (z && z->size() != x.size())) {
        throw InputError("sequences must have equal length");
    }
    const SymbolSeq& target = config.direction == Direction::YtoX ? x : y;
    const SymbolSeq& side = config.direction == Direction::YtoX ? y : x;
    const std::size_t n = target.size();
    if (target.alphabet().size() < 2 || side.alphabet().size() < 2) {
        throw InputError("target and side alphabets need at least two symbols");
    }

    CausalTrace trace;
    TraceMetadata& meta = trace.meta;
    meta.config = config;
    meta.horizon = n;
    meta.target_alphabet = target.alphabet().size();
    meta.side_alphabet = side.alphabet().size();
    meta.conditioning_alphabet = z ? z->alphabet().size() : 1;
    if (config.staleness && n > 0 && static_cast<std::size_t>(*config.staleness) + 1 >= n) {
        // y^{i-1-k} is empty for every i <= n: nothing stale is ever revealed.
        meta.staleness_collapsed = true;
    }
    meta.reference_has_side = config.staleness.has_value() && !meta.staleness_collapsed;

    const ContextSchema cs = complete_schema(meta);
    const ContextSchema rs = reference_schema(meta);
    meta.complete_leaves = cs.leaf_count();
    meta.complete_nodes = cs.node_count();
    meta.reference_leaves = rs.leaf_count();
    meta.reference_nodes = rs.node_count();

    std::vector<Symbol> own(target.data());
    if (z) {
        const int mz = z->alphabet().size();
        for (std::size_t t = 0; t < n; ++t) {
            own[t] = own[t] * mz + (*z)[t];
        }
    }

    ContextTree complete(cs);
    ContextTree reference(rs);
    trace.estimate.reserve(n);
    trace.c.reserve(n);
    trace.complete_loss.reserve(n);
    trace.reference_loss.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::vector<Symbol> ctx_c = cs.context_at(own, side.data(), t);
        const std::vector<Symbol> ctx_r = rs.context_at(own, side.data(), t);
        ProbDist pc = complete.predict(ctx_c);
        ProbDist pr = reference.predict(ctx_r);
        trace.estimate.push_back(kl_divergence(pc, pr));
        trace.c.push_back(abs_log_ratio_sum(pc, pr));
        trace.complete_loss.push_back(-pc.log2_prob(target[t]));
        trace.reference_loss.push_back(-pr.log2_prob(target[t]));
        if (config.keep_snapshots) {
            trace.complete_snapshots.push_back(std::move(pc));
            trace.reference_snapshots.push_back(std::move(pr));
        }
        complete.observe(ctx_c, target[t]);
        reference.observe(ctx_r, target[t]);
    }
    return trace;
}

}  // namespace

CausalTrace estimate_causal_trace(const SymbolSeq& x, const SymbolSeq& y, EstimatorConfig config,
                                  const std::optional<SymbolSeq>& z) {
    config.staleness.reset();
    return run_pair(x, y, config, z);
}

CausalTrace estimate_partial_trace(const SymbolSeq& x, const SymbolSeq& y, EstimatorConfig config,
                                   const std::optional<SymbolSeq>& z) {
    if (!config.staleness) {
        throw InputError("partial trace needs a staleness k >= 1");
    }
    return run_pair(x, y, config, z);
}

void attach_truth(CausalTrace& trace, const JointMarkovModel& model, const JointPath& path) {
    if (path.size() != trace.size()) {
        throw InputError("path length does not match trace length");
    }
    const bool swap = trace.meta.config.direction == Direction::XtoY;
    const JointMarkovModel oriented = swap ? model.swapped() : model;
    const JointPath p = swap ? JointPath{path.y, path.x, path.z} : path;
    const std::optional<int> k = trace.meta.config.staleness;
    const TruthSeries truth = true_causal_series(oriented, p, k);
    trace.truth = truth.measure;
    std::vector<double> lc(trace.size()), lr(trace.size());
    for (std::size_t t = 0; t < trace.size(); ++t) {
        lc[t] = -truth.complete[t].log2_prob(p.x[t]);
        lr[t] = -truth.reference[t].log2_prob(p.x[t]);
    }
    trace.truth_complete_loss = std::move(lc);
    trace.truth_reference_loss = std::move(lr);
}

CVector c_vector(const CausalTrace& trace) {
    CVector out;
    if (!trace.complete_snapshots.empty()) {
        if (trace.complete_snapshots.size() != trace.size() || trace.reference_snapshots.size() != trace.size()) {
            throw InputError("trace snapshots are incomplete");
        }
        out.c.reserve(trace.size());
        for (std::size_t t = 0; t < trace.size(); ++t) {
            out.c.push_back(abs_log_ratio_sum(trace.complete_snapshots[t], trace.reference_snapshots[t]));
        }
    } else {
        out.c = trace.c;
    }
    double sq = 0.0;
    for (double v : out.c) {
        sq += v * v;
    }
    out.norm = std::sqrt(sq);
    return out;
}

CausalityBound causality_regret_bound(double mc, double mr, double c_norm) {
    if (!(mc >= 0.0) || !(mr >= 0.0) || !(c_norm >= 0.0)) {
        throw InputError("regret bound inputs must be nonnegative");
    }
    return CausalityBound{mc + mr + c_norm / std::sqrt(2.0) * std::sqrt(mc), mc < 1.0};
}

double complete_regret_budget(const TraceMetadata& meta, std::uint64_t n) {
    return regret_budget(complete_schema(meta), n).bound_bits;
}

double reference_regret_budget(const TraceMetadata& meta, std::uint64_t n) {
    return regret_budget(reference_schema(meta), n).bound_bits;
}

std::vector<double> cumulative_estimate(const CausalTrace& trace) {
    std::vector<double> out(trace.size());
    KahanSum sum;
    for (std::size_t t = 0; t < trace.size(); ++t) {
        sum.add(trace.estimate[t]);
        out[t] = sum.value();
    }
    return out;
}

std::vector<double> cumulative_bound(const CausalTrace& trace) {
    const ContextSchema cs = complete_schema(trace.meta);
    const ContextSchema rs = reference_schema(trace.meta);
    std::vector<double> out(trace.size());
    double sq = 0.0;
    for (std::size_t t = 0; t < trace.size(); ++t) {
        sq += trace.c[t] * trace.c[t];
        const double mc = regret_budget(cs, t + 1).bound_bits;
        const double mr = regret_budget(rs, t + 1).bound_bits;
        out[t] = causality_regret_bound(mc, mr, std::sqrt(sq)).bits;
    }
    return out;
}

std::vector<double> realized_causality_regret(const CausalTrace& trace) {
    if (!trace.truth) {
        throw InputError("trace has no truth column");
    }
    std::vector<double> out(trace.size());
    KahanSum sum;
    for (std::size_t t = 0; t < trace.size(); ++t) {
        sum.add(std::abs(trace.estimate[t] - (*trace.truth)[t]));
        out[t] = sum.value();
    }
    return out;
}

PredictorRegret realized_predictor_regret(const CausalTrace& trace) {
    if (!trace.truth_complete_loss || !trace.truth_reference_loss) {
        throw InputError("trace has no truth column");
    }
    PredictorRegret out;
    out.complete.resize(trace.size());
    out.reference.resize(trace.size());
    KahanSum c, r;
    for (std::size_t t = 0; t < trace.size(); ++t) {
        c.add(trace.complete_loss[t] - (*trace.truth_complete_loss)[t]);
        r.add(trace.reference_loss[t] - (*trace.truth_reference_loss)[t]);
        out.complete[t] = c.value();
        out.reference[t] = r.value();
    }
    return out;
}

double plug_in_di_rate(const CausalTrace& trace) {
    if (trace.size() == 0) {
        throw InputError("plug-in rate of an empty trace");
    }
    return tail_average(trace, 1);
}

double tail_average(const CausalTrace& trace, std::size_t first) {
    if (first < 1 || first > trace.size()) {
        throw InputError("tail average start outside trace");
    }
    KahanSum sum;
    for (std::size_t t = first - 1; t < trace.size(); ++t) {
        sum.add(trace.estimate[t]);
    }
    return sum.value() / static_cast<double>(trace.size() - first + 1);
}

}  // namespace causalpath
