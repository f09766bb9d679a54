#pragma once

// Estimated sample-path causal measure: two CTW predictors run in lockstep
// over the same target sequence, one with side information and one without
// (or with stale side information), compared by KL divergence per step.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causalpath/core.hpp"
#include "causalpath/ctw.hpp"
#include "causalpath/markov.hpp"

namespace causalpath {

/// Y -> X targets X with Y as side information; X -> Y the reverse.
enum class Direction { YtoX, XtoY };

std::string direction_label(Direction d);

struct EstimatorConfig {
    int depth = 1;
    /// nullopt: restricted reference (no side information). k >= 1: the
    /// reference withholds the k most recent side samples.
    std::optional<int> staleness;
    Direction direction = Direction::YtoX;
    /// Keep both predictive distributions for every step.
    bool keep_snapshots = false;
};

struct TraceMetadata {
    EstimatorConfig config;
    std::size_t horizon = 0;
    int target_alphabet = 0;
    int side_alphabet = 0;
    int conditioning_alphabet = 1;  // |Z|, 1 when absent
    std::uint64_t complete_leaves = 0;
    std::uint64_t complete_nodes = 0;
    std::uint64_t reference_leaves = 0;
    std::uint64_t reference_nodes = 0;
    bool reference_has_side = false;
    /// True when a staleness >= n - 1 was collapsed to the restricted reference.
    bool staleness_collapsed = false;
};

struct CausalTrace {
    TraceMetadata meta;
    std::vector<double> estimate;       // C-hat(i), bits
    std::vector<double> c;              // c_i = sum_x |log2 p_c / p_r|
    std::vector<double> complete_loss;  // -log2 p_c(x_i)
    std::vector<double> reference_loss; // -log2 p_r(x_i)
    std::optional<std::vector<double>> truth;  // C(i) from an oracle
    std::optional<std::vector<double>> truth_complete_loss;
    std::optional<std::vector<double>> truth_reference_loss;
    std::vector<ProbDist> complete_snapshots;
    std::vector<ProbDist> reference_snapshots;

    std::size_t size() const noexcept { return estimate.size(); }
};

/// Complete (pair context, depth d) vs restricted (own context, depth d).
/// `z`, when given, is packed into the own context of both predictors.
CausalTrace estimate_causal_trace(const SymbolSeq& x, const SymbolSeq& y, EstimatorConfig config,
                                  const std::optional<SymbolSeq>& z = std::nullopt);

/// Complete vs stale predictor (depth d + k). Requires config.staleness >= 1.
CausalTrace estimate_partial_trace(const SymbolSeq& x, const SymbolSeq& y, EstimatorConfig config,
                                   const std::optional<SymbolSeq>& z = std::nullopt);

/// Fills the truth columns from the model's exact distributions along the
/// same path (orientation and staleness taken from the trace metadata).
void attach_truth(CausalTrace& trace, const JointMarkovModel& model, const JointPath& path);

struct CVector {
    std::vector<double> c;
    double norm = 0.0;  // ||c||_2
};

/// Recomputed from snapshots when they were kept, else the on-the-fly values.
CVector c_vector(const CausalTrace& trace);

struct CausalityBound {
    double bits = 0.0;
    bool low_regret_warning = false;  // Mc < 1: outside the bound's premise
};

/// Mc + Mr + (c_norm / sqrt 2) sqrt(Mc).
CausalityBound causality_regret_bound(double mc, double mr, double c_norm);

/// Regret budgets of the two predictors at horizon n.
double complete_regret_budget(const TraceMetadata& meta, std::uint64_t n);
double reference_regret_budget(const TraceMetadata& meta, std::uint64_t n);

/// Per-step cumulative columns.
std::vector<double> cumulative_estimate(const CausalTrace& trace);
std::vector<double> cumulative_bound(const CausalTrace& trace);
/// Running sum of |C-hat(i) - C(i)|; requires truth.
std::vector<double> realized_causality_regret(const CausalTrace& trace);

struct PredictorRegret {
    std::vector<double> complete;   // cumulative log2 p_true / p_hat
    std::vector<double> reference;
};
/// Requires truth.
PredictorRegret realized_predictor_regret(const CausalTrace& trace);

/// (1/n) sum C-hat(i).
double plug_in_di_rate(const CausalTrace& trace);
/// Mean of C-hat over steps first..n (1-based, inclusive).
double tail_average(const CausalTrace& trace, std::size_t first);

}  // namespace causalpath
