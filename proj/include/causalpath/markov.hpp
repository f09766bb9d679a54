#pragma once

// Ground-truth world: jointly Markov (X, Y[, Z]) models of order d, their
// simulation, and exact predictive distributions of X under different
// amounts of revealed history.
//
// Conventions used throughout:
//  * A joint symbol packs (x, y, z) as (x * |Y| + y) * |Z| + z; |Z| = 1 when
//    the model has no Z process.
//  * A window is d consecutive joint symbols, oldest first, encoded in base
//    J = |X||Y||Z| with the oldest symbol most significant. Appending a symbol
//    maps w to (w * J + s) mod J^d.
//  * Time indices in the public API are 1-based positions of the target
//    symbol x_i; vectors are 0-based, so x_i is xs[i - 1].

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "causalpath/core.hpp"

namespace causalpath {

struct JointSymbol {
    Symbol x = 0;
    Symbol y = 0;
    Symbol z = 0;
    friend bool operator==(const JointSymbol&, const JointSymbol&) = default;
};

/// Kernel row for one window: independent next-step laws of each process.
struct KernelRow {
    ProbDist x;
    ProbDist y;
    std::optional<ProbDist> z;
};

class JointMarkovModel {
public:
    /// `kernel` is indexed by window code and must have J^order rows.
    /// Without `initial` the lifted chain's stationary law is used (and the
    /// chain must have a single aperiodic closed class); a supplied initial
    /// law over windows marks the model as non-stationary.
    JointMarkovModel(int order, Alphabet ax, Alphabet ay, std::optional<Alphabet> az, std::vector<KernelRow> kernel,
                     std::optional<std::vector<double>> initial = std::nullopt);

    int order() const noexcept { return order_; }
    Alphabet alphabet_x() const noexcept { return ax_; }
    Alphabet alphabet_y() const noexcept { return ay_; }
    std::optional<Alphabet> alphabet_z() const noexcept { return az_; }
    bool has_z() const noexcept { return az_.has_value(); }
    int z_size() const noexcept { return az_ ? az_->size() : 1; }

    int joint_size() const noexcept { return joint_; }
    std::size_t window_count() const noexcept { return windows_; }

    int encode(JointSymbol s) const;
    JointSymbol decode(int s) const;
    std::size_t window_code(std::span<const JointSymbol> window) const;
    std::vector<JointSymbol> window_symbols(std::size_t code) const;
    std::size_t shift(std::size_t window, int s) const noexcept {
        return (window * static_cast<std::size_t>(joint_) + static_cast<std::size_t>(s)) % windows_;
    }

    const KernelRow& row(std::size_t window) const { return kernel_.at(window); }
    /// Probability of the next joint symbol s after `window`.
    double transition(std::size_t window, int s) const;

    /// Law of the first window (positions 1..d).
    const std::vector<double>& initial() const noexcept { return initial_; }
    bool initial_is_stationary() const noexcept { return stationary_initial_; }

    /// Same model with the roles of X and Y exchanged.
    JointMarkovModel swapped() const;

private:
    JointMarkovModel() = default;
    void validate() const;

    int order_ = 1;
    Alphabet ax_{2};
    Alphabet ay_{2};
    std::optional<Alphabet> az_;
    int joint_ = 4;
    std::size_t windows_ = 4;
    std::vector<KernelRow> kernel_;
    std::vector<double> initial_;
    bool stationary_initial_ = true;
};

/// Stationary law over windows of the lifted first-order chain.
struct StationaryDist {
    std::vector<double> pi;
    double residual = 0.0;  // max |pi P - pi|
};

/// Solves pi P = pi for the lifted window chain. Throws NonErgodicModel if
/// there is more than one closed class or the closed class is periodic.
StationaryDist stationary_distribution(const JointMarkovModel& model);

/// Lifted transition matrix, row-major W x W.
std::vector<double> lifted_transition_matrix(const JointMarkovModel& model);

struct JointPath {
    SymbolSeq x;
    SymbolSeq y;
    std::optional<SymbolSeq> z;
    std::size_t size() const noexcept { return x.size(); }
};

/// Deterministic given the seed (std::mt19937_64, 53-bit uniforms,
/// inverse-CDF sampling).
JointPath simulate(const JointMarkovModel& model, std::size_t n, std::uint64_t seed);

/// Bayes filter over the current window given observed x (and z) with y
/// hidden wherever it is not supplied. Before d symbols have been seen the
/// state is the initial window law conditioned on the observed prefix.
/// Holds a reference to the model, which must outlive it.
class FilterState {
public:
    explicit FilterState(const JointMarkovModel& model);

    /// Number of observed time steps.
    std::size_t time() const noexcept { return time_; }
    /// Predictive law of x at time time() + 1.
    ProbDist predict_x() const;
    /// Posterior weights over window codes (normalized).
    const std::vector<double>& posterior() const noexcept { return belief_; }
    /// Records time step time() + 1. Throws ZeroProbabilityError if the
    /// observation is impossible under the model.
    void observe(Symbol x, std::optional<Symbol> y, Symbol z = 0);

    /// Restarts from a window known exactly; time() becomes `time`.
    void reset_to_window(std::size_t window, std::size_t time);

private:
    const JointMarkovModel* model_;
    std::vector<double> belief_;
    std::vector<double> scratch_;
    std::size_t time_ = 0;
};

/// One recursion step: given the state after x^{i-2} and the newly revealed
/// x_{i-1} (z_{i-1}), returns p(x_i | x^{i-1}) and the updated state.
std::pair<ProbDist, FilterState> true_restricted_dist_recursive(const FilterState& state, Symbol x_prev,
                                                                Symbol z_prev = 0);

/// Kernel row for X at a d-window of joint symbols.
ProbDist true_complete_dist(const JointMarkovModel& model, std::span<const JointSymbol> window);

/// Exact joint probability of the first n = xs.size() joint symbols,
/// computed directly from the initial law and the kernel.
double joint_probability(const JointMarkovModel& model, std::span<const Symbol> xs, std::span<const Symbol> ys,
                         std::span<const Symbol> zs = {});

/// p(x_i | x^{i-1}, z^{i-1}, y^r) by summing the joint over every unrevealed
/// y-path, where i = xs.size() + 1 and r = ys_known.size() <= i - 1. Throws
/// InstanceTooLarge past kBruteForcePathLimit paths.
inline constexpr std::uint64_t kBruteForcePathLimit = std::uint64_t{1} << 18;
ProbDist true_restricted_brute(const JointMarkovModel& model, std::span<const Symbol> xs,
                               std::span<const Symbol> ys_known = {}, std::span<const Symbol> zs = {});

/// p(x_i | x_{i-k-d}^{i-1}, z_{i-k-d}^{i-1}, y_{i-k-d}^{i-k-1}): windows of
/// x and z have length d + k, the stale y-window has length d. Valid for any
/// history whose stale part spans at least d samples.
ProbDist true_partial_dist(const JointMarkovModel& model, std::span<const Symbol> x_window,
                           std::span<const Symbol> y_window, int k, std::span<const Symbol> z_window = {});

/// Per-step exact predictive laws of x_i along a realized path, i = 1..n.
/// With staleness k the reference law conditions on y^{i-1-k}; without it
/// the reference is restricted (no y at all).
struct TruthSeries {
    std::vector<ProbDist> complete;
    std::vector<ProbDist> reference;
    std::vector<double> measure;  // kl(complete, reference) per step
};

TruthSeries true_causal_series(const JointMarkovModel& model, const JointPath& path,
                               std::optional<int> staleness = std::nullopt);

/// C(i) at a single time step (1-based).
double true_causal_measure(const JointMarkovModel& model, const JointPath& path, std::size_t i);
double true_partial_causal_measure(const JointMarkovModel& model, const JointPath& path, std::size_t i, int k);

/// Stationary rates, in bits per step.
double exact_tdi_rate(const JointMarkovModel& model, int k);
double exact_pdi_rate(const JointMarkovModel& model, int k);

struct MonteCarloRate {
    double mean;
    double standard_error;  // batch means
    std::size_t batches;
};

/// Time average of the true causal measure along one simulated path.
MonteCarloRate mc_di_rate(const JointMarkovModel& model, std::size_t n, std::uint64_t seed,
                          std::size_t batches = 100);

/// Stationary probability of every sequence of L >= d joint symbols, indexed
/// by the base-J code of the sequence (oldest most significant).
std::vector<double> stationary_sequence_law(const JointMarkovModel& model, int length);

}  // namespace causalpath
