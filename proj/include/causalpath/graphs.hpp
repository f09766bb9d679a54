#pragma once

// Time-unrolled Bayesian networks of jointly Markov processes, the moralized
// ancestral-graph d-separation test, and conditional Markovicity of X.
//
// Nodes are (process, time) with 1-based times. Edges always point forward in
// time with lag 1..d; there are no instantaneous edges.

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causalpath/markov.hpp"

namespace causalpath {

enum class Process { X, Y, Z };

char process_letter(Process p);

struct Node {
    Process process = Process::X;
    int time = 1;
    friend auto operator<=>(const Node&, const Node&) = default;
};

/// "X:3"
std::string node_label(Node n);

using NodeSet = std::set<Node>;

/// Information below this many bits counts as zero.
inline constexpr double kZeroInformationBits = 1e-9;

/// Largest horizon accepted by build_unrolled_network.
inline constexpr int kMaxGraphHorizon = 4096;

class UnrolledDag {
public:
    UnrolledDag(int horizon, int order, bool has_z);

    int horizon() const noexcept { return horizon_; }
    int order() const noexcept { return order_; }
    bool has_z() const noexcept { return has_z_; }

    bool contains(Node n) const noexcept;
    std::vector<Node> nodes() const;

    /// Throws InputError unless 1 <= to.time - from.time <= order and both
    /// nodes exist.
    void add_edge(Node from, Node to);
    bool has_edge(Node from, Node to) const;
    const std::vector<Node>& parents(Node n) const;
    /// Sorted by (to, from).
    std::vector<std::pair<Node, Node>> edges() const;
    std::size_t edge_count() const noexcept { return edge_count_; }

    /// One edge per line: "Y:2 -> X:3".
    std::string edge_list() const;

private:
    std::size_t index(Node n) const;

    int horizon_;
    int order_;
    bool has_z_;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<Node>> parents_;
};

/// Candidate edge S_{i-lag} -> S'_i with its conditional mutual information
/// given the rest of the window, under the stationary law.
struct EdgeInformation {
    Process from;
    Process to;
    int lag;
    double bits;
    bool present() const noexcept { return bits > kZeroInformationBits; }
};

/// Every candidate (from, to, lag) for lag = 1..d. Throws NonErgodicModel.
std::vector<EdgeInformation> edge_information(const JointMarkovModel& model);

/// Replicates the present edges over times 1..horizon.
UnrolledDag build_unrolled_network(const JointMarkovModel& model, int horizon);

/// Algorithm on the ancestral moral graph. Throws InputError if the sets
/// overlap or name nodes outside the graph.
bool d_separated(const UnrolledDag& dag, const NodeSet& a, const NodeSet& b, const NodeSet& c);

/// Exact law of `horizon` consecutive joint symbols, enumerated. Limited to
/// 2^24 sequences.
class HorizonLaw {
public:
    /// Starts from the stationary window law.
    static HorizonLaw stationary(const JointMarkovModel& model, int horizon);
    /// Starts from the model's own initial window law.
    static HorizonLaw from_initial(const JointMarkovModel& model, int horizon);

    int horizon() const noexcept { return horizon_; }
    const std::vector<double>& probabilities() const noexcept { return law_; }

    /// I(A; B | C) in bits; every node must lie in 1..horizon.
    double conditional_mutual_information(const NodeSet& a, const NodeSet& b, const NodeSet& c) const;

private:
    HorizonLaw(const JointMarkovModel& model, int horizon, std::vector<double> start);

    int horizon_;
    int mx_, my_, mz_;
    bool has_z_;
    std::vector<double> law_;
};

enum class Markovicity {
    ConditionallyDMarkov,  // no Y -> X edges
    MarkovOrderAtMost2d,   // Y samples independent given all of X and Z
    NoFiniteOrder,         // graph separation fails at every lag
};

std::string_view markovicity_name(Markovicity m);

struct MarkovicityReport {
    Markovicity branch;
    bool y_influences_x = false;
    /// Largest I(Y_j; Y_k | X, Z) over the check horizon, j < k.
    double y_dependence_bits = 0.0;
    int check_horizon = 0;
    /// Lags l in 1..2d+1 at which (X, Z)_{i-l}^{i-1} d-separates X_i from the
    /// earlier (X, Z) in the unrolled graph.
    std::vector<int> separating_lags;
    /// Set on the no-finite-order branch: the verdict is about the graph;
    /// independence can still hold on a measure-zero set of parameters.
    bool faithfulness_caveat = false;
    UnrolledDag dag;
};

MarkovicityReport classify_markovicity(const JointMarkovModel& model);

}  // namespace causalpath
