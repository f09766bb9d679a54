#pragma once

// Krichevsky-Trofimov estimators and context-tree weighting (CTW) over
// layered context schemas: plain target-only trees, trees whose contexts are
// (target, side) pairs, and "stale" trees where the k most recent levels carry
// the target symbol alone.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "causalpath/core.hpp"

namespace causalpath {

/// Sequential KT probability: (counts[a] + 1/2) / (N + m/2).
ProbDist kt_predict(std::span<const std::uint64_t> counts, Alphabet alphabet);

/// Context layout of a CTW tree.
///
/// Level j = 1 is the most recent past. The "own" context symbol is the
/// target's own past (possibly packed with a conditioning process such as Z).
/// Without side information every level carries an own symbol and the depth
/// is d. With side information and staleness k the tree has depth d + k:
/// levels 1..k carry the own symbol alone and levels k+1..k+d carry
/// (own, side) pairs packed as own * |side| + side. k = 0 is the complete
/// depth-d pair tree.
class ContextSchema {
public:
    static ContextSchema plain(Alphabet target, int depth);
    static ContextSchema plain(Alphabet target, Alphabet own_context, int depth);
    static ContextSchema with_side(Alphabet target, Alphabet side, int depth, int staleness = 0);
    static ContextSchema with_side(Alphabet target, Alphabet own_context, Alphabet side, int depth,
                                   int staleness = 0);

    Alphabet target() const noexcept { return target_; }
    Alphabet own_context() const noexcept { return own_; }
    std::optional<Alphabet> side() const noexcept { return side_; }
    int base_depth() const noexcept { return depth_; }
    int staleness() const noexcept { return staleness_; }

    /// Total tree depth (d, or d + k with side information).
    int depth() const noexcept;
    /// Number of context symbols at level j (1-based).
    int level_size(int level) const;

    std::uint64_t leaf_count() const;
    std::uint64_t node_count() const;

    /// Context for predicting position `pos` (0-based) of the target. Levels
    /// reaching before the start of the sequences are cut off, so the result
    /// holds min(depth, pos) symbols. `side` is ignored for plain schemas.
    std::vector<Symbol> context_at(std::span<const Symbol> own, std::span<const Symbol> side,
                                   std::size_t pos) const;

    friend bool operator==(const ContextSchema&, const ContextSchema&) = default;

private:
    ContextSchema(Alphabet target, Alphabet own, std::optional<Alphabet> side, int depth, int staleness);

    Alphabet target_;
    Alphabet own_;
    std::optional<Alphabet> side_;
    int depth_;
    int staleness_;
};

/// CTW sequential predictor.
///
/// Nodes are allocated on first visit. When fewer context symbols exist than
/// the schema depth (the start of a sequence) the symbol is routed into an
/// "absent" branch under the deepest available node; that branch is a leaf.
class ContextTree {
public:
    explicit ContextTree(ContextSchema schema);

    const ContextSchema& schema() const noexcept { return schema_; }

    /// One-step predictive distribution; every entry is strictly positive.
    ProbDist predict(std::span<const Symbol> context) const;

    void observe(std::span<const Symbol> context, Symbol symbol);

    /// log2 of the root weighted block probability of everything observed.
    double log2_block_probability() const noexcept { return nodes_.front().log_pw; }

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::uint64_t observations() const noexcept { return nodes_.front().total; }

    /// Per-symbol counts at the node reached by `path` (absent branch encoded
    /// as -1), or nullopt when that node was never visited.
    std::optional<std::vector<std::uint64_t>> counts_at(std::span<const Symbol> path) const;

    /// Text snapshot, one record per node: path symbols then counts.
    void dump(std::ostream& out) const;
    static ContextTree load(std::istream& in);

    /// Exact equality of structure, counts and stored log-probabilities.
    bool identical_to(const ContextTree& other) const;

    /// Checks every node's total equals the sum over its children.
    bool counts_consistent() const;

private:
    static constexpr std::int32_t kNoChild = -1;

    struct Node {
        std::vector<std::uint64_t> counts;
        std::uint64_t total = 0;
        double log_pe = 0.0;
        double log_pw = 0.0;
        std::vector<std::int32_t> children;  // last slot is the absent branch
        int depth = 0;
        bool terminal = false;
    };

    std::int32_t add_node(int depth, bool terminal);
    std::int32_t child_slot(const Node& node, Symbol s) const;
    void validate_context(std::span<const Symbol> context) const;
    std::vector<std::int32_t> find_path(std::span<const Symbol> context) const;
    void refresh(std::int32_t index);
    double log_children(const Node& node) const;

    ContextSchema schema_;
    std::vector<Node> nodes_;
};

/// Worst-case regret of a depth-d CTW over a target alphabet of size m with L
/// leaves, against order-d Markov sources:
/// ((m-1)L/2) log2(n/L) + L (m/(m-1) + log2 m) - 1/(m-1). Requires n >= L.
double regret_bound_plain(int m, std::uint64_t leaves, std::uint64_t n);

/// Same with causal side information and S total nodes:
/// ((m-1)L/2) log2(n/L) + L (m-1) + S. Requires n >= L and S >= L.
double regret_bound_side_info(int m, std::uint64_t leaves, std::uint64_t nodes, std::uint64_t n);

struct RegretBudget {
    int alphabet_size;
    std::uint64_t leaves;
    std::uint64_t nodes;
    std::uint64_t horizon;
    double bound_bits;
};

/// Bound for the given schema at horizon n. For n < L only n leaves can have
/// been visited, so L is clamped to n there; the formulas are increasing in L
/// on that range, so the clamped value remains a valid bound.
RegretBudget regret_budget(const ContextSchema& schema, std::uint64_t n);

}  // namespace causalpath
