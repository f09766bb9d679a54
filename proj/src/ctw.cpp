#include "causalpath/ctw.hpp"

#include <cmath>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace causalpath {

namespace {

constexpr double kHalf = 0.5;

// log2 of the KT block probability of a count vector.
double log2_kt_block(std::span<const std::uint64_t> counts) {
    const double m = static_cast<double>(counts.size());
    double total = 0.0;
    double acc = 0.0;
    for (std::uint64_t c : counts) {
        acc += std::lgamma(static_cast<double>(c) + kHalf) - std::lgamma(kHalf);
        total += static_cast<double>(c);
    }
    acc -= std::lgamma(total + m / 2.0) - std::lgamma(m / 2.0);
    return acc / std::numbers::ln2;
}

double log2_kt_step(std::span<const std::uint64_t> counts, std::uint64_t total, Symbol s) {
    const double m = static_cast<double>(counts.size());
    const double c = counts.empty() ? 0.0 : static_cast<double>(counts[static_cast<std::size_t>(s)]);
    return std::log2((c + kHalf) / (static_cast<double>(total) + m / 2.0));
}

}  // namespace

ProbDist kt_predict(std::span<const std::uint64_t> counts, Alphabet alphabet) {
    if (alphabet.size() < 2) {
        throw InputError("KT estimator needs an alphabet of at least two symbols");
    }
    if (counts.size() != static_cast<std::size_t>(alphabet.size())) {
        throw InputError("count vector does not match alphabet size");
    }
    double total = 0.0;
    for (std::uint64_t c : counts) {
        total += static_cast<double>(c);
    }
    const double denom = total + alphabet.size() / 2.0;
    std::vector<double> probs;
    probs.reserve(counts.size());
    for (std::uint64_t c : counts) {
        probs.push_back((static_cast<double>(c) + kHalf) / denom);
    }
    return ProbDist(alphabet, std::move(probs));
}

// ---------------------------------------------------------------------------
// ContextSchema

ContextSchema::ContextSchema(Alphabet target, Alphabet own, std::optional<Alphabet> side, int depth,
                             int staleness)
    : target_(target), own_(own), side_(side), depth_(depth), staleness_(staleness) {
    if (target.size() < 2) {
        throw InputError("target alphabet must have at least two symbols");
    }
    if (depth < 0 || staleness < 0) {
        throw InputError("context depth and staleness must be nonnegative");
    }
    if (side_ && depth < 1) {
        throw InputError("side-information schema needs depth >= 1");
    }
    if (!side_ && staleness != 0) {
        throw InputError("staleness only applies to side-information schemas");
    }
}

ContextSchema ContextSchema::plain(Alphabet target, int depth) { return plain(target, target, depth); }

ContextSchema ContextSchema::plain(Alphabet target, Alphabet own_context, int depth) {
    return ContextSchema(target, own_context, std::nullopt, depth, 0);
}

ContextSchema ContextSchema::with_side(Alphabet target, Alphabet side, int depth, int staleness) {
    return with_side(target, target, side, depth, staleness);
}

ContextSchema ContextSchema::with_side(Alphabet target, Alphabet own_context, Alphabet side, int depth,
                                       int staleness) {
    return ContextSchema(target, own_context, side, depth, staleness);
}

int ContextSchema::depth() const noexcept { return side_ ? depth_ + staleness_ : depth_; }

int ContextSchema::level_size(int level) const {
    if (level < 1 || level > depth()) {
        throw InputError("context level " + std::to_string(level) + " outside schema depth");
    }
    if (!side_ || level <= staleness_) {
        return own_.size();
    }
    return own_.size() * side_->size();
}

std::uint64_t ContextSchema::leaf_count() const {
    std::uint64_t leaves = 1;
    for (int j = 1; j <= depth(); ++j) {
        leaves *= static_cast<std::uint64_t>(level_size(j));
    }
    return leaves;
}

std::uint64_t ContextSchema::node_count() const {
    std::uint64_t level_nodes = 1;
    std::uint64_t total = 1;
    for (int j = 1; j <= depth(); ++j) {
        level_nodes *= static_cast<std::uint64_t>(level_size(j));
        total += level_nodes;
    }
    return total;
}

std::vector<Symbol> ContextSchema::context_at(std::span<const Symbol> own, std::span<const Symbol> side,
                                              std::size_t pos) const {
    if (pos > own.size() || (side_ && pos > side.size())) {
        throw InputError("context position beyond available history");
    }
    const int available = static_cast<int>(std::min<std::size_t>(pos, static_cast<std::size_t>(depth())));
    std::vector<Symbol> ctx;
    ctx.reserve(static_cast<std::size_t>(available));
    for (int j = 1; j <= available; ++j) {
        const std::size_t at = pos - static_cast<std::size_t>(j);
        if (!side_ || j <= staleness_) {
            ctx.push_back(own[at]);
        } else {
            ctx.push_back(own[at] * side_->size() + side[at]);
        }
    }
    return ctx;
}

// ---------------------------------------------------------------------------
// ContextTree

ContextTree::ContextTree(ContextSchema schema) : schema_(std::move(schema)) {
    add_node(0, schema_.depth() == 0);
}

std::int32_t ContextTree::add_node(int depth, bool terminal) {
    Node node;
    node.counts.assign(static_cast<std::size_t>(schema_.target().size()), 0);
    node.depth = depth;
    node.terminal = terminal;
    if (!terminal) {
        node.children.assign(static_cast<std::size_t>(schema_.level_size(depth + 1)) + 1, kNoChild);
    }
    nodes_.push_back(std::move(node));
    return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::int32_t ContextTree::child_slot(const Node& node, Symbol s) const {
    // s == -1 selects the absent branch.
    return s < 0 ? static_cast<std::int32_t>(node.children.size() - 1) : s;
}

void ContextTree::validate_context(std::span<const Symbol> context) const {
    if (context.size() > static_cast<std::size_t>(schema_.depth())) {
        throw InputError("context longer than schema depth");
    }
    for (std::size_t j = 0; j < context.size(); ++j) {
        const int level = static_cast<int>(j) + 1;
        if (context[j] < 0 || context[j] >= schema_.level_size(level)) {
            throw InputError("context symbol " + std::to_string(context[j]) + " invalid at level " +
                             std::to_string(level));
        }
    }
}

// Walks root -> leaf along `context`; entries are kNoChild past the first
// unvisited node. The returned path has context.size() + 1 entries, plus one
// more for the absent branch when the context is truncated.
std::vector<std::int32_t> ContextTree::find_path(std::span<const Symbol> context) const {
    const bool truncated = context.size() < static_cast<std::size_t>(schema_.depth());
    std::vector<std::int32_t> path;
    path.reserve(context.size() + 2);
    std::int32_t cur = 0;
    path.push_back(cur);
    const std::size_t steps = context.size() + (truncated ? 1 : 0);
    for (std::size_t j = 0; j < steps; ++j) {
        const Symbol s = j < context.size() ? context[j] : -1;
        if (cur != kNoChild) {
            const Node& node = nodes_[static_cast<std::size_t>(cur)];
            cur = node.children[static_cast<std::size_t>(child_slot(node, s))];
        }
        path.push_back(cur);
    }
    return path;
}

double ContextTree::log_children(const Node& node) const {
    double sum = 0.0;
    for (std::int32_t c : node.children) {
        if (c != kNoChild) {
            sum += nodes_[static_cast<std::size_t>(c)].log_pw;
        }
    }
    return sum;
}

void ContextTree::refresh(std::int32_t index) {
    Node& node = nodes_[static_cast<std::size_t>(index)];
    node.log_pe = log2_kt_block(node.counts);
    if (node.terminal) {
        node.log_pw = node.log_pe;
    } else {
        node.log_pw = log2_add(node.log_pe, log_children(node)) - 1.0;
    }
}

ProbDist ContextTree::predict(std::span<const Symbol> context) const {
    validate_context(context);
    const std::vector<std::int32_t> path = find_path(context);
    const std::size_t len = path.size();
    const int m = schema_.target().size();

    // Terminal iff deepest on the path: either full depth or the absent branch.
    std::vector<double> children_sum(len, 0.0);
    for (std::size_t p = 0; p + 1 < len; ++p) {
        if (path[p] != kNoChild) {
            children_sum[p] = log_children(nodes_[static_cast<std::size_t>(path[p])]);
        }
    }

    static const std::vector<std::uint64_t> kEmpty;
    std::vector<double> log_probs(static_cast<std::size_t>(m));
    for (Symbol a = 0; a < m; ++a) {
        double new_child = 0.0;
        double old_child = 0.0;
        for (std::size_t p = len; p-- > 0;) {
            const Node* node = path[p] == kNoChild ? nullptr : &nodes_[static_cast<std::size_t>(path[p])];
            const double pe = node ? node->log_pe : 0.0;
            const double pw = node ? node->log_pw : 0.0;
            const double step = node ? log2_kt_step(node->counts, node->total, a)
                                     : std::log2(kHalf / (m / 2.0));
            const double new_pe = pe + step;
            double new_pw = new_pe;
            if (p + 1 < len) {
                const double lc = children_sum[p] - old_child + new_child;
                new_pw = log2_add(new_pe, lc) - 1.0;
            }
            old_child = pw;
            new_child = new_pw;
        }
        log_probs[static_cast<std::size_t>(a)] = new_child - old_child;
    }

    // Exponentiate relative to the largest entry; the ratios already sum to
    // one up to rounding.
    double top = log_probs[0];
    for (double v : log_probs) {
        top = std::max(top, v);
    }
    std::vector<double> weights;
    weights.reserve(log_probs.size());
    for (double v : log_probs) {
        weights.push_back(std::exp2(v - top));
    }
    return ProbDist::normalized(schema_.target(), std::move(weights));
}

void ContextTree::observe(std::span<const Symbol> context, Symbol symbol) {
    validate_context(context);
    if (!schema_.target().contains(symbol)) {
        throw InputError("observed symbol outside target alphabet");
    }
    const bool truncated = context.size() < static_cast<std::size_t>(schema_.depth());
    const std::size_t steps = context.size() + (truncated ? 1 : 0);

    std::vector<std::int32_t> path;
    path.reserve(steps + 1);
    std::int32_t cur = 0;
    path.push_back(cur);
    for (std::size_t j = 0; j < steps; ++j) {
        const Symbol s = j < context.size() ? context[j] : -1;
        const std::int32_t slot = child_slot(nodes_[static_cast<std::size_t>(cur)], s);
        std::int32_t next = nodes_[static_cast<std::size_t>(cur)].children[static_cast<std::size_t>(slot)];
        if (next == kNoChild) {
            const int depth = static_cast<int>(j) + 1;
            const bool terminal = s < 0 || depth == schema_.depth();
            next = add_node(depth, terminal);
            nodes_[static_cast<std::size_t>(cur)].children[static_cast<std::size_t>(slot)] = next;
        }
        cur = next;
        path.push_back(cur);
    }

    for (std::int32_t index : path) {
        Node& node = nodes_[static_cast<std::size_t>(index)];
        ++node.counts[static_cast<std::size_t>(symbol)];
        ++node.total;
    }
    for (std::size_t p = path.size(); p-- > 0;) {
        refresh(path[p]);
    }
}

std::optional<std::vector<std::uint64_t>> ContextTree::counts_at(std::span<const Symbol> path) const {
    std::int32_t cur = 0;
    for (Symbol s : path) {
        const Node& node = nodes_[static_cast<std::size_t>(cur)];
        if (node.terminal) {
            return std::nullopt;
        }
        const std::int32_t slot = child_slot(node, s);
        if (slot >= static_cast<std::int32_t>(node.children.size())) {
            return std::nullopt;
        }
        cur = node.children[static_cast<std::size_t>(slot)];
        if (cur == kNoChild) {
            return std::nullopt;
        }
    }
    return nodes_[static_cast<std::size_t>(cur)].counts;
}

void ContextTree::dump(std::ostream& out) const {
    const auto& s = schema_;
    out << "ctw-tree 1\n";
    out << "schema target " << s.target().size() << " own " << s.own_context().size() << " side "
        << (s.side() ? s.side()->size() : 0) << " depth " << s.base_depth() << " staleness " << s.staleness()
        << "\n";
    out << "nodes " << nodes_.size() << "\n";
    std::vector<Symbol> prefix;
    std::function<void(std::int32_t)> visit = [&](std::int32_t index) {
        const Node& node = nodes_[static_cast<std::size_t>(index)];
        for (Symbol sym : prefix) {
            if (sym < 0) {
                out << "* ";
            } else {
                out << sym << ' ';
            }
        }
        out << ':';
        for (std::uint64_t c : node.counts) {
            out << ' ' << c;
        }
        out << '\n';
        for (std::size_t slot = 0; slot < node.children.size(); ++slot) {
            const std::int32_t child = node.children[slot];
            if (child == kNoChild) {
                continue;
            }
            prefix.push_back(slot + 1 == node.children.size() ? -1 : static_cast<Symbol>(slot));
            visit(child);
            prefix.pop_back();
        }
    };
    visit(0);
}

ContextTree ContextTree::load(std::istream& in) {
    std::string line;
    std::string word;
    int version = 0;
    if (!std::getline(in, line) || (std::istringstream(line) >> word >> version, word != "ctw-tree") ||
        version != 1) {
        throw InputError("not a ctw-tree v1 snapshot");
    }
    int target = 0, own = 0, side = 0, depth = 0, staleness = 0;
    {
        std::getline(in, line);
        std::istringstream ls(line);
        std::string k1, k2, k3, k4, k5;
        ls >> word >> k1 >> target >> k2 >> own >> k3 >> side >> k4 >> depth >> k5 >> staleness;
        if (!ls || word != "schema" || k1 != "target" || k2 != "own" || k3 != "side" || k4 != "depth" ||
            k5 != "staleness") {
            throw InputError("malformed schema line in ctw-tree snapshot");
        }
    }
    std::size_t count = 0;
    {
        std::getline(in, line);
        std::istringstream ls(line);
        ls >> word >> count;
        if (!ls || word != "nodes" || count == 0) {
            throw InputError("malformed node count in ctw-tree snapshot");
        }
    }
    ContextSchema schema = side > 0 ? ContextSchema::with_side(Alphabet(target), Alphabet(own), Alphabet(side),
                                                               depth, staleness)
                                    : ContextSchema::plain(Alphabet(target), Alphabet(own), depth);
    ContextTree tree(schema);
    for (std::size_t r = 0; r < count; ++r) {
        if (!std::getline(in, line)) {
            throw InputError("ctw-tree snapshot truncated");
        }
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw InputError("ctw-tree record missing ':'");
        }
        std::istringstream path_in(line.substr(0, colon));
        std::istringstream count_in(line.substr(colon + 1));
        std::int32_t cur = 0;
        int level = 0;
        while (path_in >> word) {
            ++level;
            const Symbol s = word == "*" ? -1 : std::stoi(word);
            Node& node = tree.nodes_[static_cast<std::size_t>(cur)];
            if (node.terminal || (s >= 0 && s >= schema.level_size(level))) {
                throw InputError("ctw-tree record path invalid for schema");
            }
            const std::int32_t slot = tree.child_slot(node, s);
            std::int32_t next = node.children[static_cast<std::size_t>(slot)];
            if (next == kNoChild) {
                next = tree.add_node(level, s < 0 || level == schema.depth());
                tree.nodes_[static_cast<std::size_t>(cur)].children[static_cast<std::size_t>(slot)] = next;
            }
            cur = next;
        }
        Node& node = tree.nodes_[static_cast<std::size_t>(cur)];
        node.total = 0;
        for (auto& c : node.counts) {
            if (!(count_in >> c)) {
                throw InputError("ctw-tree record has too few counts");
            }
            node.total += c;
        }
    }
    // Children always sit after their parent in creation order.
    for (std::size_t i = tree.nodes_.size(); i-- > 0;) {
        tree.refresh(static_cast<std::int32_t>(i));
    }
    return tree;
}

bool ContextTree::identical_to(const ContextTree& other) const {
    if (!(schema_ == other.schema_) || nodes_.size() != other.nodes_.size()) {
        return false;
    }
    std::function<bool(std::int32_t, std::int32_t)> same = [&](std::int32_t a, std::int32_t b) {
        const Node& x = nodes_[static_cast<std::size_t>(a)];
        const Node& y = other.nodes_[static_cast<std::size_t>(b)];
        if (x.counts != y.counts || x.total != y.total || x.log_pe != y.log_pe || x.log_pw != y.log_pw ||
            x.terminal != y.terminal || x.depth != y.depth || x.children.size() != y.children.size()) {
            return false;
        }
        for (std::size_t s = 0; s < x.children.size(); ++s) {
            const bool hx = x.children[s] != kNoChild;
            const bool hy = y.children[s] != kNoChild;
            if (hx != hy || (hx && !same(x.children[s], y.children[s]))) {
                return false;
            }
        }
        return true;
    };
    return same(0, 0);
}

bool ContextTree::counts_consistent() const {
    for (const Node& node : nodes_) {
        std::uint64_t sum = 0;
        for (std::uint64_t c : node.counts) {
            sum += c;
        }
        if (sum != node.total) {
            return false;
        }
        if (node.terminal) {
            if (node.log_pw != node.log_pe) {
                return false;
            }
            continue;
        }
        std::vector<std::uint64_t> child_counts(node.counts.size(), 0);
        for (std::int32_t c : node.children) {
            if (c == kNoChild) {
                continue;
            }
            const Node& child = nodes_[static_cast<std::size_t>(c)];
            for (std::size_t a = 0; a < child_counts.size(); ++a) {
                child_counts[a] += child.counts[a];
            }
        }
        if (child_counts != node.counts) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Regret bounds

namespace {

void check_bound_args(int m, std::uint64_t leaves, std::uint64_t n) {
    if (m < 2) {
        throw InputError("regret bound needs alphabet size >= 2");
    }
    if (leaves < 1) {
        throw InputError("regret bound needs at least one leaf");
    }
    if (n < leaves) {
        throw InputError("regret bound needs n >= L (n = " + std::to_string(n) + ", L = " +
                         std::to_string(leaves) + ")");
    }
}

}  // namespace

double regret_bound_plain(int m, std::uint64_t leaves, std::uint64_t n) {
    check_bound_args(m, leaves, n);
    const double mm = m;
    const double l = static_cast<double>(leaves);
    return (mm - 1.0) * l / 2.0 * std::log2(static_cast<double>(n) / l) + l * (mm / (mm - 1.0) + std::log2(mm)) -
           1.0 / (mm - 1.0);
}

double regret_bound_side_info(int m, std::uint64_t leaves, std::uint64_t nodes, std::uint64_t n) {
    check_bound_args(m, leaves, n);
    if (nodes < leaves) {
        throw InputError("side-information regret bound needs S >= L");
    }
    const double mm = m;
    const double l = static_cast<double>(leaves);
    return (mm - 1.0) * l / 2.0 * std::log2(static_cast<double>(n) / l) + l * (mm - 1.0) +
           static_cast<double>(nodes);
}

RegretBudget regret_budget(const ContextSchema& schema, std::uint64_t n) {
    if (n == 0) {
        throw InputError("regret budget needs a positive horizon");
    }
    const int m = schema.target().size();
    const std::uint64_t leaves = schema.leaf_count();
    const std::uint64_t nodes = schema.node_count();
    const std::uint64_t effective = std::min(leaves, n);
    const double bound = schema.side() ? regret_bound_side_info(m, effective, nodes, n)
                                       : regret_bound_plain(m, effective, n);
    return RegretBudget{m, leaves, nodes, n, bound};
}

}  // namespace causalpath
