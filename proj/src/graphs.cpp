#include "causalpath/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace causalpath {

namespace {

constexpr std::size_t kMaxHorizonSequences = std::size_t{1} << 24;

int process_count(bool has_z) { return has_z ? 3 : 2; }

std::vector<Process> processes(bool has_z) {
    if (has_z) {
        return {Process::X, Process::Y, Process::Z};
    }
    return {Process::X, Process::Y};
}

}  // namespace

char process_letter(Process p) {
    switch (p) {
        case Process::X:
            return 'X';
        case Process::Y:
            return 'Y';
        case Process::Z:
            return 'Z';
    }
    return '?';
}

std::string node_label(Node n) { return std::string(1, process_letter(n.process)) + ":" + std::to_string(n.time); }

UnrolledDag::UnrolledDag(int horizon, int order, bool has_z) : horizon_(horizon), order_(order), has_z_(has_z) {
    if (horizon < 1 || horizon > kMaxGraphHorizon) {
        throw InputError("graph horizon must be in 1.." + std::to_string(kMaxGraphHorizon));
    }
    if (order < 1) {
        throw InputError("graph order must be at least 1");
    }
    parents_.resize(static_cast<std::size_t>(horizon) * static_cast<std::size_t>(process_count(has_z)));
}

bool UnrolledDag::contains(Node n) const noexcept {
    return n.time >= 1 && n.time <= horizon_ && (n.process != Process::Z || has_z_);
}

std::size_t UnrolledDag::index(Node n) const {
    if (!contains(n)) {
        throw InputError("node " + node_label(n) + " is not in the graph");
    }
    return static_cast<std::size_t>(n.time - 1) * static_cast<std::size_t>(process_count(has_z_)) +
           static_cast<std::size_t>(n.process);
}

std::vector<Node> UnrolledDag::nodes() const {
    std::vector<Node> out;
    for (int t = 1; t <= horizon_; ++t) {
        for (Process p : processes(has_z_)) {
            out.push_back(Node{p, t});
        }
    }
    return out;
}

void UnrolledDag::add_edge(Node from, Node to) {
    const int lag = to.time - from.time;
    if (lag < 1 || lag > order_) {
        throw InputError("edge " + node_label(from) + " -> " + node_label(to) + " has lag outside 1..order");
    }
    auto& ps = parents_[index(to)];
    index(from);
    if (std::find(ps.begin(), ps.end(), from) == ps.end()) {
        ps.insert(std::upper_bound(ps.begin(), ps.end(), from), from);
        ++edge_count_;
    }
}

bool UnrolledDag::has_edge(Node from, Node to) const {
    if (!contains(from) || !contains(to)) {
        return false;
    }
    const auto& ps = parents_[index(to)];
    return std::binary_search(ps.begin(), ps.end(), from);
}

const std::vector<Node>& UnrolledDag::parents(Node n) const { return parents_[index(n)]; }

std::vector<std::pair<Node, Node>> UnrolledDag::edges() const {
    std::vector<std::pair<Node, Node>> out;
    out.reserve(edge_count_);
    for (Node to : nodes()) {
        for (Node from : parents(to)) {
            out.emplace_back(from, to);
        }
    }
    return out;
}

std::string UnrolledDag::edge_list() const {
    std::ostringstream os;
    for (const auto& [from, to] : edges()) {
        os << node_label(from) << " -> " << node_label(to) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

HorizonLaw::HorizonLaw(const JointMarkovModel& model, int horizon, std::vector<double> start)
    : horizon_(horizon),
      mx_(model.alphabet_x().size()),
      my_(model.alphabet_y().size()),
      mz_(model.z_size()),
      has_z_(model.has_z()) {
    if (horizon < 1) {
        throw InputError("horizon law needs at least one time step");
    }
    const int d = model.order();
    const auto j = static_cast<std::size_t>(model.joint_size());
    std::size_t total = 1;
    for (int t = 0; t < std::max(horizon, d); ++t) {
        total *= j;
        if (total > kMaxHorizonSequences) {
            throw InstanceTooLarge("horizon " + std::to_string(horizon) + " needs more than 2^24 sequences");
        }
    }
    std::vector<double> law = std::move(start);
    for (int len = d; len < horizon; ++len) {
        std::vector<double> next(law.size() * j, 0.0);
        for (std::size_t seq = 0; seq < law.size(); ++seq) {
            if (law[seq] <= 0.0) {
                continue;
            }
            const std::size_t window = seq % model.window_count();
            for (std::size_t s = 0; s < j; ++s) {
                next[seq * j + s] = law[seq] * model.transition(window, static_cast<int>(s));
            }
        }
        law.swap(next);
    }
    if (horizon < d) {
        // Keep the first `horizon` symbols of each window.
        std::size_t drop = 1;
        for (int t = horizon; t < d; ++t) {
            drop *= j;
        }
        std::vector<double> marginal(law.size() / drop, 0.0);
        for (std::size_t seq = 0; seq < law.size(); ++seq) {
            marginal[seq / drop] += law[seq];
        }
        law.swap(marginal);
    }
    law_ = std::move(law);
}

HorizonLaw HorizonLaw::stationary(const JointMarkovModel& model, int horizon) {
    std::vector<double> start = model.initial_is_stationary() ? model.initial() : stationary_distribution(model).pi;
    return HorizonLaw(model, horizon, std::move(start));
}

HorizonLaw HorizonLaw::from_initial(const JointMarkovModel& model, int horizon) {
    return HorizonLaw(model, horizon, model.initial());
}

double HorizonLaw::conditional_mutual_information(const NodeSet& a, const NodeSet& b, const NodeSet& c) const {
    auto radix = [&](Process p) {
        switch (p) {
            case Process::X:
                return mx_;
            case Process::Y:
                return my_;
            case Process::Z:
                return mz_;
        }
        return 1;
    };
    for (const NodeSet* set : {&a, &b, &c}) {
        for (Node n : *set) {
            if (n.time < 1 || n.time > horizon_ || (n.process == Process::Z && !has_z_)) {
                throw InputError("node " + node_label(n) + " is outside the horizon law");
            }
        }
    }

    const auto joint = static_cast<std::size_t>(mx_ * my_ * mz_);
    std::vector<int> syms(static_cast<std::size_t>(horizon_));
    auto value = [&](Node n) -> std::uint64_t {
        const int s = syms[static_cast<std::size_t>(n.time - 1)];
        switch (n.process) {
            case Process::X:
                return static_cast<std::uint64_t>(s / (my_ * mz_));
            case Process::Y:
                return static_cast<std::uint64_t>((s / mz_) % my_);
            case Process::Z:
                return static_cast<std::uint64_t>(s % mz_);
        }
        return 0;
    };
    auto key_of = [&](const NodeSet& set) {
        std::uint64_t k = 0;
        for (Node n : set) {
            k = k * static_cast<std::uint64_t>(radix(n.process)) + value(n);
        }
        return k;
    };
    auto range_of = [&](const NodeSet& set) {
        std::uint64_t r = 1;
        for (Node n : set) {
            r *= static_cast<std::uint64_t>(radix(n.process));
        }
        return r;
    };
    const std::uint64_t rb = range_of(b);
    const std::uint64_t rc = range_of(c);

    std::unordered_map<std::uint64_t, double> pabc, pac, pbc, pc;
    for (std::size_t seq = 0; seq < law_.size(); ++seq) {
        const double p = law_[seq];
        if (p <= 0.0) {
            continue;
        }
        std::size_t code = seq;
        for (int t = horizon_ - 1; t >= 0; --t) {
            syms[static_cast<std::size_t>(t)] = static_cast<int>(code % joint);
            code /= joint;
        }
        const std::uint64_t ka = key_of(a);
        const std::uint64_t kb = key_of(b);
        const std::uint64_t kc = key_of(c);
        pabc[(ka * rb + kb) * rc + kc] += p;
        pac[ka * rc + kc] += p;
        pbc[kb * rc + kc] += p;
        pc[kc] += p;
    }
    KahanSum info;
    for (const auto& [key, p] : pabc) {
        const std::uint64_t kc = key % rc;
        const std::uint64_t kb = (key / rc) % rb;
        const std::uint64_t ka = key / rc / rb;
        info.add(p * std::log2(p * pc.at(kc) / (pac.at(ka * rc + kc) * pbc.at(kb * rc + kc))));
    }
    return std::max(0.0, info.value());
}

// ---------------------------------------------------------------------------

std::vector<EdgeInformation> edge_information(const JointMarkovModel& model) {
    const int d = model.order();
    const HorizonLaw law = HorizonLaw::stationary(model, d + 1);
    const std::vector<Process> procs = processes(model.has_z());
    NodeSet window;
    for (int t = 1; t <= d; ++t) {
        for (Process p : procs) {
            window.insert(Node{p, t});
        }
    }
    std::vector<EdgeInformation> out;
    for (Process to : procs) {
        for (Process from : procs) {
            for (int lag = 1; lag <= d; ++lag) {
                const Node src{from, d + 1 - lag};
                NodeSet rest = window;
                rest.erase(src);
                const double bits = law.conditional_mutual_information({src}, {Node{to, d + 1}}, rest);
                out.push_back(EdgeInformation{from, to, lag, bits});
            }
        }
    }
    return out;
}

UnrolledDag build_unrolled_network(const JointMarkovModel& model, int horizon) {
    UnrolledDag dag(horizon, model.order(), model.has_z());
    for (const EdgeInformation& e : edge_information(model)) {
        if (!e.present()) {
            continue;
        }
        for (int t = e.lag + 1; t <= horizon; ++t) {
            dag.add_edge(Node{e.from, t - e.lag}, Node{e.to, t});
        }
    }
    return dag;
}

bool d_separated(const UnrolledDag& dag, const NodeSet& a, const NodeSet& b, const NodeSet& c) {
    for (const NodeSet* set : {&a, &b, &c}) {
        for (Node n : *set) {
            if (!dag.contains(n)) {
                throw InputError("node " + node_label(n) + " is not in the graph");
            }
        }
    }
    auto overlaps = [](const NodeSet& p, const NodeSet& q) {
        return std::any_of(p.begin(), p.end(), [&](Node n) { return q.contains(n); });
    };
    if (overlaps(a, b) || overlaps(a, c) || overlaps(b, c)) {
        throw InputError("d-separation sets must be disjoint");
    }

    // 1. Ancestral subgraph of A, B and C.
    NodeSet ancestral;
    std::queue<Node> todo;
    for (const NodeSet* set : {&a, &b, &c}) {
        for (Node n : *set) {
            if (ancestral.insert(n).second) {
                todo.push(n);
            }
        }
    }
    while (!todo.empty()) {
        const Node n = todo.front();
        todo.pop();
        for (Node p : dag.parents(n)) {
            if (ancestral.insert(p).second) {
                todo.push(p);
            }
        }
    }

    // 2. Moralize: marry parents of a common child. Original edges are kept.
    std::map<Node, NodeSet> adjacent;
    for (Node child : ancestral) {
        const auto& ps = dag.parents(child);
        for (Node p : ps) {
            adjacent[p].insert(child);
            adjacent[child].insert(p);
        }
        for (std::size_t i = 0; i < ps.size(); ++i) {
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                adjacent[ps[i]].insert(ps[j]);
                adjacent[ps[j]].insert(ps[i]);
            }
        }
    }

    // 3. Remove C. 4. Edges are already stored undirected.
    // 5. Search for a path from A to B.
    NodeSet seen;
    for (Node n : a) {
        seen.insert(n);
        todo.push(n);
    }
    while (!todo.empty()) {
        const Node n = todo.front();
        todo.pop();
        if (b.contains(n)) {
            return false;
        }
        const auto it = adjacent.find(n);
        if (it == adjacent.end()) {
            continue;
        }
        for (Node m : it->second) {
            if (!c.contains(m) && seen.insert(m).second) {
                todo.push(m);
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

std::string_view markovicity_name(Markovicity m) {
    switch (m) {
        case Markovicity::ConditionallyDMarkov:
            return "conditionally-d-markov";
        case Markovicity::MarkovOrderAtMost2d:
            return "markov-order-at-most-2d";
        case Markovicity::NoFiniteOrder:
            return "no-finite-order";
    }
    return "unknown";
}

MarkovicityReport classify_markovicity(const JointMarkovModel& model) {
    const int d = model.order();
    const int max_lag = 2 * d + 1;
    const std::vector<EdgeInformation> info = edge_information(model);
    const bool y_to_x = std::any_of(info.begin(), info.end(), [](const EdgeInformation& e) {
        return e.present() && e.from == Process::Y && e.to == Process::X;
    });

    // Pairwise dependence of Y samples given every X and Z in the horizon.
    const int check = max_lag + 1;
    const HorizonLaw law = HorizonLaw::stationary(model, check);
    NodeSet xz;
    for (int t = 1; t <= check; ++t) {
        xz.insert(Node{Process::X, t});
        if (model.has_z()) {
            xz.insert(Node{Process::Z, t});
        }
    }
    double y_dep = 0.0;
    for (int j = 1; j <= check; ++j) {
        for (int k = j + 1; k <= check; ++k) {
            y_dep = std::max(y_dep, law.conditional_mutual_information({Node{Process::Y, j}},
                                                                        {Node{Process::Y, k}}, xz));
        }
    }

    // Graph-level separation of X_i from the older (X, Z) past, per lag. The
    // horizon leaves at least max_lag + d steps before the oldest conditioned
    // sample so truncation does not hide paths.
    const int horizon = 2 * max_lag + 2 * d + 1;
    UnrolledDag dag = build_unrolled_network(model, horizon);
    std::vector<int> lags;
    const int i = horizon;
    for (int l = 1; l <= max_lag; ++l) {
        NodeSet recent, older;
        for (int t = 1; t < i; ++t) {
            NodeSet& target = t >= i - l ? recent : older;
            target.insert(Node{Process::X, t});
            if (model.has_z()) {
                target.insert(Node{Process::Z, t});
            }
        }
        if (d_separated(dag, {Node{Process::X, i}}, older, recent)) {
            lags.push_back(l);
        }
    }

    Markovicity branch = Markovicity::NoFiniteOrder;
    if (!y_to_x) {
        branch = Markovicity::ConditionallyDMarkov;
    } else if (y_dep <= kZeroInformationBits) {
        branch = Markovicity::MarkovOrderAtMost2d;
    }
    return MarkovicityReport{branch,       y_to_x, y_dep, check, std::move(lags),
                             branch == Markovicity::NoFiniteOrder, std::move(dag)};
}

}  // namespace causalpath
