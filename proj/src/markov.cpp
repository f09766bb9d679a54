#include "causalpath/markov.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <string>
#include <unordered_map>

namespace causalpath {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t out = 1;
    for (int i = 0; i < exp; ++i) {
        out *= base;
    }
    return out;
}

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int sample_index(std::span<const double> probs, double u) {
    double cum = 0.0;
    int last = -1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) {
            continue;
        }
        cum += probs[i];
        last = static_cast<int>(i);
        if (u < cum) {
            return last;
        }
    }
    return last;
}

void normalize_or_throw(std::vector<double>& w, const char* what) {
    KahanSum total;
    for (double v : w) {
        total.add(v);
    }
    if (!(total.value() > 0.0)) {
        throw ZeroProbabilityError(what);
    }
    for (double& v : w) {
        v /= total.value();
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// JointMarkovModel

JointMarkovModel::JointMarkovModel(int order, Alphabet ax, Alphabet ay, std::optional<Alphabet> az,
                                   std::vector<KernelRow> kernel, std::optional<std::vector<double>> initial)
    : order_(order), ax_(ax), ay_(ay), az_(az), kernel_(std::move(kernel)) {
    if (order < 1) {
        throw InputError("model order must be at least 1");
    }
    if (ax.size() < 2 || ay.size() < 2 || (az && az->size() < 2)) {
        throw InputError("process alphabets must have at least two symbols");
    }
    joint_ = ax.size() * ay.size() * z_size();
    windows_ = ipow(static_cast<std::size_t>(joint_), order);
    if (windows_ > (std::size_t{1} << 20)) {
        throw InstanceTooLarge("model has " + std::to_string(windows_) + " windows");
    }
    validate();
    if (initial) {
        if (initial->size() != windows_) {
            throw InvalidDistribution("initial law must have one entry per window (" + std::to_string(windows_) + ")");
        }
        const ProbDist checked(Alphabet(static_cast<int>(windows_)), *initial);
        initial_.assign(checked.probs().begin(), checked.probs().end());
        stationary_initial_ = false;
    } else {
        initial_ = stationary_distribution(*this).pi;
        stationary_initial_ = true;
    }
}

void JointMarkovModel::validate() const {
    if (kernel_.size() != windows_) {
        throw InputError("kernel has " + std::to_string(kernel_.size()) + " rows, expected " + std::to_string(windows_));
    }
    for (const KernelRow& r : kernel_) {
        if (!(r.x.alphabet() == ax_) || !(r.y.alphabet() == ay_)) {
            throw AlphabetMismatch("kernel row alphabet does not match model alphabets");
        }
        if (r.z.has_value() != az_.has_value() || (r.z && !(r.z->alphabet() == *az_))) {
            throw AlphabetMismatch("kernel row Z law does not match model Z alphabet");
        }
    }
}

int JointMarkovModel::encode(JointSymbol s) const {
    if (!ax_.contains(s.x) || !ay_.contains(s.y) || s.z < 0 || s.z >= z_size()) {
        throw InputError("joint symbol outside model alphabets");
    }
    return (s.x * ay_.size() + s.y) * z_size() + s.z;
}

JointSymbol JointMarkovModel::decode(int s) const {
    const int mz = z_size();
    return JointSymbol{s / (ay_.size() * mz), (s / mz) % ay_.size(), s % mz};
}

std::size_t JointMarkovModel::window_code(std::span<const JointSymbol> window) const {
    if (window.size() != static_cast<std::size_t>(order_)) {
        throw InputError("window length " + std::to_string(window.size()) + " does not match order " +
                         std::to_string(order_));
    }
    std::size_t code = 0;
    for (const JointSymbol& s : window) {
        code = code * static_cast<std::size_t>(joint_) + static_cast<std::size_t>(encode(s));
    }
    return code;
}

std::vector<JointSymbol> JointMarkovModel::window_symbols(std::size_t code) const {
    std::vector<JointSymbol> out(static_cast<std::size_t>(order_));
    for (int p = order_ - 1; p >= 0; --p) {
        out[static_cast<std::size_t>(p)] = decode(static_cast<int>(code % static_cast<std::size_t>(joint_)));
        code /= static_cast<std::size_t>(joint_);
    }
    return out;
}

double JointMarkovModel::transition(std::size_t window, int s) const {
    const KernelRow& r = kernel_[window];
    const JointSymbol js = decode(s);
    double p = r.x[js.x] * r.y[js.y];
    if (r.z) {
        p *= (*r.z)[js.z];
    }
    return p;
}

JointMarkovModel JointMarkovModel::swapped() const {
    JointMarkovModel out;
    out.order_ = order_;
    out.ax_ = ay_;
    out.ay_ = ax_;
    out.az_ = az_;
    out.joint_ = joint_;
    out.windows_ = windows_;
    out.stationary_initial_ = stationary_initial_;
    out.kernel_.reserve(windows_);
    out.initial_.assign(windows_, 0.0);
    for (std::size_t w = 0; w < windows_; ++w) {
        std::vector<JointSymbol> syms = out.window_symbols(w);
        for (JointSymbol& s : syms) {
            std::swap(s.x, s.y);
        }
        const std::size_t old = window_code(syms);
        const KernelRow& r = kernel_[old];
        out.kernel_.push_back(KernelRow{r.y, r.x, r.z});
        out.initial_[w] = initial_[old];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stationary law

std::vector<double> lifted_transition_matrix(const JointMarkovModel& model) {
    const std::size_t w = model.window_count();
    std::vector<double> p(w * w, 0.0);
    for (std::size_t from = 0; from < w; ++from) {
        for (int s = 0; s < model.joint_size(); ++s) {
            p[from * w + model.shift(from, s)] += model.transition(from, s);
        }
    }
    return p;
}

namespace {

// Tarjan's strongly connected components over the positive-transition graph.
std::vector<int> strong_components(const std::vector<std::vector<std::size_t>>& adj, int& count) {
    const std::size_t n = adj.size();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    int next = 0;
    count = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = next++;
        stack.push_back(v);
        on_stack[v] = 1;
        for (std::size_t u : adj[v]) {
            if (index[u] < 0) {
                visit(u);
                low[v] = std::min(low[v], low[u]);
            } else if (on_stack[u]) {
                low[v] = std::min(low[v], index[u]);
            }
        }
        if (low[v] == index[v]) {
            std::size_t u;
            do {
                u = stack.back();
                stack.pop_back();
                on_stack[u] = 0;
                comp[u] = count;
            } while (u != v);
            ++count;
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (index[v] < 0) {
            visit(v);
        }
    }
    return comp;
}

}  // namespace

StationaryDist stationary_distribution(const JointMarkovModel& model) {
    const std::size_t w = model.window_count();
    if (w > 4096) {
        throw InstanceTooLarge("stationary solve limited to 4096 windows, model has " + std::to_string(w));
    }
    const std::vector<double> p = lifted_transition_matrix(model);

    std::vector<std::vector<std::size_t>> adj(w);
    for (std::size_t a = 0; a < w; ++a) {
        for (std::size_t b = 0; b < w; ++b) {
            if (p[a * w + b] > 0.0) {
                adj[a].push_back(b);
            }
        }
    }
    int ncomp = 0;
    const std::vector<int> comp = strong_components(adj, ncomp);
    std::vector<char> closed(static_cast<std::size_t>(ncomp), 1);
    for (std::size_t a = 0; a < w; ++a) {
        for (std::size_t b : adj[a]) {
            if (comp[a] != comp[b]) {
                closed[static_cast<std::size_t>(comp[a])] = 0;
            }
        }
    }
    const auto closed_count = std::count(closed.begin(), closed.end(), 1);
    if (closed_count != 1) {
        throw NonErgodicModel("lifted chain has " + std::to_string(closed_count) + " closed classes");
    }
    const int cls = static_cast<int>(std::find(closed.begin(), closed.end(), 1) - closed.begin());
    std::vector<std::size_t> members;
    std::vector<int> local(w, -1);
    for (std::size_t a = 0; a < w; ++a) {
        if (comp[a] == cls) {
            local[a] = static_cast<int>(members.size());
            members.push_back(a);
        }
    }

    // Period of the closed class: gcd of level differences along its edges.
    std::vector<long> level(w, -1);
    std::queue<std::size_t> queue;
    level[members.front()] = 0;
    queue.push(members.front());
    long period = 0;
    while (!queue.empty()) {
        const std::size_t a = queue.front();
        queue.pop();
        for (std::size_t b : adj[a]) {
            if (level[b] < 0) {
                level[b] = level[a] + 1;
                queue.push(b);
            } else {
                period = std::gcd(period, std::abs(level[a] + 1 - level[b]));
            }
        }
    }
    if (period != 1) {
        throw NonErgodicModel("lifted chain is periodic (period " + std::to_string(period) + ")");
    }

    const Eigen::Index n = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            a(j, i) += p[members[static_cast<std::size_t>(i)] * w + members[static_cast<std::size_t>(j)]];
        }
    }
    a.row(n - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    b(n - 1) = 1.0;
    const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(b);

    StationaryDist out;
    out.pi.assign(w, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.pi[members[static_cast<std::size_t>(i)]] = std::max(0.0, sol(i));
    }
    normalize_or_throw(out.pi, "stationary solve produced a zero vector");

    double residual = 0.0;
    for (std::size_t j = 0; j < w; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < w; ++i) {
            acc += out.pi[i] * p[i * w + j];
        }
        residual = std::max(residual, std::abs(acc - out.pi[j]));
    }
    out.residual = residual;
    if (!(residual <= 1e-10)) {
        throw NonErgodicModel("stationary solve residual " + std::to_string(residual) + " exceeds 1e-10");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Simulation

JointPath simulate(const JointMarkovModel& model, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto d = static_cast<std::size_t>(model.order());
    std::vector<Symbol> xs, ys, zs;
    xs.reserve(n);
    ys.reserve(n);
    zs.reserve(n);

    std::size_t window = static_cast<std::size_t>(sample_index(model.initial(), u01(rng)));
    const std::vector<JointSymbol> first = model.window_symbols(window);
    for (std::size_t t = 0; t < std::min(n, d); ++t) {
        xs.push_back(first[t].x);
        ys.push_back(first[t].y);
        zs.push_back(first[t].z);
    }
    for (std::size_t t = d; t < n; ++t) {
        const KernelRow& r = model.row(window);
        JointSymbol s;
        s.x = sample_index(r.x.probs(), u01(rng));
        s.y = sample_index(r.y.probs(), u01(rng));
        if (r.z) {
            s.z = sample_index(r.z->probs(), u01(rng));
        }
        xs.push_back(s.x);
        ys.push_back(s.y);
        zs.push_back(s.z);
        window = model.shift(window, model.encode(s));
    }
    JointPath path{SymbolSeq(model.alphabet_x(), std::move(xs)), SymbolSeq(model.alphabet_y(), std::move(ys)),
                   std::nullopt};
    if (model.has_z()) {
        path.z = SymbolSeq(*model.alphabet_z(), std::move(zs));
    }
    return path;
}

// ---------------------------------------------------------------------------
// Filter

FilterState::FilterState(const JointMarkovModel& model)
    : model_(&model), belief_(model.initial()), scratch_(model.window_count(), 0.0) {}

ProbDist FilterState::predict_x() const {
    const JointMarkovModel& m = *model_;
    const auto d = static_cast<std::size_t>(m.order());
    std::vector<double> out(static_cast<std::size_t>(m.alphabet_x().size()), 0.0);
    if (time_ < d) {
        const std::size_t place = ipow(static_cast<std::size_t>(m.joint_size()), static_cast<int>(d - 1 - time_));
        for (std::size_t w = 0; w < belief_.size(); ++w) {
            if (belief_[w] > 0.0) {
                const int s = static_cast<int>((w / place) % static_cast<std::size_t>(m.joint_size()));
                out[static_cast<std::size_t>(m.decode(s).x)] += belief_[w];
            }
        }
    } else {
        for (std::size_t w = 0; w < belief_.size(); ++w) {
            if (belief_[w] > 0.0) {
                const ProbDist& row = m.row(w).x;
                for (std::size_t a = 0; a < out.size(); ++a) {
                    out[a] += belief_[w] * row.probs()[a];
                }
            }
        }
    }
    normalize_or_throw(out, "filter belief has no mass");
    return ProbDist(m.alphabet_x(), std::move(out));
}

void FilterState::observe(Symbol x, std::optional<Symbol> y, Symbol z) {
    const JointMarkovModel& m = *model_;
    const auto d = static_cast<std::size_t>(m.order());
    if (!m.alphabet_x().contains(x) || (y && !m.alphabet_y().contains(*y)) || z < 0 || z >= m.z_size()) {
        throw InputError("observation outside model alphabets");
    }
    if (time_ < d) {
        const std::size_t place = ipow(static_cast<std::size_t>(m.joint_size()), static_cast<int>(d - 1 - time_));
        for (std::size_t w = 0; w < belief_.size(); ++w) {
            const JointSymbol s = m.decode(static_cast<int>((w / place) % static_cast<std::size_t>(m.joint_size())));
            if (s.x != x || s.z != z || (y && s.y != *y)) {
                belief_[w] = 0.0;
            }
        }
    } else {
        std::fill(scratch_.begin(), scratch_.end(), 0.0);
        const Symbol y_lo = y ? *y : 0;
        const Symbol y_hi = y ? *y : m.alphabet_y().size() - 1;
        for (std::size_t w = 0; w < belief_.size(); ++w) {
            const double b = belief_[w];
            if (b <= 0.0) {
                continue;
            }
            const KernelRow& r = m.row(w);
            const double px = r.x[x] * (r.z ? (*r.z)[z] : 1.0);
            if (px <= 0.0) {
                continue;
            }
            for (Symbol yy = y_lo; yy <= y_hi; ++yy) {
                const double py = r.y[yy];
                if (py > 0.0) {
                    scratch_[m.shift(w, m.encode({x, yy, z}))] += b * px * py;
                }
            }
        }
        belief_.swap(scratch_);
    }
    normalize_or_throw(belief_, "observation has zero probability under the model");
    ++time_;
}

void FilterState::reset_to_window(std::size_t window, std::size_t time) {
    if (window >= belief_.size() || time < static_cast<std::size_t>(model_->order())) {
        throw InputError("filter reset needs a valid window and time >= order");
    }
    std::fill(belief_.begin(), belief_.end(), 0.0);
    belief_[window] = 1.0;
    time_ = time;
}

std::pair<ProbDist, FilterState> true_restricted_dist_recursive(const FilterState& state, Symbol x_prev,
                                                                Symbol z_prev) {
    FilterState next = state;
    next.observe(x_prev, std::nullopt, z_prev);
    return {next.predict_x(), std::move(next)};
}

// ---------------------------------------------------------------------------
// Direct distributions

ProbDist true_complete_dist(const JointMarkovModel& model, std::span<const JointSymbol> window) {
    return model.row(model.window_code(window)).x;
}

double joint_probability(const JointMarkovModel& model, std::span<const Symbol> xs, std::span<const Symbol> ys,
                         std::span<const Symbol> zs) {
    const std::size_t n = xs.size();
    if (ys.size() != n || (!zs.empty() && zs.size() != n)) {
        throw InputError("joint_probability needs equal-length sequences");
    }
    auto at = [&](std::size_t t) {
        return model.encode(JointSymbol{xs[t], ys[t], zs.empty() ? 0 : zs[t]});
    };
    const auto d = static_cast<std::size_t>(model.order());
    const auto j = static_cast<std::size_t>(model.joint_size());
    if (n < d) {
        // Marginal of the initial law over its first n positions.
        std::size_t prefix = 0;
        for (std::size_t t = 0; t < n; ++t) {
            prefix = prefix * j + static_cast<std::size_t>(at(t));
        }
        const std::size_t tail = ipow(j, static_cast<int>(d - n));
        double p = 0.0;
        for (std::size_t rest = 0; rest < tail; ++rest) {
            p += model.initial()[prefix * tail + rest];
        }
        return p;
    }
    std::size_t window = 0;
    for (std::size_t t = 0; t < d; ++t) {
        window = window * j + static_cast<std::size_t>(at(t));
    }
    double p = model.initial()[window];
    for (std::size_t t = d; t < n && p > 0.0; ++t) {
        const int s = at(t);
        p *= model.transition(window, s);
        window = (window * j + static_cast<std::size_t>(s)) % model.window_count();
    }
    return p;
}

ProbDist true_restricted_brute(const JointMarkovModel& model, std::span<const Symbol> xs,
                               std::span<const Symbol> ys_known, std::span<const Symbol> zs) {
    const std::size_t i = xs.size() + 1;
    const std::size_t r = ys_known.size();
    if (r > i - 1 || (!zs.empty() && zs.size() != i - 1) || (model.has_z() && zs.size() != i - 1)) {
        throw InputError("true_restricted_brute: inconsistent history lengths");
    }
    const std::size_t hidden = i - r;
    const auto my = static_cast<std::uint64_t>(model.alphabet_y().size());
    const auto mz = static_cast<std::uint64_t>(model.z_size());
    std::uint64_t paths = mz;
    for (std::size_t t = 0; t < hidden; ++t) {
        paths *= my;
        if (paths > kBruteForcePathLimit) {
            throw InstanceTooLarge("brute-force marginalization over more than " +
                                   std::to_string(kBruteForcePathLimit) + " paths");
        }
    }
    std::vector<Symbol> x(xs.begin(), xs.end());
    x.push_back(0);
    std::vector<Symbol> y(i, 0);
    std::copy(ys_known.begin(), ys_known.end(), y.begin());
    std::vector<Symbol> z;
    if (model.has_z()) {
        z.assign(zs.begin(), zs.end());
        z.push_back(0);
    }
    std::vector<double> out(static_cast<std::size_t>(model.alphabet_x().size()), 0.0);
    for (Symbol a = 0; a < model.alphabet_x().size(); ++a) {
        x.back() = a;
        KahanSum sum;
        for (std::uint64_t code = 0; code < paths; ++code) {
            std::uint64_t c = code;
            if (model.has_z()) {
                z.back() = static_cast<Symbol>(c % mz);
                c /= mz;
            }
            for (std::size_t t = r; t < i; ++t) {
                y[t] = static_cast<Symbol>(c % my);
                c /= my;
            }
            sum.add(joint_probability(model, x, y, z));
        }
        out[static_cast<std::size_t>(a)] = sum.value();
    }
    normalize_or_throw(out, "history has zero probability under the model");
    return ProbDist(model.alphabet_x(), std::move(out));
}

ProbDist true_partial_dist(const JointMarkovModel& model, std::span<const Symbol> x_window,
                           std::span<const Symbol> y_window, int k, std::span<const Symbol> z_window) {
    const auto d = static_cast<std::size_t>(model.order());
    if (k < 1) {
        throw InputError("partial distribution needs staleness k >= 1");
    }
    const std::size_t len = d + static_cast<std::size_t>(k);
    if (x_window.size() != len || y_window.size() != d || (model.has_z() && z_window.size() != len) ||
        (!model.has_z() && !z_window.empty())) {
        throw InputError("partial distribution windows must have lengths d+k (x, z) and d (y)");
    }
    std::vector<JointSymbol> start(d);
    for (std::size_t t = 0; t < d; ++t) {
        start[t] = JointSymbol{x_window[t], y_window[t], z_window.empty() ? 0 : z_window[t]};
    }
    FilterState f(model);
    f.reset_to_window(model.window_code(start), d);
    for (std::size_t t = d; t < len; ++t) {
        f.observe(x_window[t], std::nullopt, z_window.empty() ? 0 : z_window[t]);
    }
    return f.predict_x();
}

// ---------------------------------------------------------------------------
// Causal measures along a path

namespace {

Symbol z_at(const JointPath& path, std::size_t t) { return path.z ? (*path.z)[t] : 0; }

void check_path(const JointMarkovModel& model, const JointPath& path) {
    if (path.y.size() != path.x.size() || (path.z && path.z->size() != path.x.size())) {
        throw InputError("path components have different lengths");
    }
    if (!(path.x.alphabet() == model.alphabet_x()) || !(path.y.alphabet() == model.alphabet_y())) {
        throw AlphabetMismatch("path alphabets do not match the model");
    }
    if (path.z.has_value() != model.has_z() || (path.z && !(path.z->alphabet() == *model.alphabet_z()))) {
        throw AlphabetMismatch("path Z process does not match the model");
    }
}

// Reference law for x_i (1-based) revealing y only at positions < r (0-based
// count), computed from scratch.
ProbDist masked_reference(const JointMarkovModel& model, const JointPath& path, std::size_t i, std::size_t r) {
    const auto d = static_cast<std::size_t>(model.order());
    FilterState f(model);
    if (r >= d) {
        std::vector<JointSymbol> start(d);
        for (std::size_t t = 0; t < d; ++t) {
            const std::size_t at = r - d + t;
            start[t] = JointSymbol{path.x[at], path.y[at], z_at(path, at)};
        }
        f.reset_to_window(model.window_code(start), r);
        for (std::size_t t = r; t + 1 < i; ++t) {
            f.observe(path.x[t], std::nullopt, z_at(path, t));
        }
        return f.predict_x();
    }
    for (std::size_t t = 0; t + 1 < i; ++t) {
        f.observe(path.x[t], t < r ? std::optional<Symbol>(path.y[t]) : std::nullopt, z_at(path, t));
    }
    return f.predict_x();
}

}  // namespace

TruthSeries true_causal_series(const JointMarkovModel& model, const JointPath& path, std::optional<int> staleness) {
    check_path(model, path);
    if (staleness && *staleness < 0) {
        throw InputError("staleness must be nonnegative");
    }
    const std::size_t n = path.size();
    TruthSeries out;
    out.complete.reserve(n);
    out.reference.reserve(n);
    out.measure.reserve(n);
    FilterState full(model);
    FilterState hidden(model);
    for (std::size_t i = 1; i <= n; ++i) {
        ProbDist complete = full.predict_x();
        ProbDist reference = complete;
        if (!staleness) {
            reference = hidden.predict_x();
        } else if (*staleness > 0) {
            const auto k = static_cast<std::size_t>(*staleness);
            const std::size_t r = i > k + 1 ? i - 1 - k : 0;
            reference = r == 0 ? hidden.predict_x() : masked_reference(model, path, i, r);
        }
        out.measure.push_back(kl_divergence(complete, reference));
        out.complete.push_back(std::move(complete));
        out.reference.push_back(std::move(reference));
        const std::size_t t = i - 1;
        full.observe(path.x[t], path.y[t], z_at(path, t));
        hidden.observe(path.x[t], std::nullopt, z_at(path, t));
    }
    return out;
}

double true_causal_measure(const JointMarkovModel& model, const JointPath& path, std::size_t i) {
    check_path(model, path);
    if (i < 1 || i > path.size()) {
        throw InputError("time index outside path");
    }
    return kl_divergence(masked_reference(model, path, i, i - 1), masked_reference(model, path, i, 0));
}

double true_partial_causal_measure(const JointMarkovModel& model, const JointPath& path, std::size_t i, int k) {
    check_path(model, path);
    if (i < 1 || i > path.size() || k < 0) {
        throw InputError("time index outside path or negative staleness");
    }
    const auto kk = static_cast<std::size_t>(k);
    const std::size_t r = i > kk + 1 ? i - 1 - kk : 0;
    return kl_divergence(masked_reference(model, path, i, i - 1), masked_reference(model, path, i, r));
}

// ---------------------------------------------------------------------------
// Stationary rates

std::vector<double> stationary_sequence_law(const JointMarkovModel& model, int length) {
    const int d = model.order();
    if (length < d) {
        throw InputError("sequence law needs length >= model order");
    }
    const auto j = static_cast<std::size_t>(model.joint_size());
    const std::size_t total = ipow(j, length);
    if (total > (std::size_t{1} << 24)) {
        throw InstanceTooLarge("window enumeration of " + std::to_string(total) + " sequences");
    }
    std::vector<double> law = model.initial_is_stationary() ? model.initial() : stationary_distribution(model).pi;
    for (int len = d; len < length; ++len) {
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
    return law;
}

namespace {

// H(X_target | observed context) under the stationary law of L+1 consecutive
// joint symbols; `show_y(pos)` says whether y at context position pos
// (0 = oldest) is observed; `show_xz(pos)` likewise for x and z.
double conditional_entropy(const JointMarkovModel& model, int context_len,
                           const std::function<bool(int)>& show_xz, const std::function<bool(int)>& show_y) {
    const std::vector<double> law = stationary_sequence_law(model, context_len + 1);
    const auto j = static_cast<std::size_t>(model.joint_size());
    const auto mx = static_cast<std::size_t>(model.alphabet_x().size());
    std::unordered_map<std::uint64_t, std::vector<double>> groups;
    std::vector<JointSymbol> syms(static_cast<std::size_t>(context_len) + 1);
    for (std::size_t seq = 0; seq < law.size(); ++seq) {
        if (law[seq] <= 0.0) {
            continue;
        }
        std::size_t c = seq;
        for (int p = context_len; p >= 0; --p) {
            syms[static_cast<std::size_t>(p)] = model.decode(static_cast<int>(c % j));
            c /= j;
        }
        // Key: observed components, each shifted by one so hidden = 0.
        std::uint64_t key = 0;
        for (int p = 0; p < context_len; ++p) {
            const JointSymbol& s = syms[static_cast<std::size_t>(p)];
            key = key * (mx + 1) + (show_xz(p) ? static_cast<std::uint64_t>(s.x) + 1 : 0);
            key = key * static_cast<std::uint64_t>(model.z_size() + 1) +
                  (show_xz(p) ? static_cast<std::uint64_t>(s.z) + 1 : 0);
            key = key * static_cast<std::uint64_t>(model.alphabet_y().size() + 1) +
                  (show_y(p) ? static_cast<std::uint64_t>(s.y) + 1 : 0);
        }
        auto& bucket = groups[key];
        bucket.resize(mx, 0.0);
        bucket[static_cast<std::size_t>(syms.back().x)] += law[seq];
    }
    KahanSum h;
    for (const auto& [key, bucket] : groups) {
        double mass = 0.0;
        for (double v : bucket) {
            mass += v;
        }
        for (double v : bucket) {
            if (v > 0.0) {
                h.add(v * std::log2(mass / v));
            }
        }
    }
    return std::max(0.0, h.value());
}

}  // namespace

double exact_tdi_rate(const JointMarkovModel& model, int k) {
    if (k < 1) {
        throw InputError("TDI order must be at least 1");
    }
    const int len = std::max(k, model.order());
    auto recent = [len, k](int pos) { return len - pos <= k; };
    auto never = [](int) { return false; };
    const double without = conditional_entropy(model, len, recent, never);
    const double with = conditional_entropy(model, len, recent, recent);
    return std::max(0.0, without - with);
}

double exact_pdi_rate(const JointMarkovModel& model, int k) {
    if (k < 1) {
        throw InputError("PDI staleness must be at least 1");
    }
    const int d = model.order();
    const int len = d + k;
    auto always = [](int) { return true; };
    auto stale = [len, k](int pos) { return len - pos > k; };
    const double partial = conditional_entropy(model, len, always, stale);
    auto window = [d](int pos) { return pos >= 0 && pos < d; };
    const double complete = conditional_entropy(model, d, window, window);
    return std::max(0.0, partial - complete);
}

MonteCarloRate mc_di_rate(const JointMarkovModel& model, std::size_t n, std::uint64_t seed, std::size_t batches) {
    if (batches < 2 || n < batches) {
        throw InputError("mc_di_rate needs at least two batches and n >= batches");
    }
    const JointPath path = simulate(model, n, seed);
    FilterState full(model);
    FilterState hidden(model);
    const std::size_t size = n / batches;
    std::vector<double> means;
    KahanSum batch;
    KahanSum total;
    std::size_t in_batch = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double c = kl_divergence(full.predict_x(), hidden.predict_x());
        total.add(c);
        batch.add(c);
        if (++in_batch == size && means.size() < batches) {
            means.push_back(batch.value() / static_cast<double>(size));
            batch = KahanSum{};
            in_batch = 0;
        }
        full.observe(path.x[t], path.y[t], z_at(path, t));
        hidden.observe(path.x[t], std::nullopt, z_at(path, t));
    }
    const double mean = total.value() / static_cast<double>(n);
    const double bm = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(means.size());
    double var = 0.0;
    for (double m : means) {
        var += (m - bm) * (m - bm);
    }
    var /= static_cast<double>(means.size() - 1);
    return MonteCarloRate{mean, std::sqrt(var / static_cast<double>(means.size())), means.size()};
}

}  // namespace causalpath
