#include "causalpath/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace causalpath {

Alphabet::Alphabet(int size) : size_(size) {
    if (size < 1) {
        throw InputError("alphabet size must be positive, got " + std::to_string(size));
    }
}

SymbolSeq::SymbolSeq(Alphabet alphabet, std::vector<Symbol> data)
    : alphabet_(alphabet), data_(std::move(data)) {
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!alphabet_.contains(data_[i])) {
            throw InputError("symbol " + std::to_string(data_[i]) + " at position " + std::to_string(i) +
                             " outside alphabet of size " + std::to_string(alphabet_.size()));
        }
    }
}

ProbDist::ProbDist(Alphabet alphabet, std::vector<double> probs)
    : alphabet_(alphabet), probs_(std::move(probs)) {
    if (probs_.size() != static_cast<std::size_t>(alphabet_.size())) {
        throw InvalidDistribution("distribution has " + std::to_string(probs_.size()) +
                                  " entries for alphabet of size " + std::to_string(alphabet_.size()));
    }
    KahanSum total;
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw InvalidDistribution("distribution entry is negative or not finite");
        }
        total.add(p);
    }
    if (std::abs(total.value() - 1.0) > kNormalizationTolerance) {
        throw InvalidDistribution("distribution sums to " + std::to_string(total.value()));
    }
}

ProbDist ProbDist::uniform(Alphabet alphabet) {
    return ProbDist(alphabet, std::vector<double>(static_cast<std::size_t>(alphabet.size()),
                                                  1.0 / alphabet.size()));
}

ProbDist ProbDist::point_mass(Alphabet alphabet, Symbol s) {
    if (!alphabet.contains(s)) {
        throw InputError("point mass symbol outside alphabet");
    }
    std::vector<double> probs(static_cast<std::size_t>(alphabet.size()), 0.0);
    probs[static_cast<std::size_t>(s)] = 1.0;
    return ProbDist(alphabet, std::move(probs));
}

ProbDist ProbDist::normalized(Alphabet alphabet, std::vector<double> weights) {
    KahanSum total;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw InvalidDistribution("weights must be finite and nonnegative");
        }
        total.add(w);
    }
    if (!(total.value() > 0.0)) {
        throw ZeroProbabilityError("cannot normalize weights with zero total");
    }
    for (double& w : weights) {
        w /= total.value();
    }
    return ProbDist(alphabet, std::move(weights));
}

double ProbDist::log2_prob(Symbol s) const {
    const double p = probs_.at(static_cast<std::size_t>(s));
    if (p == 0.0) {
        throw ZeroProbabilityError("log-probability of zero-probability symbol " + std::to_string(s));
    }
    return std::log2(p);
}

namespace {

void require_same_alphabet(const ProbDist& p, const ProbDist& q) {
    if (!(p.alphabet() == q.alphabet())) {
        throw AlphabetMismatch("distributions over alphabets of size " + std::to_string(p.alphabet().size()) +
                               " and " + std::to_string(q.alphabet().size()));
    }
}

}  // namespace

double kl_divergence(const ProbDist& p, const ProbDist& q) {
    require_same_alphabet(p, q);
    KahanSum sum;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.probs()[i];
        const double qi = q.probs()[i];
        if (pi == 0.0) {
            continue;
        }
        if (qi == 0.0) {
            throw AbsoluteContinuityError("q(" + std::to_string(i) + ") = 0 where p > 0");
        }
        sum.add(pi * std::log2(pi / qi));
    }
    // Rounding can leave a tiny negative residue when p == q.
    return std::max(0.0, sum.value());
}

double entropy(const ProbDist& p) {
    KahanSum sum;
    for (double pi : p.probs()) {
        if (pi > 0.0) {
            sum.add(-pi * std::log2(pi));
        }
    }
    return std::max(0.0, sum.value());
}

double total_variation(const ProbDist& p, const ProbDist& q) {
    require_same_alphabet(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += std::abs(p.probs()[i] - q.probs()[i]);
    }
    return 0.5 * sum;
}

double abs_log_ratio_sum(const ProbDist& p, const ProbDist& q) {
    require_same_alphabet(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.probs()[i];
        const double qi = q.probs()[i];
        if (pi == 0.0 || qi == 0.0) {
            if (pi == qi) {
                throw ZeroProbabilityError("log-ratio undefined for symbol with zero probability under both");
            }
            throw AbsoluteContinuityError("log-ratio unbounded at symbol " + std::to_string(i));
        }
        sum += std::abs(std::log2(pi / qi));
    }
    return sum;
}

double log2_add(double a, double b) noexcept {
    if (a < b) {
        std::swap(a, b);
    }
    if (b == -INFINITY) {
        return a;
    }
    return a + std::log1p(std::exp2(b - a)) / std::numbers::ln2;
}

}  // namespace causalpath
