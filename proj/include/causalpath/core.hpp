#pragma once

// Finite-alphabet symbols, sequences and probability vectors, plus the
// information measures everything else is built from. All logarithms are
// base 2 and every public quantity is in bits.

#include <cstddef>
#include <span>
#include <vector>

#include "causalpath/errors.hpp"

namespace causalpath {

using Symbol = int;

inline constexpr double kNormalizationTolerance = 1e-9;

/// Symbols 0..size-1.
class Alphabet {
public:
    explicit Alphabet(int size);

    int size() const noexcept { return size_; }
    bool contains(Symbol s) const noexcept { return s >= 0 && s < size_; }

    friend bool operator==(Alphabet a, Alphabet b) noexcept { return a.size_ == b.size_; }

private:
    int size_;
};

class SymbolSeq {
public:
    SymbolSeq(Alphabet alphabet, std::vector<Symbol> data);

    Alphabet alphabet() const noexcept { return alphabet_; }
    const std::vector<Symbol>& data() const noexcept { return data_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    Symbol operator[](std::size_t i) const { return data_[i]; }

    friend bool operator==(const SymbolSeq&, const SymbolSeq&) = default;

private:
    Alphabet alphabet_;
    std::vector<Symbol> data_;
};

/// Probability vector over an alphabet. Entries are nonnegative and sum to 1
/// within kNormalizationTolerance.
class ProbDist {
public:
    ProbDist(Alphabet alphabet, std::vector<double> probs);

    static ProbDist uniform(Alphabet alphabet);
    static ProbDist point_mass(Alphabet alphabet, Symbol s);
    /// Rescales nonnegative weights with a positive total.
    static ProbDist normalized(Alphabet alphabet, std::vector<double> weights);

    Alphabet alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](Symbol s) const { return probs_[static_cast<std::size_t>(s)]; }
    std::span<const double> probs() const noexcept { return probs_; }

    /// Throws ZeroProbabilityError for a zero entry instead of returning -inf.
    double log2_prob(Symbol s) const;

private:
    Alphabet alphabet_;
    std::vector<double> probs_;
};

/// D(p || q) in bits. Throws AlphabetMismatch, or AbsoluteContinuityError when
/// p(x) > 0 = q(x).
double kl_divergence(const ProbDist& p, const ProbDist& q);

double entropy(const ProbDist& p);

double total_variation(const ProbDist& p, const ProbDist& q);

/// sum_x |log2 p(x)/q(x)|; both distributions must be strictly positive.
double abs_log_ratio_sum(const ProbDist& p, const ProbDist& q);

/// Compensated summation for long enumerations.
class KahanSum {
public:
    void add(double v) noexcept {
        const double y = v - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const noexcept { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Binary log-sum: log2(2^a + 2^b).
double log2_add(double a, double b) noexcept;

}  // namespace causalpath
