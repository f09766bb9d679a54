#include "causalpath/scenarios.hpp"

#include <array>

namespace causalpath {

namespace {

constexpr std::array<std::pair<std::string_view, Scenario>, 5> kNames{{
    {"independent", Scenario::Independent},
    {"unidirectional", Scenario::Unidirectional},
    {"bidirectional", Scenario::Bidirectional},
    {"cross-copy", Scenario::CrossCopy},
    {"iid-influence", Scenario::IidInfluence},
}};

using Row3 = std::array<double, 3>;
using Table3 = std::array<std::array<Row3, 3>, 3>;  // [x_prev][y_prev]

std::vector<double> row_of(const Row3& r) { return {r[0], r[1], r[2]}; }

// Ternary tables, indexed [x_{i-1}][y_{i-1}].

// X follows its own past only; Y follows its own past only.
constexpr std::array<Row3, 3> kIndepX{{{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}, {0.1, 0.3, 0.6}}};
constexpr std::array<Row3, 3> kIndepY{{{0.5, 0.25, 0.25}, {0.3, 0.4, 0.3}, {0.2, 0.2, 0.6}}};

// Y i.i.d.; X driven by both pasts.
constexpr Row3 kUniY{0.4, 0.35, 0.25};
constexpr Table3 kUniX{{
    {{{0.70, 0.20, 0.10}, {0.30, 0.55, 0.15}, {0.25, 0.15, 0.60}}},
    {{{0.55, 0.30, 0.15}, {0.15, 0.70, 0.15}, {0.10, 0.35, 0.55}}},
    {{{0.50, 0.15, 0.35}, {0.20, 0.50, 0.30}, {0.10, 0.20, 0.70}}},
}};

// Y sticky and nudged by X; X mostly copies y_{i-1}. X is far from
// Markov here, which separates the truncated and full DI rates.
constexpr Table3 kBiX{{
    {{{0.75, 0.15, 0.10}, {0.20, 0.70, 0.10}, {0.15, 0.10, 0.75}}},
    {{{0.70, 0.20, 0.10}, {0.10, 0.80, 0.10}, {0.10, 0.20, 0.70}}},
    {{{0.70, 0.10, 0.20}, {0.10, 0.70, 0.20}, {0.10, 0.15, 0.75}}},
}};
constexpr Table3 kBiY{{
    {{{0.80, 0.10, 0.10}, {0.15, 0.75, 0.10}, {0.20, 0.05, 0.75}}},
    {{{0.75, 0.15, 0.10}, {0.05, 0.85, 0.10}, {0.05, 0.20, 0.75}}},
    {{{0.75, 0.05, 0.20}, {0.05, 0.75, 0.20}, {0.10, 0.10, 0.80}}},
}};

}  // namespace

std::optional<Scenario> parse_scenario(std::string_view name) {
    for (const auto& [n, s] : kNames) {
        if (n == name) {
            return s;
        }
    }
    return std::nullopt;
}

std::string_view scenario_name(Scenario s) {
    for (const auto& [n, v] : kNames) {
        if (v == s) {
            return n;
        }
    }
    return "unknown";
}

std::vector<std::string> scenario_names() {
    std::vector<std::string> out;
    for (const auto& [n, s] : kNames) {
        out.emplace_back(n);
    }
    return out;
}

JointMarkovModel first_order_model(int mx, int my, const RowFn& x_row, const RowFn& y_row) {
    const Alphabet ax(mx);
    const Alphabet ay(my);
    std::vector<KernelRow> kernel;
    kernel.reserve(static_cast<std::size_t>(mx * my));
    for (Symbol x = 0; x < mx; ++x) {
        for (Symbol y = 0; y < my; ++y) {
            kernel.push_back(KernelRow{ProbDist(ax, x_row(x, y)), ProbDist(ay, y_row(x, y)), std::nullopt});
        }
    }
    return JointMarkovModel(1, ax, ay, std::nullopt, std::move(kernel));
}

JointMarkovModel iid_influence_model(double p1, double p2, double eps) {
    return first_order_model(
        2, 2, [&](Symbol, Symbol y) { const double p = y == 1 ? p1 : p2; return std::vector<double>{1.0 - p, p}; },
        [&](Symbol, Symbol) { return std::vector<double>{1.0 - eps, eps}; });
}

JointMarkovModel cross_copy_model(double eps) {
    auto copy = [eps](Symbol src) {
        return src == 1 ? std::vector<double>{eps, 1.0 - eps} : std::vector<double>{1.0 - eps, eps};
    };
    return first_order_model(
        2, 2, [&](Symbol, Symbol y) { return copy(y); }, [&](Symbol x, Symbol) { return copy(x); });
}

JointMarkovModel scenario_model(Scenario s, std::optional<double> epsilon) {
    switch (s) {
        case Scenario::Independent:
            return first_order_model(
                3, 3, [](Symbol x, Symbol) { return row_of(kIndepX[static_cast<std::size_t>(x)]); },
                [](Symbol, Symbol y) { return row_of(kIndepY[static_cast<std::size_t>(y)]); });
        case Scenario::Unidirectional:
            return first_order_model(
                3, 3,
                [](Symbol x, Symbol y) {
                    return row_of(kUniX[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
                },
                [](Symbol, Symbol) { return row_of(kUniY); });
        case Scenario::Bidirectional:
            return first_order_model(
                3, 3,
                [](Symbol x, Symbol y) {
                    return row_of(kBiX[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
                },
                [](Symbol x, Symbol y) {
                    return row_of(kBiY[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]);
                });
        case Scenario::CrossCopy:
            return cross_copy_model(epsilon.value_or(kDefaultCrossCopyEpsilon));
        case Scenario::IidInfluence:
            return iid_influence_model(0.9, 0.1, epsilon.value_or(kDefaultInfluenceEpsilon));
    }
    throw InputError("unknown scenario");
}

}  // namespace causalpath
