#pragma once

// Built-in first-order models with pinned kernels. Acceptance tests and the
// CLI's --scenario flag both read from here, so the tables must not change.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causalpath/markov.hpp"

namespace causalpath {

enum class Scenario { Independent, Unidirectional, Bidirectional, CrossCopy, IidInfluence };

std::optional<Scenario> parse_scenario(std::string_view name);
std::string_view scenario_name(Scenario s);
std::vector<std::string> scenario_names();

inline constexpr double kDefaultCrossCopyEpsilon = 0.01;
inline constexpr double kDefaultInfluenceEpsilon = 0.1;

/// `epsilon` overrides the scenario's noise parameter where it has one
/// (cross-copy, iid-influence); other scenarios ignore it.
JointMarkovModel scenario_model(Scenario s, std::optional<double> epsilon = std::nullopt);

/// Order-1 model from per-(x, y) rows of each process.
using RowFn = std::function<std::vector<double>(Symbol x, Symbol y)>;
JointMarkovModel first_order_model(int mx, int my, const RowFn& x_row, const RowFn& y_row);

/// X_i ~ Bern(p1) if y_{i-1} = 1, Bern(p2) otherwise; Y i.i.d. Bern(eps).
JointMarkovModel iid_influence_model(double p1, double p2, double eps);

/// X_i = y_{i-1} and Y_i = x_{i-1}, each flipped with probability eps.
JointMarkovModel cross_copy_model(double eps);

}  // namespace causalpath
