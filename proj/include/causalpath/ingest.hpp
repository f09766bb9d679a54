#pragma once

// Daily price data to ternary symbol sequences: CSV loading, joint calendar
// alignment, percent-change quantization, cross-market lag alignment, and
// per-state summaries of an estimated trace.

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "causalpath/core.hpp"
#include "causalpath/measure.hpp"

namespace causalpath {

using Date = std::chrono::year_month_day;

/// Strict YYYY-MM-DD.
Date parse_date(const std::string& text);
std::string format_date(Date d);

struct PricePoint {
    Date date;
    double adj_close;
};

class PriceSeries {
public:
    PriceSeries() = default;
    /// Sorts by date; throws InputError on duplicate dates or prices that
    /// are not finite and positive.
    explicit PriceSeries(std::vector<PricePoint> points);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const std::vector<PricePoint>& points() const noexcept { return points_; }
    const PricePoint& operator[](std::size_t i) const { return points_[i]; }
    std::vector<double> prices() const;
    std::vector<Date> dates() const;

private:
    std::vector<PricePoint> points_;
};

/// Header row with (case-insensitive) "date" and "adj_close" columns; other
/// columns are ignored. "Adj Close" is accepted for "adj_close".
PriceSeries parse_price_csv(std::istream& in, const std::string& source = "<stream>");
PriceSeries load_price_csv(const std::filesystem::path& path);

enum class InterpolationAxis {
    UnionIndex,   // position in the union calendar
    CalendarDay,  // elapsed days
};

std::string_view interpolation_axis_name(InterpolationAxis a);

struct AlignmentMetadata {
    InterpolationAxis axis = InterpolationAxis::UnionIndex;
    std::size_t union_dates = 0;
    std::size_t interpolated_a = 0;
    std::size_t interpolated_b = 0;
    /// Union dates dropped because one series had no neighbor on one side.
    std::vector<Date> trimmed;
};

struct AlignedPrices {
    std::vector<Date> dates;
    PriceSeries a;
    PriceSeries b;
    AlignmentMetadata meta;
};

/// Both series on the union of their trading dates, each filled by linear
/// interpolation of price between its own neighbors. Throws InputError when
/// the date ranges do not overlap.
AlignedPrices align_calendars(const PriceSeries& a, const PriceSeries& b,
                              InterpolationAxis axis = InterpolationAxis::UnionIndex);

enum class TieRule {
    Flat,  // |r| == threshold maps to 1
    Move,  // |r| == threshold maps to 0 / 2
};

struct QuantizerSpec {
    double threshold = 0.008;
    TieRule ties = TieRule::Flat;
    /// Relative changes within this distance of the threshold count as ties,
    /// absorbing decimal-to-binary rounding of prices.
    double tie_tolerance = 1e-12;
};

/// r_i = (p_i - p_{i-1}) / p_{i-1} -> 0 (fall), 1 (flat), 2 (rise); length n - 1.
SymbolSeq pct_change_quantize(const std::vector<double>& prices, const QuantizerSpec& spec = {});
SymbolSeq pct_change_quantize(const PriceSeries& series, const QuantizerSpec& spec = {});

/// Follower and leader re-indexed so that step i pairs follower[i + lag]
/// with leader[i]: a predictor of the follower then sees the leader one
/// extra step late per unit of lag.
struct LaggedPair {
    SymbolSeq follower;
    SymbolSeq leader;
    int lag = 0;
    std::size_t size() const noexcept { return follower.size(); }
};

LaggedPair lag_pair(const SymbolSeq& follower, const SymbolSeq& leader, int lag);
/// lag_pair(follower, leader, 1): n steps become n - 1.
LaggedPair shift_for_market_order(const SymbolSeq& follower, const SymbolSeq& leader);
LaggedPair shift(const LaggedPair& p);
/// Inverse re-indexing; drops the follower's last and the leader's first step.
LaggedPair unshift(const LaggedPair& p);

/// Estimates grouped by the previous-step state (target_{i-1}, side_{i-1}).
struct StateCell {
    Symbol target = 0;
    Symbol side = 0;
    std::size_t count = 0;
    double occupancy_pct = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
};

struct StateSummary {
    std::vector<StateCell> cells;  // target-major, every state listed
    std::size_t first_step = 2;    // 1-based first step included
    double plug_in_rate = 0.0;     // over the whole trace
};

/// Steps first..n (1-based, first >= 2) of the trace, grouped by the
/// previous step of the target and side sequences the trace was built from.
StateSummary summarize_by_previous_state(const CausalTrace& trace, const SymbolSeq& target, const SymbolSeq& side,
                                         std::size_t first = 2);

inline constexpr std::string_view kStateSummaryHeader =
    "kind,direction,target_prev,side_prev,count,occupancy_pct,mean,median,q1,q3";

/// Rows for one direction (no header): one per state, then the plug-in rate.
void write_state_summary(std::ostream& out, const StateSummary& summary, const std::string& direction);

/// "date,symbol" rows.
void write_dated_symbols(std::ostream& out, const std::vector<Date>& dates, const SymbolSeq& symbols);

}  // namespace causalpath
