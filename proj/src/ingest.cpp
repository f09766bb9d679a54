#include "causalpath/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "causalpath/io.hpp"

namespace causalpath {

namespace {

using std::chrono::sys_days;

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        out.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::string normalize_header(std::string h) {
    for (char& c : h) {
        c = c == ' ' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return h;
}

double parse_price(const std::string& text, const std::string& where) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw InputError(where + ": cannot parse price '" + text + "'");
    }
    return v;
}

// Linear quantile (type 7) of a sorted sample.
double quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SymbolSeq slice(const SymbolSeq& s, std::size_t from, std::size_t count) {
    const auto& d = s.data();
    return SymbolSeq(s.alphabet(), std::vector<Symbol>(d.begin() + static_cast<std::ptrdiff_t>(from),
                                                       d.begin() + static_cast<std::ptrdiff_t>(from + count)));
}

}  // namespace

Date parse_date(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    const bool shape = text.size() == 10 && text[4] == '-' && text[7] == '-';
    auto num = [&](std::size_t at, std::size_t len, auto& out) {
        const char* b = text.data() + at;
        const auto [ptr, ec] = std::from_chars(b, b + len, out);
        return ec == std::errc() && ptr == b + len;
    };
    if (!shape || !num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) {
        throw InputError("bad date '" + text + "' (want YYYY-MM-DD)");
    }
    const Date out{std::chrono::year(y), std::chrono::month(m), std::chrono::day(d)};
    if (!out.ok()) {
        throw InputError("invalid calendar date '" + text + "'");
    }
    return out;
}

std::string format_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                  static_cast<unsigned>(d.day()));
    return buf;
}

PriceSeries::PriceSeries(std::vector<PricePoint> points) : points_(std::move(points)) {
    std::stable_sort(points_.begin(), points_.end(),
                     [](const PricePoint& a, const PricePoint& b) { return a.date < b.date; });
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].adj_close) || points_[i].adj_close <= 0.0) {
            throw InputError("nonpositive price on " + format_date(points_[i].date));
        }
        if (i > 0 && points_[i].date == points_[i - 1].date) {
            throw InputError("duplicate date " + format_date(points_[i].date));
        }
    }
}

std::vector<double> PriceSeries::prices() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.adj_close);
    return out;
}

std::vector<Date> PriceSeries::dates() const {
    std::vector<Date> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.date);
    return out;
}

PriceSeries parse_price_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError(source + ": empty file");
    }
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        line.erase(0, 3);
    }
    const auto header = split_csv_line(line);
    std::ptrdiff_t date_col = -1, price_col = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string h = normalize_header(header[c]);
        if (h == "date") date_col = static_cast<std::ptrdiff_t>(c);
        if (h == "adj_close") price_col = static_cast<std::ptrdiff_t>(c);
    }
    if (date_col < 0 || price_col < 0) {
        throw InputError(source + ": header needs 'date' and 'adj_close' columns");
    }
    std::vector<PricePoint> points;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        const std::string where = source + ":" + std::to_string(line_no);
        if (cells.size() <= static_cast<std::size_t>(std::max(date_col, price_col))) {
            throw InputError(where + ": too few columns");
        }
        Date date;
        try {
            date = parse_date(cells[static_cast<std::size_t>(date_col)]);
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
        points.push_back(PricePoint{date, parse_price(cells[static_cast<std::size_t>(price_col)], where)});
    }
    try {
        return PriceSeries(std::move(points));
    } catch (const InputError& e) {
        throw InputError(source + ": " + e.what());
    }
}

PriceSeries load_price_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    return parse_price_csv(in, path.string());
}

std::string_view interpolation_axis_name(InterpolationAxis a) {
    return a == InterpolationAxis::UnionIndex ? "linear-price-union-index" : "linear-price-calendar-day";
}

AlignedPrices align_calendars(const PriceSeries& a, const PriceSeries& b, InterpolationAxis axis) {
    if (a.empty() || b.empty()) {
        throw InputError("cannot align an empty price series");
    }
    const Date lo = std::max(a[0].date, b[0].date);
    const Date hi = std::min(a[a.size() - 1].date, b[b.size() - 1].date);
    if (lo > hi) {
        throw InputError("price series do not overlap in time");
    }
    std::vector<Date> all = a.dates();
    const std::vector<Date> bd = b.dates();
    all.insert(all.end(), bd.begin(), bd.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    AlignedPrices out;
    out.meta.axis = axis;
    out.meta.union_dates = all.size();

    // Position of each union date on the interpolation axis.
    auto coord = [&](std::size_t idx) {
        return axis == InterpolationAxis::UnionIndex
                   ? static_cast<double>(idx)
                   : static_cast<double>(sys_days(all[idx]).time_since_epoch().count());
    };
    // Per series: filled price at every union index, or NaN at the boundary.
    auto fill = [&](const PriceSeries& s, std::size_t& interpolated) {
        std::vector<double> v(all.size(), std::nan(""));
        std::vector<std::ptrdiff_t> known;
        std::size_t k = 0;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (k < s.size() && s[k].date == all[i]) {
                v[i] = s[k++].adj_close;
                known.push_back(static_cast<std::ptrdiff_t>(i));
            }
        }
        std::size_t next = 0;
        for (std::size_t i = 0; i < all.size(); ++i) {
            while (next < known.size() && known[next] < static_cast<std::ptrdiff_t>(i)) ++next;
            if (!std::isnan(v[i]) || next == 0 || next == known.size()) continue;
            const auto l = static_cast<std::size_t>(known[next - 1]);
            const auto r = static_cast<std::size_t>(known[next]);
            const double w = (coord(i) - coord(l)) / (coord(r) - coord(l));
            v[i] = v[l] + w * (v[r] - v[l]);
            ++interpolated;
        }
        return v;
    };
    const std::vector<double> va = fill(a, out.meta.interpolated_a);
    const std::vector<double> vb = fill(b, out.meta.interpolated_b);

    std::vector<PricePoint> pa, pb;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (std::isnan(va[i]) || std::isnan(vb[i])) {
            out.meta.trimmed.push_back(all[i]);
            continue;
        }
        out.dates.push_back(all[i]);
        pa.push_back(PricePoint{all[i], va[i]});
        pb.push_back(PricePoint{all[i], vb[i]});
    }
    out.a = PriceSeries(std::move(pa));
    out.b = PriceSeries(std::move(pb));
    return out;
}

SymbolSeq pct_change_quantize(const std::vector<double>& prices, const QuantizerSpec& spec) {
    if (!(spec.threshold > 0.0)) {
        throw InputError("quantizer threshold must be positive");
    }
    if (prices.size() < 2) {
        throw InputError("percent change needs at least two prices");
    }
    std::vector<Symbol> out;
    out.reserve(prices.size() - 1);
    for (std::size_t i = 1; i < prices.size(); ++i) {
        const double r = (prices[i] - prices[i - 1]) / prices[i - 1];
        const double excess = std::abs(r) - spec.threshold;
        const bool tie = std::abs(excess) <= spec.tie_tolerance;
        const bool moved = tie ? spec.ties == TieRule::Move : excess > 0.0;
        out.push_back(!moved ? 1 : (r < 0.0 ? 0 : 2));
    }
    return SymbolSeq(Alphabet(3), std::move(out));
}

SymbolSeq pct_change_quantize(const PriceSeries& series, const QuantizerSpec& spec) {
    return pct_change_quantize(series.prices(), spec);
}

LaggedPair lag_pair(const SymbolSeq& follower, const SymbolSeq& leader, int lag) {
    if (follower.size() != leader.size()) {
        throw InputError("follower and leader must have equal length");
    }
    if (lag < 0) {
        throw InputError("lag must be nonnegative");
    }
    const auto l = static_cast<std::size_t>(lag);
    if (l >= follower.size()) {
        throw InputError("lag leaves no aligned steps");
    }
    const std::size_t n = follower.size() - l;
    return LaggedPair{slice(follower, l, n), slice(leader, 0, n), lag};
}

LaggedPair shift_for_market_order(const SymbolSeq& follower, const SymbolSeq& leader) {
    return lag_pair(follower, leader, 1);
}

LaggedPair shift(const LaggedPair& p) {
    LaggedPair out = lag_pair(p.follower, p.leader, 1);
    out.lag = p.lag + 1;
    return out;
}

LaggedPair unshift(const LaggedPair& p) {
    if (p.lag < 1) {
        throw InputError("pair is not lagged");
    }
    if (p.follower.size() != p.leader.size() || p.size() < 2) {
        throw InputError("lagged pair too short to unshift");
    }
    const std::size_t n = p.size() - 1;
    return LaggedPair{slice(p.follower, 0, n), slice(p.leader, 1, n), p.lag - 1};
}

StateSummary summarize_by_previous_state(const CausalTrace& trace, const SymbolSeq& target, const SymbolSeq& side,
                                         std::size_t first) {
    const std::size_t n = trace.size();
    if (target.size() != n || side.size() != n) {
        throw InputError("summary sequences must match the trace length");
    }
    if (first < 2 || first > n) {
        throw InputError("summary start must be in 2..n");
    }
    const int mt = target.alphabet().size();
    const int ms = side.alphabet().size();
    std::vector<std::vector<double>> groups(static_cast<std::size_t>(mt * ms));
    for (std::size_t i = first; i <= n; ++i) {
        groups[static_cast<std::size_t>(target[i - 2] * ms + side[i - 2])].push_back(trace.estimate[i - 1]);
    }
    StateSummary out;
    out.first_step = first;
    out.plug_in_rate = plug_in_di_rate(trace);
    const double total = static_cast<double>(n - first + 1);
    for (Symbol t = 0; t < mt; ++t) {
        for (Symbol s = 0; s < ms; ++s) {
            std::vector<double>& g = groups[static_cast<std::size_t>(t * ms + s)];
            StateCell cell{t, s, g.size(), 100.0 * static_cast<double>(g.size()) / total};
            if (!g.empty()) {
                KahanSum sum;
                for (double v : g) sum.add(v);
                cell.mean = sum.value() / static_cast<double>(g.size());
                std::sort(g.begin(), g.end());
                cell.median = quantile(g, 0.5);
                cell.q1 = quantile(g, 0.25);
                cell.q3 = quantile(g, 0.75);
            }
            out.cells.push_back(cell);
        }
    }
    return out;
}

void write_state_summary(std::ostream& out, const StateSummary& summary, const std::string& direction) {
    for (const StateCell& c : summary.cells) {
        out << "state," << direction << ',' << c.target << ',' << c.side << ',' << c.count << ','
            << format_double(c.occupancy_pct) << ',';
        if (c.count > 0) {
            out << format_double(c.mean) << ',' << format_double(c.median) << ',' << format_double(c.q1) << ','
                << format_double(c.q3);
        } else {
            out << ",,,";
        }
        out << '\n';
    }
    out << "plug_in," << direction << ",,,,," << format_double(summary.plug_in_rate) << ",,,\n";
}

void write_dated_symbols(std::ostream& out, const std::vector<Date>& dates, const SymbolSeq& symbols) {
    if (dates.size() != symbols.size()) {
        throw InputError("dates and symbols differ in length");
    }
    out << "date,symbol\n";
    for (std::size_t i = 0; i < dates.size(); ++i) {
        out << format_date(dates[i]) << ',' << symbols[i] << '\n';
    }
}

}  // namespace causalpath
