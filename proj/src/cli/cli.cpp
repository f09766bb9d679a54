#include "causalpath/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "causalpath/graphs.hpp"
#include "causalpath/ingest.hpp"
#include "causalpath/io.hpp"
#include "causalpath/markov.hpp"
#include "causalpath/measure.hpp"
#include "causalpath/scenarios.hpp"

namespace causalpath::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
    std::string model;
    std::string scenario;
    std::optional<double> epsilon;
    std::string x, y, z;
    std::size_t n = 1000;
    int d = 1;
    std::optional<int> k;
    std::uint64_t seed = 1;
    std::string direction = "yx";
    std::string out;
    std::string format = "csv";
    int alphabet = 0;
    // bounds
    int m = 3;
    int side = 0;
    std::optional<std::uint64_t> ref_leaves, leaves, nodes;
    // dsep
    int horizon = 4;
    // stocks
    std::string names = "x,y";
    double threshold = 0.008;
    std::string interp = "index";
    std::string ties = "flat";
    int shift_yx = 1;
    int shift_xy = 0;
    std::string summary_from;
};

struct Context {
    const std::vector<std::string>& args;
    std::ostream& out;
    std::string subcommand;
    fs::path dir;
    OutputFormat format = OutputFormat::Csv;
    json meta;
    std::vector<std::string> outputs;

    std::ofstream open(const std::string& name) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) {
            throw InputError("cannot write " + (dir / name).string());
        }
        outputs.push_back(name);
        return f;
    }

    std::string trace_ext() const { return format == OutputFormat::Csv ? ".csv" : ".jsonl"; }
};

json opt_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }
json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json opt_json(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

std::optional<JointMarkovModel> resolve_model(const Options& o) {
    if (!o.model.empty() && !o.scenario.empty()) {
        throw InputError("give either --model or --scenario, not both");
    }
    if (!o.model.empty()) {
        return load_model_file(o.model);
    }
    if (!o.scenario.empty()) {
        const auto s = parse_scenario(o.scenario);
        if (!s) {
            throw InputError("unknown scenario '" + o.scenario + "'");
        }
        return scenario_model(*s, o.epsilon);
    }
    return std::nullopt;
}

JointMarkovModel require_model(const Options& o) {
    auto m = resolve_model(o);
    if (!m) {
        throw InputError("this subcommand needs --model or --scenario");
    }
    return std::move(*m);
}

std::vector<Direction> directions(const std::string& d) {
    if (d == "both") {
        return {Direction::YtoX, Direction::XtoY};
    }
    return {d == "xy" ? Direction::XtoY : Direction::YtoX};
}

// ---------------------------------------------------------------------------

void cmd_simulate(const Options& o, Context& ctx) {
    const JointMarkovModel model = require_model(o);
    if (o.n < 1) {
        throw InputError("--n must be at least 1");
    }
    const JointPath path = simulate(model, o.n, o.seed);
    auto write = [&](const std::string& name, const SymbolSeq& s) {
        if (ctx.format == OutputFormat::Csv) {
            auto f = ctx.open(name + ".csv");
            write_symbol_csv(f, s);
        } else {
            auto f = ctx.open(name + ".jsonl");
            for (std::size_t t = 0; t < s.size(); ++t) {
                f << json{{"i", t + 1}, {"symbol", s[t]}}.dump() << '\n';
            }
        }
    };
    write("x", path.x);
    write("y", path.y);
    if (path.z) {
        write("z", *path.z);
    }
    ctx.meta["model"] = model_to_json(model);
    ctx.meta["steps"] = o.n;
    ctx.out << fmt::format("simulated {} steps (seed {}) into {}\n", o.n, o.seed, ctx.dir.string());
}

void cmd_estimate(const Options& o, Context& ctx) {
    const std::optional<JointMarkovModel> model = resolve_model(o);
    const int ax = model ? model->alphabet_x().size() : o.alphabet;
    const int ay = model ? model->alphabet_y().size() : o.alphabet;
    const SymbolSeq x = read_symbol_csv(o.x, ax);
    const SymbolSeq y = read_symbol_csv(o.y, ay);
    std::optional<SymbolSeq> z;
    if (!o.z.empty()) {
        z = read_symbol_csv(o.z, model && model->has_z() ? model->z_size() : o.alphabet);
    }
    if (model && model->has_z() != z.has_value()) {
        throw InputError("the model and the inputs disagree about a Z process");
    }
    json traces = json::object();
    for (Direction dir : directions(o.direction)) {
        EstimatorConfig cfg;
        cfg.depth = o.d;
        cfg.staleness = o.k;
        cfg.direction = dir;
        CausalTrace trace = o.k ? estimate_partial_trace(x, y, cfg, z) : estimate_causal_trace(x, y, cfg, z);
        if (model) {
            attach_truth(trace, *model, JointPath{x, y, z});
        }
        const std::string label = direction_label(dir);
        auto f = ctx.open("trace_" + label + ctx.trace_ext());
        write_trace(trace, f, ctx.format);
        json tm = trace_metadata_json(trace.meta);
        tm["plug_in_rate_bits"] = plug_in_di_rate(trace);
        tm["has_truth"] = trace.truth.has_value();
        traces[label] = tm;
        ctx.out << fmt::format("{} plug-in rate {:.6f} bits/step over {} steps (complete L={} S={}, reference L={} S={})\n",
                               label, plug_in_di_rate(trace), trace.size(), trace.meta.complete_leaves,
                               trace.meta.complete_nodes, trace.meta.reference_leaves, trace.meta.reference_nodes);
    }
    ctx.meta["traces"] = traces;
    if (model) {
        ctx.meta["model"] = model_to_json(*model);
    }
}

void cmd_bounds(const Options& o, Context& ctx) {
    if (o.m < 2) {
        throw InputError("--m must be at least 2");
    }
    if (o.d < 1) {
        throw InputError("--d must be at least 1");
    }
    if (o.n < 1) {
        throw InputError("--n must be at least 1");
    }
    const Alphabet target(o.m);
    const Alphabet side(o.side > 0 ? o.side : o.m);
    const ContextSchema complete = ContextSchema::with_side(target, target, side, o.d, 0);
    const std::uint64_t lc = o.leaves.value_or(complete.leaf_count());
    const std::uint64_t sc = o.nodes.value_or(complete.node_count());
    std::uint64_t lr = 0, sr = 0;
    if (o.k) {
        const ContextSchema stale = ContextSchema::with_side(target, target, side, o.d, *o.k);
        lr = o.ref_leaves.value_or(stale.leaf_count());
        sr = stale.node_count();
    } else {
        lr = o.ref_leaves.value_or(ContextSchema::plain(target, target, o.d).leaf_count());
    }
    for (std::uint64_t l : {lr, lc}) {
        if (o.n < l) {
            throw InputError(fmt::format("horizon n={} is below the leaf count L={}", o.n, l));
        }
    }
    const double mr = o.k ? regret_bound_side_info(o.m, lr, sr, o.n) : regret_bound_plain(o.m, lr, o.n);
    const double mc = regret_bound_side_info(o.m, lc, sc, o.n);
    ctx.out << fmt::format("M_r(n) = {:.2f} bits  [m={}, L={}{}, n={}]\n", mr, o.m, lr,
                           o.k ? fmt::format(", S={}", sr) : std::string(), o.n);
    ctx.out << fmt::format("M_c(n) = {:.2f} bits  [m={}, L={}, S={}, n={}]\n", mc, o.m, lc, sc, o.n);
    json b{{"alphabet", o.m},
           {"horizon", o.n},
           {"reference", {{"leaves", lr}, {"nodes", o.k ? json(sr) : json(nullptr)}, {"bits", mr}}},
           {"complete", {{"leaves", lc}, {"nodes", sc}, {"bits", mc}}}};
    if (!o.x.empty() || !o.y.empty()) {
        if (o.x.empty() || o.y.empty()) {
            throw InputError("a bound curve needs both --x and --y");
        }
        const SymbolSeq x = read_symbol_csv(o.x, o.alphabet);
        const SymbolSeq y = read_symbol_csv(o.y, o.alphabet);
        EstimatorConfig cfg;
        cfg.depth = o.d;
        cfg.staleness = o.k;
        cfg.direction = directions(o.direction).front();
        const CausalTrace trace = o.k ? estimate_partial_trace(x, y, cfg) : estimate_causal_trace(x, y, cfg);
        auto f = ctx.open("bound_curve.csv");
        f << "i,mc_bits,mr_bits,c_norm,bound_bits,low_regret_warning\n";
        double sq = 0.0;
        for (std::size_t t = 0; t < trace.size(); ++t) {
            sq += trace.c[t] * trace.c[t];
            const double bc = complete_regret_budget(trace.meta, t + 1);
            const double br = reference_regret_budget(trace.meta, t + 1);
            const CausalityBound cb = causality_regret_bound(bc, br, std::sqrt(sq));
            f << (t + 1) << ',' << format_double(bc) << ',' << format_double(br) << ','
              << format_double(std::sqrt(sq)) << ',' << format_double(cb.bits) << ','
              << (cb.low_regret_warning ? 1 : 0) << '\n';
        }
        b["curve_trace"] = trace_metadata_json(trace.meta);
        ctx.out << fmt::format("bound curve over {} steps written to bound_curve.csv\n", trace.size());
    }
    auto f = ctx.open("bounds.json");
    f << b.dump(2) << '\n';
    ctx.meta["bounds"] = b;
}

void cmd_dsep(const Options& o, Context& ctx) {
    const JointMarkovModel model = require_model(o);
    const MarkovicityReport r = classify_markovicity(model);
    const UnrolledDag dag = build_unrolled_network(model, o.horizon);
    json templates = json::array();
    ctx.out << "edge templates (conditional information, bits):\n";
    for (const EdgeInformation& e : edge_information(model)) {
        ctx.out << fmt::format("  {}[t-{}] -> {}[t]  {:.3e}{}\n", process_letter(e.from), e.lag,
                               process_letter(e.to), e.bits, e.present() ? "  edge" : "");
        templates.push_back({{"from", std::string(1, process_letter(e.from))},
                             {"to", std::string(1, process_letter(e.to))},
                             {"lag", e.lag},
                             {"bits", e.bits},
                             {"present", e.present()}});
    }
    std::string lags;
    for (int l : r.separating_lags) {
        lags += (lags.empty() ? "" : " ") + std::to_string(l);
    }
    ctx.out << "classification: " << markovicity_name(r.branch) << '\n'
            << "y_influences_x: " << (r.y_influences_x ? "true" : "false") << '\n'
            << fmt::format("y_dependence_bits: {:.3e} (horizon {})\n", r.y_dependence_bits, r.check_horizon)
            << "separating_lags: " << (lags.empty() ? "none" : lags) << '\n'
            << "faithfulness_caveat: " << (r.faithfulness_caveat ? "true" : "false") << '\n'
            << "unrolled graph, horizon " << o.horizon << ":\n"
            << dag.edge_list();
    {
        auto f = ctx.open("edges.txt");
        f << dag.edge_list();
    }
    json report{{"classification", markovicity_name(r.branch)},
                {"y_influences_x", r.y_influences_x},
                {"y_dependence_bits", r.y_dependence_bits},
                {"check_horizon", r.check_horizon},
                {"separating_lags", r.separating_lags},
                {"faithfulness_caveat", r.faithfulness_caveat},
                {"edge_templates", templates},
                {"graph_horizon", o.horizon},
                {"edge_count", dag.edge_count()}};
    auto f = ctx.open("dsep.json");
    f << report.dump(2) << '\n';
    ctx.meta["report"] = report;
    ctx.meta["model"] = model_to_json(model);
}

std::pair<std::string, std::string> split_names(const std::string& names) {
    const auto comma = names.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == names.size() ||
        names.find(',', comma + 1) != std::string::npos) {
        throw InputError("--names wants two labels separated by a comma");
    }
    return {names.substr(0, comma), names.substr(comma + 1)};
}

void cmd_stocks(const Options& o, Context& ctx) {
    const auto [xname, yname] = split_names(o.names);
    const PriceSeries px = load_price_csv(o.x);
    const PriceSeries py = load_price_csv(o.y);
    const InterpolationAxis axis = o.interp == "calendar" ? InterpolationAxis::CalendarDay : InterpolationAxis::UnionIndex;
    const AlignedPrices aligned = align_calendars(px, py, axis);
    if (aligned.dates.size() < 3) {
        throw InputError("fewer than three aligned trading days");
    }
    QuantizerSpec q;
    q.threshold = o.threshold;
    q.ties = o.ties == "move" ? TieRule::Move : TieRule::Flat;
    const SymbolSeq sx = pct_change_quantize(aligned.a, q);
    const SymbolSeq sy = pct_change_quantize(aligned.b, q);
    const std::vector<Date> dates(aligned.dates.begin() + 1, aligned.dates.end());
    {
        auto f = ctx.open("symbols_" + xname + ".csv");
        write_dated_symbols(f, dates, sx);
    }
    {
        auto f = ctx.open("symbols_" + yname + ".csv");
        write_dated_symbols(f, dates, sy);
    }
    std::optional<Date> from;
    if (!o.summary_from.empty()) {
        from = parse_date(o.summary_from);
    }

    struct Job {
        std::string source, target;
        const SymbolSeq* target_seq;
        const SymbolSeq* source_seq;
        int lag;
    };
    const std::vector<Job> jobs{{xname, yname, &sy, &sx, o.shift_xy}, {yname, xname, &sx, &sy, o.shift_yx}};
    std::ostringstream summary;
    summary << kStateSummaryHeader << '\n';
    json runs = json::object();
    for (const Job& job : jobs) {
        const LaggedPair pair = lag_pair(*job.target_seq, *job.source_seq, job.lag);
        EstimatorConfig cfg;
        cfg.depth = o.d;
        const CausalTrace trace = estimate_causal_trace(pair.follower, pair.leader, cfg);
        std::size_t first = 2;
        if (from) {
            // Step i (1-based) of the pair is the target's change on dates[i - 1 + lag].
            while (first <= pair.size() && dates[first - 1 + static_cast<std::size_t>(job.lag)] < *from) {
                ++first;
            }
            if (first > pair.size()) {
                throw InputError("--summary-from is after the last aligned date");
            }
        }
        const StateSummary s = summarize_by_previous_state(trace, pair.follower, pair.leader, first);
        const std::string label = job.source + "->" + job.target;
        write_state_summary(summary, s, label);
        {
            auto f = ctx.open("trace_" + job.source + "_to_" + job.target + ctx.trace_ext());
            write_trace(trace, f, ctx.format);
        }
        json tm = trace_metadata_json(trace.meta);
        tm["lag"] = job.lag;
        tm["summary_first_step"] = first;
        tm["plug_in_rate_bits"] = s.plug_in_rate;
        runs[label] = tm;
        ctx.out << fmt::format("plug-in DI {}: {:.6f} bits/step ({} steps, lag {})\n", label, s.plug_in_rate,
                               trace.size(), job.lag);
    }
    {
        auto f = ctx.open("summary.csv");
        f << summary.str();
    }
    json trimmed = json::array();
    for (Date dd : aligned.meta.trimmed) {
        trimmed.push_back(format_date(dd));
    }
    ctx.meta["alignment"] = {{"interpolation", interpolation_axis_name(axis)},
                             {"union_dates", aligned.meta.union_dates},
                             {"aligned_dates", aligned.dates.size()},
                             {"interpolated", {{xname, aligned.meta.interpolated_a}, {yname, aligned.meta.interpolated_b}}},
                             {"trimmed", trimmed}};
    ctx.meta["quantizer"] = {{"threshold", q.threshold},
                             {"ties", q.ties == TieRule::Flat ? "flat" : "move"},
                             {"tie_tolerance", q.tie_tolerance},
                             {"change", "percent"}};
    ctx.meta["directions"] = runs;
}

json config_json(const Options& o) {
    return json{{"model", o.model},
                {"scenario", o.scenario},
                {"epsilon", opt_json(o.epsilon)},
                {"x", o.x},
                {"y", o.y},
                {"z", o.z},
                {"n", o.n},
                {"d", o.d},
                {"k", opt_json(o.k)},
                {"seed", o.seed},
                {"direction", o.direction},
                {"format", o.format},
                {"alphabet", o.alphabet},
                {"m", o.m},
                {"side", o.side},
                {"ref_leaves", opt_json(o.ref_leaves)},
                {"leaves", opt_json(o.leaves)},
                {"nodes", opt_json(o.nodes)},
                {"horizon", o.horizon},
                {"names", o.names},
                {"threshold", o.threshold},
                {"interp", o.interp},
                {"ties", o.ties},
                {"shift_yx", o.shift_yx},
                {"shift_xy", o.shift_xy},
                {"summary_from", o.summary_from}};
}

// ---------------------------------------------------------------------------

void add_out(CLI::App* sub, Options& o) {
    sub->add_option("--out", o.out, "Output directory (default $CAUSALPATH_OUT, else ./causalpath-out)");
}

void add_format(CLI::App* sub, Options& o) {
    sub->add_option("--format", o.format, "csv or records (JSON lines)")
        ->check(CLI::IsMember({"csv", "records"}))
        ->capture_default_str();
}

void add_model(CLI::App* sub, Options& o) {
    sub->add_option("--model", o.model, "JSON model file");
    sub->add_option("--scenario", o.scenario, "Built-in model")
        ->check(CLI::IsMember(scenario_names()));
    sub->add_option("--epsilon", o.epsilon, "Noise parameter of cross-copy / iid-influence");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Sample-path causal influence estimation for discrete processes", "causalpath"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "Simulate a joint path from a model or scenario");
    add_model(simulate, o);
    simulate->add_option("--n", o.n, "Number of steps")->capture_default_str();
    simulate->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    add_out(simulate, o);
    add_format(simulate, o);

    auto* estimate = app.add_subcommand("estimate", "Estimate the causal measure trace from symbol files");
    estimate->add_option("--x", o.x, "X symbol CSV")->required();
    estimate->add_option("--y", o.y, "Y symbol CSV")->required();
    estimate->add_option("--z", o.z, "Optional Z symbol CSV (conditioning)");
    add_model(estimate, o);
    estimate->add_option("--d", o.d, "CTW depth")->capture_default_str()->check(CLI::PositiveNumber);
    estimate->add_option("--k", o.k, "Staleness: reference withholds the k latest side samples")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--direction", o.direction, "yx, xy or both")
        ->check(CLI::IsMember({"yx", "xy", "both"}))
        ->capture_default_str();
    estimate->add_option("--alphabet", o.alphabet, "Alphabet size when no model is given (0 infers)")
        ->capture_default_str();
    add_out(estimate, o);
    add_format(estimate, o);

    auto* bounds = app.add_subcommand("bounds", "CTW regret budgets and the causality-regret bound curve");
    bounds->add_option("--m", o.m, "Target alphabet size")->capture_default_str();
    bounds->add_option("--side", o.side, "Side alphabet size (default m)");
    bounds->add_option("--d", o.d, "Depth")->capture_default_str();
    bounds->add_option("--k", o.k, "Staleness of the reference")->check(CLI::PositiveNumber);
    bounds->add_option("--n", o.n, "Horizon")->capture_default_str();
    bounds->add_option("--ref-leaves", o.ref_leaves, "Override the reference leaf count L");
    bounds->add_option("--leaves", o.leaves, "Override the complete leaf count L");
    bounds->add_option("--nodes", o.nodes, "Override the complete node count S");
    bounds->add_option("--x", o.x, "X symbol CSV (with --y: write the bound curve)");
    bounds->add_option("--y", o.y, "Y symbol CSV");
    bounds->add_option("--direction", o.direction, "yx or xy for the curve")
        ->check(CLI::IsMember({"yx", "xy"}))
        ->capture_default_str();
    bounds->add_option("--alphabet", o.alphabet, "Alphabet size of the symbol files (0 infers)");
    add_out(bounds, o);

    auto* dsep = app.add_subcommand("dsep", "Unrolled network, d-separation and Markovicity of X");
    add_model(dsep, o);
    dsep->add_option("--horizon", o.horizon, "Time steps in the printed graph")->capture_default_str();
    add_out(dsep, o);

    auto* stocks = app.add_subcommand("stocks", "Price CSVs to symbols, both-direction estimates, per-state summary");
    stocks->add_option("--x", o.x, "Prices of the first market (date, adj_close)")->required();
    stocks->add_option("--y", o.y, "Prices of the second market")->required();
    stocks->add_option("--names", o.names, "Labels for the two markets, e.g. dj,hs")->capture_default_str();
    stocks->add_option("--threshold", o.threshold, "Quantizer threshold (fraction)")->capture_default_str();
    stocks->add_option("--interp", o.interp, "Interpolation axis: index or calendar")
        ->check(CLI::IsMember({"index", "calendar"}))
        ->capture_default_str();
    stocks->add_option("--ties", o.ties, "Threshold ties: flat or move")
        ->check(CLI::IsMember({"flat", "move"}))
        ->capture_default_str();
    stocks->add_option("--shift-yx", o.shift_yx, "Extra lag of y when measuring y -> x")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    stocks->add_option("--shift-xy", o.shift_xy, "Extra lag of x when measuring x -> y")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    stocks->add_option("--summary-from", o.summary_from, "First date (YYYY-MM-DD) in the per-state summary");
    stocks->add_option("--d", o.d, "CTW depth")->capture_default_str()->check(CLI::PositiveNumber);
    add_out(stocks, o);
    add_format(stocks, o);

    app.footer(fmt::format("Exit codes: {} ok, {} input error, {} numerical failure. Output directory "
                           "defaults to ${} or ./{}.",
                           kExitOk, kExitInput, kExitNumerical, kOutEnv, kDefaultOut));

    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        Context ctx{args, out, sub->get_name(), fs::path(o.out), OutputFormat::Csv, json::object(), {}};
        if (o.out.empty()) {
            const char* env = std::getenv(std::string(kOutEnv).c_str());
            o.out = env && *env ? env : std::string(kDefaultOut);
        }
        ctx.dir = o.out;
        ctx.format = o.format == "records" ? OutputFormat::Records : OutputFormat::Csv;
        fs::create_directories(ctx.dir);
        if (ctx.subcommand == "simulate") {
            cmd_simulate(o, ctx);
        } else if (ctx.subcommand == "estimate") {
            cmd_estimate(o, ctx);
        } else if (ctx.subcommand == "bounds") {
            cmd_bounds(o, ctx);
        } else if (ctx.subcommand == "dsep") {
            cmd_dsep(o, ctx);
        } else {
            cmd_stocks(o, ctx);
        }
        json meta{{"tool", "causalpath"},
                  {"version", kVersion},
                  {"subcommand", ctx.subcommand},
                  {"command_line", args},
                  {"config", config_json(o)},
                  {"seed", o.seed},
                  {"outputs", ctx.outputs}};
        meta.update(ctx.meta);
        std::ofstream f(ctx.dir / "metadata.json", std::ios::binary);
        f << meta.dump(2) << '\n';
        if (!f) {
            throw InputError("cannot write metadata.json");
        }
        return kExitOk;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace causalpath::cli
