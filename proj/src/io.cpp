#include "causalpath/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace causalpath {

using nlohmann::json;

namespace {

std::vector<JointSymbol> parse_window(const json& w, int order, bool has_z) {
    if (!w.is_array() || static_cast<int>(w.size()) != order) {
        throw InputError("window must list exactly " + std::to_string(order) + " joint symbols");
    }
    std::vector<JointSymbol> out;
    for (const json& s : w) {
        const std::size_t want = has_z ? 3 : 2;
        if (!s.is_array() || s.size() != want) {
            throw InputError("each window entry must be [x, y" + std::string(has_z ? ", z]" : "]"));
        }
        out.push_back(JointSymbol{s[0].get<int>(), s[1].get<int>(), has_z ? s[2].get<int>() : 0});
    }
    return out;
}

json window_json(const JointMarkovModel& m, std::size_t code) {
    json w = json::array();
    for (const JointSymbol& s : m.window_symbols(code)) {
        w.push_back(m.has_z() ? json::array({s.x, s.y, s.z}) : json::array({s.x, s.y}));
    }
    return w;
}

json probs_json(const ProbDist& p) { return json(std::vector<double>(p.probs().begin(), p.probs().end())); }

}  // namespace

JointMarkovModel model_from_json(const json& j) {
    try {
        const int order = j.at("order").get<int>();
        const Alphabet ax(j.at("alphabet_x").get<int>());
        const Alphabet ay(j.at("alphabet_y").get<int>());
        std::optional<Alphabet> az;
        if (j.contains("alphabet_z")) {
            az = Alphabet(j.at("alphabet_z").get<int>());
        }
        if (order < 1 || order > 8) {
            throw InputError("model order must be between 1 and 8");
        }
        const int joint = ax.size() * ay.size() * (az ? az->size() : 1);
        std::size_t windows = 1;
        for (int i = 0; i < order; ++i) {
            windows *= static_cast<std::size_t>(joint);
            if (windows > (std::size_t{1} << 20)) {
                throw InstanceTooLarge("model has too many windows");
            }
        }
        // Codes computed here to avoid needing a model before the kernel exists.
        auto code_of = [&](const std::vector<JointSymbol>& w) {
            std::size_t code = 0;
            for (const JointSymbol& s : w) {
                if (!ax.contains(s.x) || !ay.contains(s.y) || s.z < 0 || s.z >= (az ? az->size() : 1)) {
                    throw InputError("window symbol outside declared alphabets");
                }
                code = code * static_cast<std::size_t>(joint) +
                       static_cast<std::size_t>((s.x * ay.size() + s.y) * (az ? az->size() : 1) + s.z);
            }
            return code;
        };
        std::vector<std::optional<KernelRow>> rows(windows);
        for (const json& entry : j.at("kernel")) {
            const std::size_t code = code_of(parse_window(entry.at("window"), order, az.has_value()));
            if (rows[code]) {
                throw InputError("kernel lists a window twice");
            }
            std::optional<ProbDist> z;
            if (az) {
                z = ProbDist(*az, entry.at("z").get<std::vector<double>>());
            }
            rows[code] = KernelRow{ProbDist(ax, entry.at("x").get<std::vector<double>>()),
                                   ProbDist(ay, entry.at("y").get<std::vector<double>>()), z};
        }
        std::vector<KernelRow> kernel;
        kernel.reserve(windows);
        for (auto& r : rows) {
            if (!r) {
                throw InputError("kernel is missing a window");
            }
            kernel.push_back(std::move(*r));
        }
        std::optional<std::vector<double>> initial;
        if (j.contains("initial")) {
            initial.emplace(windows, 0.0);
            for (const json& entry : j.at("initial")) {
                (*initial)[code_of(parse_window(entry.at("window"), order, az.has_value()))] +=
                    entry.at("p").get<double>();
            }
        }
        return JointMarkovModel(order, ax, ay, az, std::move(kernel), std::move(initial));
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed model description: ") + e.what());
    }
}

json model_to_json(const JointMarkovModel& model) {
    json j;
    j["order"] = model.order();
    j["alphabet_x"] = model.alphabet_x().size();
    j["alphabet_y"] = model.alphabet_y().size();
    if (model.has_z()) {
        j["alphabet_z"] = model.alphabet_z()->size();
    }
    json kernel = json::array();
    for (std::size_t w = 0; w < model.window_count(); ++w) {
        const KernelRow& r = model.row(w);
        json e{{"window", window_json(model, w)}, {"x", probs_json(r.x)}, {"y", probs_json(r.y)}};
        if (r.z) {
            e["z"] = probs_json(*r.z);
        }
        kernel.push_back(std::move(e));
    }
    j["kernel"] = std::move(kernel);
    if (!model.initial_is_stationary()) {
        json init = json::array();
        for (std::size_t w = 0; w < model.window_count(); ++w) {
            if (model.initial()[w] > 0.0) {
                init.push_back(json{{"window", window_json(model, w)}, {"p", model.initial()[w]}});
            }
        }
        j["initial"] = std::move(init);
    }
    return j;
}

JointMarkovModel load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open model file " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("model file " + path.string() + " is not valid JSON: " + e.what());
    }
    return model_from_json(j);
}

std::string format_double(double v) { return fmt::format("{}", v); }

void write_trace(const CausalTrace& trace, std::ostream& out, OutputFormat format) {
    const std::vector<double> bound = cumulative_bound(trace);
    std::vector<double> err;
    if (trace.truth) {
        err = realized_causality_regret(trace);
    }
    if (format == OutputFormat::Csv) {
        out << "i,estimate_bits,truth_bits,c_i,cum_abs_err,cum_bound\n";
        for (std::size_t t = 0; t < trace.size(); ++t) {
            out << (t + 1) << ',' << format_double(trace.estimate[t]) << ','
                << (trace.truth ? format_double((*trace.truth)[t]) : "") << ',' << format_double(trace.c[t]) << ','
                << (trace.truth ? format_double(err[t]) : "") << ',' << format_double(bound[t]) << '\n';
        }
        return;
    }
    for (std::size_t t = 0; t < trace.size(); ++t) {
        json row{{"i", t + 1},
                 {"estimate_bits", trace.estimate[t]},
                 {"truth_bits", trace.truth ? json((*trace.truth)[t]) : json(nullptr)},
                 {"c_i", trace.c[t]},
                 {"cum_abs_err", trace.truth ? json(err[t]) : json(nullptr)},
                 {"cum_bound", bound[t]}};
        out << row.dump() << '\n';
    }
}

json trace_metadata_json(const TraceMetadata& meta) {
    json j{{"direction", direction_label(meta.config.direction)},
           {"depth", meta.config.depth},
           {"staleness", meta.config.staleness ? json(*meta.config.staleness) : json(nullptr)},
           {"staleness_collapsed", meta.staleness_collapsed},
           {"horizon", meta.horizon},
           {"target_alphabet", meta.target_alphabet},
           {"side_alphabet", meta.side_alphabet},
           {"conditioning_alphabet", meta.conditioning_alphabet},
           {"complete_predictor", {{"leaves", meta.complete_leaves}, {"nodes", meta.complete_nodes}}},
           {"reference_predictor",
            {{"leaves", meta.reference_leaves},
             {"nodes", meta.reference_nodes},
             {"kind", meta.reference_has_side ? "stale" : "restricted"}}},
           {"units", "bits"},
           {"normalization", "cum_abs_err and cum_bound are cumulative; divide both by i to normalize"},
           {"bound_assumption", "cum_bound presumes both reference classes contain the optimal predictors"}};
    return j;
}

void write_symbol_csv(std::ostream& out, const SymbolSeq& seq, const std::string& index_label,
                      const std::vector<std::string>* labels) {
    if (labels && labels->size() != seq.size()) {
        throw InputError("symbol labels do not match sequence length");
    }
    out << index_label << ",symbol\n";
    for (std::size_t t = 0; t < seq.size(); ++t) {
        if (labels) {
            out << (*labels)[t];
        } else {
            out << (t + 1);
        }
        out << ',' << seq[t] << '\n';
    }
}

SymbolSeq read_symbol_csv(const std::filesystem::path& path, int alphabet_size) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open symbol file " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError("symbol file " + path.string() + " is empty");
    }
    const auto comma = line.rfind(',');
    if (line.substr(comma == std::string::npos ? 0 : comma + 1) != "symbol") {
        throw InputError("symbol file " + path.string() + " must have a 'symbol' last column");
    }
    std::vector<Symbol> data;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto c = line.rfind(',');
        const std::string field = line.substr(c == std::string::npos ? 0 : c + 1);
        try {
            std::size_t used = 0;
            const int s = std::stoi(field, &used);
            if (used != field.size()) {
                throw std::invalid_argument(field);
            }
            data.push_back(s);
        } catch (const std::exception&) {
            throw InputError("symbol file " + path.string() + " row " + std::to_string(row) + ": bad symbol '" +
                             field + "'");
        }
    }
    if (alphabet_size <= 0) {
        alphabet_size = 2;
        for (Symbol v : data) {
            alphabet_size = std::max(alphabet_size, v + 1);
        }
    }
    return SymbolSeq(Alphabet(alphabet_size), std::move(data));
}

}  // namespace causalpath
