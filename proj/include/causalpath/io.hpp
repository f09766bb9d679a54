#pragma once

// File formats: JSON model descriptions, trace exports, symbol CSVs.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "causalpath/markov.hpp"
#include "causalpath/measure.hpp"

namespace causalpath {

/// Model file:
///   {"order": d, "alphabet_x": m, "alphabet_y": m, "alphabet_z": m (optional),
///    "kernel": [{"window": [[x, y(, z)], ...oldest first], "x": [...], "y": [...], "z": [...]}],
///    "initial": [{"window": [...], "p": prob}] (optional; default stationary)}
/// Every window must appear exactly once in "kernel".
JointMarkovModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const JointMarkovModel& model);
JointMarkovModel load_model_file(const std::filesystem::path& path);

enum class OutputFormat { Csv, Records };

/// Columns i, estimate_bits, truth_bits, c_i, cum_abs_err, cum_bound. Missing
/// truth leaves truth_bits and cum_abs_err empty (null in records).
void write_trace(const CausalTrace& trace, std::ostream& out, OutputFormat format);

nlohmann::json trace_metadata_json(const TraceMetadata& meta);

/// "i,symbol" rows (or any first column label), symbol in the last column.
/// alphabet_size <= 0 infers max(2, largest symbol + 1).
void write_symbol_csv(std::ostream& out, const SymbolSeq& seq, const std::string& index_label = "i",
                      const std::vector<std::string>* labels = nullptr);
SymbolSeq read_symbol_csv(const std::filesystem::path& path, int alphabet_size);

/// Shortest round-trip decimal text for a double.
std::string format_double(double v);

}  // namespace causalpath
