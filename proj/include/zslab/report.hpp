#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "zslab/constants.hpp"
#include "zslab/extremal.hpp"
#include "zslab/zerosum.hpp"

namespace zslab {

using OrderedJson = nlohmann::ordered_json;

enum class OutputFormat { kTable, kJson, kJsonl };

/// Inputs and run facts recorded with every report. The wall-clock field is
/// the only part excluded from determinism comparisons.
struct RunInfo {
  std::string command;  // normalized: semantic flags only
  std::uint32_t n = 0;
  std::string weights;
  std::string mode;  // "D", "C", or ""
  std::optional<std::uint64_t> seed;
  std::uint64_t nodes = 0;
  std::optional<bool> exhaustive;
  double wall_ms = 0;
};

OrderedJson make_manifest(const RunInfo& info);

OrderedJson constant_report(const ConstantResult& result, const Prediction& prediction,
                            const RunInfo& info);
OrderedJson check_report(const Sequence& s, ZeroSumMode mode,
                         const std::optional<Witness>& witness, const RunInfo& info);
OrderedJson weights_report(const WeightSet& w, const RunInfo& info);
OrderedJson theorem_report(const TheoremReport& report, const RunInfo& info);
OrderedJson extremal_report(const ExtremalFamily& family, std::uint64_t listed_limit,
                            const RunInfo& info);

/// Renders a report: pretty JSON, aligned two-column table, or JSONL (the
/// report object on a single line; enumeration sequences stream separately).
std::string emit_report(const OrderedJson& report, OutputFormat format);

/// Removes volatile fields (wall_ms) recursively; what determinism tests and
/// the cache compare and store.
OrderedJson strip_volatile(OrderedJson doc);

}  // namespace zslab
