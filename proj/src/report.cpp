#include "zslab/report.hpp"

#include <algorithm>

#include "zslab/version.hpp"

namespace zslab {

OrderedJson make_manifest(const RunInfo& info) {
  OrderedJson m;
  m["command"] = info.command;
  m["n"] = info.n;
  m["weights"] = info.weights;
  m["mode"] = info.mode;
  m["version"] = kVersion;
  if (info.seed) {
    m["seed"] = *info.seed;
  } else {
    m["seed"] = nullptr;
  }
  m["nodes"] = info.nodes;
  if (info.exhaustive) m["exhaustive"] = *info.exhaustive;
  m["wall_ms"] = info.wall_ms;
  return m;
}

OrderedJson constant_report(const ConstantResult& result, const Prediction& prediction,
                            const RunInfo& info) {
  OrderedJson doc;
  doc["kind"] = "constant";
  doc["n"] = info.n;
  doc["weights"] = info.weights;
  doc["mode"] = std::string(1, mode_letter(result.mode));
  doc["value"] = result.value;
  if (result.certificate) {
    doc["certificate"] = to_string(*result.certificate);
  }
  doc["exhaustive"] = result.exhaustive;
  OrderedJson stats;
  stats["nodes"] = result.nodes;
  if (prediction.covered()) {
    OrderedJson pred;
    if (prediction.d) pred["D"] = *prediction.d;
    if (prediction.c) pred["C"] = *prediction.c;
    pred["hypothesis"] = prediction.hypothesis;
    stats["prediction"] = pred;
  } else {
    stats["prediction"] = prediction.hypothesis;
  }
  doc["stats"] = stats;
  doc["manifest"] = make_manifest(info);
  return doc;
}

OrderedJson check_report(const Sequence& s, ZeroSumMode mode,
                         const std::optional<Witness>& witness, const RunInfo& info) {
  OrderedJson doc;
  doc["kind"] = "check";
  doc["n"] = info.n;
  doc["weights"] = info.weights;
  doc["mode"] = std::string(1, mode_letter(mode));
  doc["sequence"] = to_string(s);
  doc["verdict"] = witness ? "zero-sum" : "zero-sum-free";
  if (witness) {
    OrderedJson w;
    OrderedJson idx = OrderedJson::array();
    OrderedJson wts = OrderedJson::array();
    for (auto i : witness->indices) idx.push_back(i + 1);  // 1-based for humans
    for (auto a : witness->weights) wts.push_back(a);
    w["positions"] = idx;
    w["weights"] = wts;
    doc["witness"] = w;
  }
  OrderedJson stats;
  stats["length"] = s.terms.size();
  stats["certified_bound"] =
      witness ? 0 : static_cast<std::uint64_t>(s.terms.size()) + 1;
  doc["stats"] = stats;
  doc["manifest"] = make_manifest(info);
  return doc;
}

OrderedJson weights_report(const WeightSet& w, const RunInfo& info) {
  OrderedJson doc;
  doc["kind"] = "weights";
  doc["n"] = info.n;
  doc["weights"] = info.weights;
  doc["mode"] = "";
  std::string members;
  bool first = true;
  w.members().for_each([&](std::uint32_t r) {
    if (!first) members += ',';
    members += std::to_string(r);
    first = false;
  });
  doc["members"] = members;
  OrderedJson stats;
  stats["size"] = w.size();
  stats["subgroup"] = w.is_group();
  const std::uint32_t phi = units(w.modulus()).size();
  stats["units_size"] = phi;
  if (w.is_group() && w.size() > 0 && phi % w.size() == 0) {
    stats["index_in_units"] = phi / w.size();
  }
  if (w.is_group()) {
    stats["orbit_count"] = OrbitTable::build(w).orbit_count();
  }
  doc["stats"] = stats;
  doc["manifest"] = make_manifest(info);
  return doc;
}

OrderedJson theorem_report(const TheoremReport& report, const RunInfo& info) {
  OrderedJson doc;
  doc["kind"] = "verify";
  doc["n"] = report.n;
  doc["weights"] = info.weights;
  doc["mode"] = info.mode;
  doc["id"] = report.id;
  if (report.p_prime) doc["p"] = *report.p_prime;
  doc["verdict"] = verdict_name(report.verdict);
  OrderedJson cex = OrderedJson::array();
  for (const auto& s : report.counterexamples) cex.push_back(to_string(s));
  doc["counterexamples"] = cex;
  doc["counterexample_total"] = report.counterexample_total;
  OrderedJson stats;
  for (const auto& [k, v] : report.stats) stats[k] = v;
  doc["stats"] = stats;
  doc["manifest"] = make_manifest(info);
  return doc;
}

OrderedJson extremal_report(const ExtremalFamily& family, std::uint64_t listed_limit,
                            const RunInfo& info) {
  OrderedJson doc;
  doc["kind"] = "extremal";
  doc["n"] = family.n;
  doc["weights"] = family.weights_label;
  doc["mode"] = std::string(1, mode_letter(family.mode));
  doc["length"] = family.length;
  doc["strategy"] =
      family.strategy == EnumStrategy::kCanonical ? "canonical" : "full";
  doc["complete"] = family.complete;
  OrderedJson seqs = OrderedJson::array();
  std::uint64_t listed = 0;
  family.for_each_sequence([&](const std::vector<std::uint32_t>& t) {
    if (listed >= listed_limit) return;
    seqs.push_back(to_string(Sequence{family.n, t}));
    ++listed;
  });
  doc["sequences"] = seqs;
  OrderedJson stats;
  stats["total"] = family.total_count();
  stats["classes"] =
      family.strategy == EnumStrategy::kCanonical ? family.classes.size() : 0;
  stats["listed"] = listed;
  stats["nodes"] = family.nodes;
  doc["stats"] = stats;
  doc["manifest"] = make_manifest(info);
  return doc;
}

namespace {

void render_table_row(std::string& out, const std::string& key,
                      const std::string& value, std::size_t width) {
  out += key;
  out.append(width > key.size() ? width - key.size() : 1, ' ');
  out += value;
  out += '\n';
}

std::string scalar_to_string(const OrderedJson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string emit_report(const OrderedJson& report, OutputFormat format) {
  if (format == OutputFormat::kJson) return report.dump(2) + "\n";
  if (format == OutputFormat::kJsonl) return report.dump() + "\n";

  // Aligned two-column table; nested objects flattened one level.
  std::vector<std::pair<std::string, std::string>> rows;
  for (auto it = report.begin(); it != report.end(); ++it) {
    if (it.value().is_object()) {
      for (auto inner = it.value().begin(); inner != it.value().end(); ++inner) {
        rows.emplace_back(it.key() + "." + inner.key(), scalar_to_string(inner.value()));
      }
    } else if (it.value().is_array()) {
      std::string joined;
      for (const auto& e : it.value()) {
        if (!joined.empty()) joined += "; ";
        joined += scalar_to_string(e);
      }
      rows.emplace_back(it.key(), "[" + joined + "]");
    } else {
      rows.emplace_back(it.key(), scalar_to_string(it.value()));
    }
  }
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  width += 2;
  std::string out;
  for (const auto& [k, v] : rows) render_table_row(out, k, v, width);
  return out;
}

OrderedJson strip_volatile(OrderedJson doc) {
  if (doc.is_object()) {
    doc.erase("wall_ms");
    for (auto& [key, value] : doc.items()) {
      value = strip_volatile(value);
    }
  } else if (doc.is_array()) {
    for (auto& value : doc) value = strip_volatile(value);
  }
  return doc;
}

}  // namespace zslab
