#include "zslab/cli.hpp"

#include <chrono>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "zslab/cache.hpp"
#include "zslab/report.hpp"
#include "zslab/version.hpp"

namespace zslab {

namespace {

using Clock = std::chrono::steady_clock;

struct CommonOpts {
  std::uint32_t n = 0;
  std::string weights = "U";
  std::string mode = "D";
  std::string format = "table";
  bool json = false;
  bool exploratory = false;
  std::uint64_t max_nodes = kDefaultMaxNodes;
  double max_seconds = 0;
  std::uint32_t depth_cap = 0;
  unsigned threads = 0;
  std::optional<std::string> cache_dir;
  bool no_cache = false;
};

void add_budget_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--max-nodes", o.max_nodes, "node budget for the search");
  cmd->add_option("--max-seconds", o.max_seconds,
                  "wall-clock budget (non-exhaustive results may vary run to run)");
  cmd->add_option("--depth-cap", o.depth_cap, "hard cap on the search depth");
  cmd->add_option("--threads", o.threads,
                  "root-branch parallelism (default: ZSLAB_THREADS or cores)");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"table", "json", "jsonl"}));
  cmd->add_flag("--json", o.json, "shorthand for --format json");
  cmd->add_option("--cache-dir", o.cache_dir,
                  "report cache directory (default: ZSLAB_CACHE)");
  cmd->add_flag("--no-cache", o.no_cache, "bypass the report cache");
}

OutputFormat resolve_format(const CommonOpts& o) {
  if (o.json) return OutputFormat::kJson;
  if (o.format == "json") return OutputFormat::kJson;
  if (o.format == "jsonl") return OutputFormat::kJsonl;
  return OutputFormat::kTable;
}

SearchBudget make_budget(const CommonOpts& o) {
  SearchBudget b;
  b.max_nodes = o.max_nodes;
  b.max_seconds = o.max_seconds;
  if (o.depth_cap > 0) b.depth_cap = o.depth_cap;
  return b;
}

std::string budget_suffix(const CommonOpts& o) {
  std::string s;
  if (o.max_nodes != kDefaultMaxNodes) s += " --max-nodes " + std::to_string(o.max_nodes);
  if (o.max_seconds > 0) s += " --max-seconds " + std::to_string(o.max_seconds);
  if (o.depth_cap > 0) s += " --depth-cap " + std::to_string(o.depth_cap);
  return s;
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// The named weight sets come with theorem coverage; anything outside runs
// only under --exploratory. Custom sets have no theorems and are not gated.
void gate_hypotheses(const WeightSet& w, bool exploratory) {
  if (exploratory || w.kind() == WeightKind::kCustom) return;
  auto pred = predicted_constants(w);
  if (!pred.covered()) {
    throw std::invalid_argument("modulus outside the theorem hypotheses (" +
                                pred.hypothesis + "); use explore or --exploratory");
  }
}

struct Emitter {
  std::ostream& out;
  OutputFormat format;
  std::optional<DiskCache> cache;
  std::string key;

  // Returns the cached payload if one matches, refreshing its timing field.
  std::optional<OrderedJson> fetch(double wall_ms) {
    if (!cache) return std::nullopt;
    auto hit = cache->load(key);
    if (!hit) return std::nullopt;
    if (hit->contains("manifest")) (*hit)["manifest"]["wall_ms"] = wall_ms;
    return hit;
  }

  void emit_fresh(const OrderedJson& doc) {
    if (cache) cache->store(key, strip_volatile(doc));
    out << emit_report(doc, format);
  }
  void emit_cached(const OrderedJson& doc) { out << emit_report(doc, format); }
};

ZeroSumMode parse_mode(const std::string& mode) {
  if (mode == "D") return ZeroSumMode::kSubsequence;
  if (mode == "C") return ZeroSumMode::kConsecutive;
  throw std::invalid_argument("mode must be D or C");
}

int run_constant(const CommonOpts& o, std::ostream& out, bool exploratory_kind) {
  const auto start = Clock::now();
  const auto mod = Modulus::factorize(o.n);
  const auto w = parse_weight_set(o.weights, mod);
  if (!exploratory_kind) gate_hypotheses(w, o.exploratory);
  if (w.size() == 0) throw std::invalid_argument("weight set is empty");
  const auto mode = parse_mode(o.mode);

  const std::string verb = exploratory_kind ? "explore constant" : "constant";
  std::string command = verb + " --n " + std::to_string(o.n) + " --weights " +
                        o.weights + " --mode " + o.mode + budget_suffix(o);
  Emitter emitter{out, resolve_format(o),
                  DiskCache::resolve(o.cache_dir, o.no_cache), command + "|" + kVersion};

  if (auto hit = emitter.fetch(ms_since(start))) {
    emitter.emit_cached(*hit);
    if (exploratory_kind) return 1;
    return (*hit)["exhaustive"].get<bool>() ? 0 : 1;
  }

  auto result = zero_sum_constant(w, mode, make_budget(o), o.threads);
  RunInfo info;
  info.command = command;
  info.n = o.n;
  info.weights = o.weights;
  info.mode = o.mode;
  info.nodes = result.nodes;
  info.exhaustive = result.exhaustive;
  info.wall_ms = ms_since(start);
  auto doc = constant_report(result, predicted_constants(w), info);
  if (exploratory_kind) doc["kind"] = "explore";
  emitter.emit_fresh(doc);
  if (exploratory_kind) return 1;
  return result.exhaustive ? 0 : 1;
}

int run_check(const CommonOpts& o, const std::string& sequence_text, std::ostream& out) {
  const auto start = Clock::now();
  const auto mod = Modulus::factorize(o.n);
  const auto w = parse_weight_set(o.weights, mod);
  const auto mode = parse_mode(o.mode);
  const auto seq = parse_sequence(sequence_text, o.n);
  auto witness = find_zero_sum(seq, w, mode);

  RunInfo info;
  info.command = "check --n " + std::to_string(o.n) + " --weights " + o.weights +
                 " --mode " + o.mode + " --sequence " + sequence_text;
  info.n = o.n;
  info.weights = o.weights;
  info.mode = o.mode;
  info.wall_ms = ms_since(start);
  out << emit_report(check_report(seq, mode, witness, info), resolve_format(o));
  return witness ? 0 : 1;
}

int run_weights(const CommonOpts& o, std::ostream& out) {
  const auto start = Clock::now();
  const auto mod = Modulus::factorize(o.n);
  const auto w = parse_weight_set(o.weights, mod);
  std::string command = "weights --n " + std::to_string(o.n) + " --weights " + o.weights;
  Emitter emitter{out, resolve_format(o),
                  DiskCache::resolve(o.cache_dir, o.no_cache), command + "|" + kVersion};
  if (auto hit = emitter.fetch(ms_since(start))) {
    emitter.emit_cached(*hit);
    return 0;
  }
  RunInfo info;
  info.command = command;
  info.n = o.n;
  info.weights = o.weights;
  info.wall_ms = ms_since(start);
  emitter.emit_fresh(weights_report(w, info));
  return 0;
}

struct VerifyFlags {
  std::string theorem;
  std::string lemma;
  std::uint32_t p = 0;
  std::uint32_t p2 = 0;
  std::uint32_t d = 0;
  std::uint32_t m1 = 0;
  std::string lemma_weights;
  std::uint32_t length = 3;
  std::uint64_t samples = 100'000;
  std::uint64_t exhaustive_limit = 2'000'000;
  std::uint64_t expand_limit = 4'000'000;
  std::uint64_t seed = kDefaultSeed;
  std::uint32_t max_counterexamples = 10;
};

// Weight label and mode shown in a theorem report.
std::pair<std::string, std::string> theorem_surface(const std::string& id,
                                                    std::uint32_t p) {
  const std::string lp = "L:" + std::to_string(p);
  if (id == "dexts" || id == "dexts2") return {"S", "D"};
  if (id == "cexts") return {"S", "C"};
  if (id == "dextl" || id == "extl3" || id == "extl2") return {lp, "D"};
  if (id == "cextl" || id == "lext2") return {lp, "C"};
  if (id == "qp_remark") return {"Q", ""};
  return {"", ""};
}

int run_verify(const CommonOpts& o, const VerifyFlags& vf, std::ostream& out) {
  const auto start = Clock::now();
  if (vf.theorem.empty() == vf.lemma.empty()) {
    throw std::invalid_argument("verify needs exactly one of --theorem / --lemma");
  }
  VerifyOptions options;
  options.budget = make_budget(o);
  options.max_counterexamples = vf.max_counterexamples;
  options.exploratory = o.exploratory;
  options.expand_limit = vf.expand_limit;
  options.samples = vf.samples;
  options.exhaustive_limit = vf.exhaustive_limit;
  options.seed = vf.seed;
  options.sequence_length = vf.length;

  std::string command = "verify";
  TheoremReport report;
  std::string weights_label, mode_label;
  if (!vf.theorem.empty()) {
    command += " --theorem " + vf.theorem + " --n " + std::to_string(o.n);
    if (vf.p) command += " --p " + std::to_string(vf.p);
    command += budget_suffix(o);
    if (vf.max_counterexamples != 10) {
      command += " --max-counterexamples " + std::to_string(vf.max_counterexamples);
    }
    if (vf.expand_limit != 4'000'000) {
      command += " --expand-limit " + std::to_string(vf.expand_limit);
    }
    std::tie(weights_label, mode_label) = theorem_surface(vf.theorem, vf.p);
  } else {
    command += " --lemma " + vf.lemma + " --n " + std::to_string(o.n);
    if (vf.p) command += " --p " + std::to_string(vf.p);
    if (vf.p2) command += " --p2 " + std::to_string(vf.p2);
    if (vf.d) command += " --d " + std::to_string(vf.d);
    if (vf.m1) command += " --m1 " + std::to_string(vf.m1);
    if (!vf.lemma_weights.empty()) command += " --weights " + vf.lemma_weights;
    command += " --length " + std::to_string(vf.length) + " --samples " +
               std::to_string(vf.samples) + " --seed " + std::to_string(vf.seed) +
               " --exhaustive-limit " + std::to_string(vf.exhaustive_limit);
    weights_label = vf.lemma_weights;
  }

  Emitter emitter{out, resolve_format(o),
                  DiskCache::resolve(o.cache_dir, o.no_cache), command + "|" + kVersion};
  if (auto hit = emitter.fetch(ms_since(start))) {
    emitter.emit_cached(*hit);
    return (*hit)["verdict"] == "verified" ? 0 : 1;
  }

  if (!vf.theorem.empty()) {
    report = verify_theorem(vf.theorem, o.n,
                            vf.p ? std::optional<std::uint32_t>(vf.p) : std::nullopt,
                            options);
  } else {
    LemmaParams params;
    params.n = o.n;
    if (vf.d) params.d = vf.d;
    if (vf.p) params.p_prime = vf.p;
    if (vf.p2) params.p = vf.p2;
    if (vf.m1) params.m1 = vf.m1;
    if (!vf.lemma_weights.empty()) params.weights = vf.lemma_weights;
    report = verify_lemma(vf.lemma, params, options);
  }

  RunInfo info;
  info.command = command;
  info.n = o.n;
  info.weights = weights_label;
  info.mode = mode_label;
  info.seed = report.seed;
  info.nodes = report.nodes;
  info.exhaustive = report.complete;
  info.wall_ms = ms_since(start);
  emitter.emit_fresh(theorem_report(report, info));
  return report.verdict == Verdict::kVerified ? 0 : 1;
}

int run_extremal(const CommonOpts& o, std::uint32_t length_flag,
                 const std::string& strategy_flag, std::uint64_t limit,
                 std::ostream& out) {
  const auto start = Clock::now();
  const auto mod = Modulus::factorize(o.n);
  const auto w = parse_weight_set(o.weights, mod);
  gate_hypotheses(w, o.exploratory);
  const auto mode = parse_mode(o.mode);
  const auto strategy =
      strategy_flag == "full" ? EnumStrategy::kFull : EnumStrategy::kCanonical;
  const auto format = resolve_format(o);

  std::uint64_t constant_nodes = 0;
  std::uint32_t length = length_flag;
  if (length == 0) {
    auto c = zero_sum_constant(w, mode, make_budget(o), o.threads);
    constant_nodes = c.nodes;
    if (!c.exhaustive) {
      throw std::runtime_error(
          "constant search did not complete; pass --length explicitly");
    }
    if (c.value < 2) {
      throw std::runtime_error("no extremal sequences exist (constant is 1)");
    }
    length = c.value - 1;
  }

  std::string command = "extremal --n " + std::to_string(o.n) + " --weights " +
                        o.weights + " --mode " + o.mode + " --length " +
                        std::to_string(length) + " --strategy " + strategy_flag +
                        " --limit " + std::to_string(limit) + budget_suffix(o);
  Emitter emitter{out, format, DiskCache::resolve(o.cache_dir, o.no_cache),
                  command + "|" + kVersion};
  if (format != OutputFormat::kJsonl) {
    if (auto hit = emitter.fetch(ms_since(start))) {
      emitter.emit_cached(*hit);
      return (*hit)["complete"].get<bool>() ? 0 : 1;
    }
  }

  auto family = enumerate_extremal(w, mode, length, strategy, make_budget(o));
  family.nodes += constant_nodes;

  RunInfo info;
  info.command = command;
  info.n = o.n;
  info.weights = o.weights;
  info.mode = o.mode;
  info.nodes = family.nodes;
  info.exhaustive = family.complete;
  info.wall_ms = ms_since(start);

  if (format == OutputFormat::kJsonl) {
    // One sequence per line, report trailer last.
    std::uint64_t streamed = 0;
    family.for_each_sequence([&](const std::vector<std::uint32_t>& t) {
      OrderedJson line;
      line["sequence"] = to_string(Sequence{family.n, t});
      out << line.dump() << "\n";
      ++streamed;
    });
    auto doc = extremal_report(family, 0, info);
    doc.erase("sequences");
    doc["stats"]["listed"] = streamed;
    out << doc.dump() << "\n";
    return family.complete ? 0 : 1;
  }

  emitter.emit_fresh(extremal_report(family, limit, info));
  return family.complete ? 0 : 1;
}

int run_conjecture(const CommonOpts& o, std::uint32_t max_length, std::ostream& out) {
  const auto start = Clock::now();
  const auto mod = Modulus::factorize(o.n);
  auto s_w = s_weights(mod);
  auto u_w = units(mod);
  auto budget = make_budget(o);
  auto d_s = zero_sum_constant(s_w, ZeroSumMode::kSubsequence, budget, o.threads);
  auto d_u = zero_sum_constant(u_w, ZeroSumMode::kSubsequence, budget, o.threads);

  OrderedJson doc;
  doc["kind"] = "explore";
  doc["n"] = o.n;
  doc["weights"] = "S";
  doc["mode"] = "D";
  doc["question"] =
      "when D_S = D_U, is every S(n)-zero-sum-free sequence U(n)-zero-sum-free?";
  OrderedJson stats;
  stats["d_s"] = d_s.value;
  stats["d_s_exhaustive"] = d_s.exhaustive;
  stats["d_u"] = d_u.value;
  stats["d_u_exhaustive"] = d_u.exhaustive;
  stats["constants_equal"] = d_s.value == d_u.value;

  std::uint64_t nodes = d_s.nodes + d_u.nodes;
  OrderedJson per_length = OrderedJson::array();
  const std::uint32_t upto =
      std::min(max_length ? max_length : d_s.value - 1, d_s.value - 1);
  std::vector<std::string> samples;
  for (std::uint32_t len = 1; len <= upto; ++len) {
    auto fam = enumerate_extremal(s_w, ZeroSumMode::kSubsequence, len,
                                  EnumStrategy::kCanonical, budget);
    nodes += fam.nodes;
    std::uint64_t total = 0, with_u_zero = 0;
    for (const auto& cls : fam.classes) {
      std::uint64_t size = 1;
      for (auto r : cls) {
        size *= fam.orbits->orbit_members(fam.orbits->orbit_index(r)).size();
      }
      total += size;
      // U-zero-sum-ness is constant on S-orbit classes.
      if (has_zero_subsequence(Sequence{o.n, cls}, u_w)) {
        with_u_zero += size;
        if (samples.size() < 5) samples.push_back(to_string(Sequence{o.n, cls}));
      }
    }
    OrderedJson row;
    row["length"] = len;
    row["s_zero_sum_free"] = total;
    row["also_u_zero_sum"] = with_u_zero;
    row["complete"] = fam.complete;
    per_length.push_back(row);
  }
  stats["per_length"] = per_length;
  doc["stats"] = stats;
  doc["examples_with_u_zero_sum"] = samples;

  RunInfo info;
  info.command = "explore conjecture --n " + std::to_string(o.n) +
                 (max_length ? " --max-length " + std::to_string(max_length) : "") +
                 budget_suffix(o);
  info.n = o.n;
  info.weights = "S";
  info.mode = "D";
  info.nodes = nodes;
  info.wall_ms = ms_since(start);
  doc["manifest"] = make_manifest(info);
  out << emit_report(doc, resolve_format(o));
  return 1;  // informational by definition
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"weighted zero-sum constants and extremal-sequence verification over Z_n"};
  app.name("zslab");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommonOpts o;
  VerifyFlags vf;
  std::string sequence_text;
  std::uint32_t length_flag = 0;
  std::string strategy_flag = "canonical";
  std::uint64_t listing_limit = 1000;
  std::uint32_t conjecture_max_length = 0;

  auto* c_const = app.add_subcommand("constant", "compute D_A(n) or C_A(n)");
  c_const->add_option("--n", o.n, "odd modulus")->required();
  c_const->add_option("--weights", o.weights, "U | Q | S | L:<p> | custom:<r1,...>");
  c_const->add_option("--mode", o.mode, "D (subsequence) or C (consecutive)");
  c_const->add_flag("--exploratory", o.exploratory, "skip the hypothesis gate");
  add_budget_flags(c_const, o);
  add_output_flags(c_const, o);

  auto* c_verify = app.add_subcommand("verify", "verify a theorem or lemma");
  c_verify->add_option("--theorem", vf.theorem, "theorem id (see registry)");
  c_verify->add_option("--lemma", vf.lemma, "lemma id (see registry)");
  c_verify->add_option("--n", o.n, "odd modulus")->required();
  c_verify->add_option("--p", vf.p, "prime divisor p'");
  c_verify->add_option("--p2", vf.p2, "second prime divisor");
  c_verify->add_option("--d", vf.d, "divisor parameter");
  c_verify->add_option("--m1", vf.m1, "coprime factor (obs3)");
  c_verify->add_option("--weights", vf.lemma_weights, "weight set for lemma instances");
  c_verify->add_option("--length", vf.length, "instance sequence length");
  c_verify->add_option("--samples", vf.samples, "sampling target per instance family");
  c_verify->add_option("--seed", vf.seed, "sampling seed");
  c_verify->add_option("--exhaustive-limit", vf.exhaustive_limit,
                       "instance-space size scanned exhaustively");
  c_verify->add_option("--expand-limit", vf.expand_limit,
                       "max family size expanded to explicit tuples");
  c_verify->add_option("--max-counterexamples", vf.max_counterexamples,
                       "counterexamples listed in reports");
  c_verify->add_flag("--exploratory", o.exploratory, "skip hypothesis checks");
  add_budget_flags(c_verify, o);
  add_output_flags(c_verify, o);

  auto* c_ext = app.add_subcommand("extremal", "enumerate extremal sequences");
  c_ext->add_option("--n", o.n, "odd modulus")->required();
  c_ext->add_option("--weights", o.weights, "weight-set spec");
  c_ext->add_option("--mode", o.mode, "D or C");
  c_ext->add_option("--length", length_flag,
                    "sequence length (default: constant - 1)");
  c_ext->add_option("--strategy", strategy_flag, "canonical | full")
      ->check(CLI::IsMember({"canonical", "full"}));
  c_ext->add_option("--limit", listing_limit, "sequences listed in json/table output");
  c_ext->add_flag("--exploratory", o.exploratory, "skip the hypothesis gate");
  add_budget_flags(c_ext, o);
  add_output_flags(c_ext, o);

  auto* c_check = app.add_subcommand("check", "test one sequence for zero-sums");
  c_check->add_option("--n", o.n, "odd modulus")->required();
  c_check->add_option("--weights", o.weights, "weight-set spec");
  c_check->add_option("--mode", o.mode, "D or C");
  c_check->add_option("--sequence", sequence_text, "comma-separated residues")
      ->required();
  add_output_flags(c_check, o);

  auto* c_weights = app.add_subcommand("weights", "dump a weight set");
  c_weights->add_option("--n", o.n, "odd modulus")->required();
  c_weights->add_option("--weights", o.weights, "weight-set spec");
  add_output_flags(c_weights, o);

  auto* c_explore = app.add_subcommand("explore", "runs outside theorem coverage");
  c_explore->require_subcommand(1);
  auto* c_exp_const = c_explore->add_subcommand("constant", "budgeted constant search");
  c_exp_const->add_option("--n", o.n, "odd modulus")->required();
  c_exp_const->add_option("--weights", o.weights, "weight-set spec");
  c_exp_const->add_option("--mode", o.mode, "D or C");
  add_budget_flags(c_exp_const, o);
  add_output_flags(c_exp_const, o);
  auto* c_exp_conj = c_explore->add_subcommand(
      "conjecture", "compare S(n)- and U(n)-zero-sum-free sequences");
  c_exp_conj->add_option("--n", o.n, "odd modulus")->required();
  c_exp_conj->add_option("--max-length", conjecture_max_length,
                         "cap on enumerated lengths");
  add_budget_flags(c_exp_conj, o);
  add_output_flags(c_exp_conj, o);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("zslab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_const->parsed()) return run_constant(o, out, false);
    if (c_verify->parsed()) return run_verify(o, vf, out);
    if (c_ext->parsed())
      return run_extremal(o, length_flag, strategy_flag, listing_limit, out);
    if (c_check->parsed()) return run_check(o, sequence_text, out);
    if (c_weights->parsed()) return run_weights(o, out);
    if (c_explore->parsed()) {
      if (c_exp_const->parsed()) return run_constant(o, out, true);
      if (c_exp_conj->parsed()) return run_conjecture(o, conjecture_max_length, out);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace zslab
