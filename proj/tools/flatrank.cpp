// flatrank: command-line driver for the flattening-rank library.
//
// Exit codes: 0 success or verified, 1 hypothesis or bound check failed,
// 2 usage, parse or parameter error.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "flatrank/combinatorics.hpp"
#include "flatrank/fw.hpp"
#include "flatrank/io.hpp"
#include "flatrank/rainbow.hpp"
#include "flatrank/search.hpp"
#include "flatrank/setfam.hpp"
#include "flatrank/tensor.hpp"

namespace {

using flatrank::io::Json;
namespace io = flatrank::io;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Output {
  std::string out;
  std::string csv;
};

void emit(const Output& o, const Json& report, const std::string& summary) {
  if (o.out.empty()) {
    std::cout << io::dump(report);
  } else {
    io::write_file_atomic(o.out, io::dump(report));
    std::cout << summary << "\n";
  }
}

void emit_csv(const Output& o, const std::vector<std::pair<std::string, std::string>>& row) {
  if (o.csv.empty()) return;
  std::ostringstream header;
  std::ostringstream values;
  for (std::size_t i = 0; i < row.size(); ++i) {
    header << (i ? "," : "") << row[i].first;
    values << (i ? "," : "") << row[i].second;
  }
  io::write_file_atomic(o.csv, header.str() + "\n" + values.str() + "\n");
}

std::string opt_str(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

// -- rank ---------------------------------------------------------------------

struct RankArgs {
  std::string file;
  std::optional<std::size_t> axis;
  bool max = false;
  bool sum = false;
  Output o;
};

int cmd_rank(const RankArgs& args) {
  const Json doc = io::read_json_file(args.file);
  const flatrank::Tensor t = io::tensor_from_json(doc);
  Json results;
  results["dims"] = t.dims();
  results["field"] = t.field().name();
  std::string summary;
  if (args.axis) {
    if (*args.axis >= t.order()) {
      throw flatrank::TensorError("axis " + std::to_string(*args.axis) + " out of range for order " +
                                  std::to_string(t.order()));
    }
    const std::size_t rk = flatrank::flattening_rank(t, *args.axis);
    results["axis"] = *args.axis;
    results["rank"] = rk;
    summary = "frank_" + std::to_string(*args.axis) + " = " + std::to_string(rk);
  } else if (args.max) {
    const std::size_t m = flatrank::max_flattening_rank(t);
    results["mfrank"] = m;
    summary = "mfrank = " + std::to_string(m);
  } else if (args.sum) {
    const std::size_t s = flatrank::sum_flattening_ranks(t);
    results["sum"] = s;
    summary = "sum = " + std::to_string(s);
  } else {
    const auto ranks = flatrank::flattening_ranks(t);
    std::size_t sum = 0;
    for (std::size_t r : ranks) sum += r;
    results["ranks"] = ranks;
    results["mfrank"] = *std::max_element(ranks.begin(), ranks.end());
    results["sum"] = sum;
    summary = "mfrank = " + std::to_string(results["mfrank"].get<std::size_t>());
  }
  if (!args.o.out.empty()) io::write_file_atomic(args.o.out, io::dump(io::make_report("rank", doc, results)));
  std::cout << summary << "\n";
  return kOk;
}

// -- construct ----------------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  std::size_t a = 0;
  std::size_t d = 0;
  std::size_t axis = 0;
  std::string field = "prime:2";
  Output o;
};

int cmd_construct(const ConstructArgs& args) {
  const auto field = io::parse_field_spec(args.field);
  Json meta{{"construction", args.kind}, {"a", args.a}, {"d", args.d}};
  flatrank::Tensor t = args.kind == "partition"
                           ? flatrank::partition_construction(args.a, args.d, field)
                           : flatrank::axis_constant_construction(args.a, args.d, args.axis, field);
  if (args.kind != "partition") meta["i"] = args.axis;
  const Json doc = io::tensor_to_json(t, meta);
  if (args.o.out.empty()) {
    std::cout << io::dump(doc);
  } else {
    io::write_file_atomic(args.o.out, io::dump(doc));
  }
  return kOk;
}

// -- verify -------------------------------------------------------------------

struct VerifyArgs {
  std::string file;
  std::string config;
  std::string field;
  bool positions = false;
  Output o;
};

Json chain_inputs(const Json& doc, const Json& extra = Json()) {
  Json inputs{{"document", doc}};
  if (!extra.is_null()) inputs["extra"] = extra;
  return inputs;
}

int cmd_verify_oddtown(const VerifyArgs& args) {
  const Json doc = io::read_json_file(args.file);
  const flatrank::TupleFamily family = io::tuple_family_from_json(doc);
  Json r;
  r["n"] = family.n;
  r["d"] = family.d;
  r["size"] = family.size();
  r["bound"] = flatrank::cross_oddtown_bound(family.n, family.d);
  const auto violation = flatrank::cross_oddtown_violation(family);
  r["hypothesis"] = !violation.has_value();
  r["violation"] = violation ? Json(*violation) : Json(nullptr);
  bool ok = !violation.has_value();
  if (ok && family.size() > 0) {
    const flatrank::Tensor t = flatrank::oddtown_tensor(family);
    const auto cert = flatrank::oddtown_rank1_certificate(family);
    const bool cert_ok = flatrank::reconstruct_certificate(family, cert) == t;
    const auto ranks = flatrank::flattening_ranks(t);
    const std::size_t mfrank = *std::max_element(ranks.begin(), ranks.end());
    const bool semi = flatrank::is_semi_diagonal(t);
    r["semi_diagonal"] = semi;
    r["ranks"] = ranks;
    r["mfrank"] = mfrank;
    r["certificate_terms"] = cert.size();
    r["certificate_reconstructs"] = cert_ok;
    ok = semi && cert_ok && mfrank <= family.n && family.size() <= (family.d - 1) * mfrank &&
         family.size() <= r["bound"].get<std::uint64_t>();
  }
  r["verified"] = ok;
  emit(args.o, io::make_report("verify oddtown", chain_inputs(doc), r),
       std::string("oddtown: ") + (ok ? "verified" : "failed"));
  return ok ? kOk : kFailed;
}

int cmd_verify_fw(const VerifyArgs& args) {
  const Json doc = io::read_json_file(args.file);
  Json family_doc = doc;
  Json config_doc;
  if (!args.config.empty()) {
    config_doc = io::read_json_file(args.config);
  } else if (doc.is_object() && doc.contains("config") && doc.contains("family")) {
    family_doc = doc["family"];
    config_doc = doc["config"];
  } else {
    throw io::FormatError("fw needs --config or a document with \"family\" and \"config\"");
  }
  const flatrank::SetFamily family = io::set_family_from_json(family_doc);
  const flatrank::Configuration cfg = io::configuration_from_json(config_doc);
  const auto distinct = args.positions ? flatrank::Distinctness::Positions : flatrank::Distinctness::Sets;

  Json r;
  r["n"] = family.n;
  r["size"] = family.size();
  r["distinct"] = args.positions ? "positions" : "sets";
  r["max_degree"] = flatrank::config_max_degree(cfg);
  r["size_bound"] = flatrank::fw_size_bound(cfg, family.n);
  const auto violation = flatrank::config_violation(family, cfg, distinct);
  r["hypothesis"] = !violation.has_value();
  if (violation) {
    r["violation"] = Json{
        {"kind", violation->kind == flatrank::ConfigViolation::Kind::MemberSizeInL ? "member_size_in_L"
                                                                                    : "forbidden_tuple"},
        {"positions", violation->positions}};
  } else {
    r["violation"] = nullptr;
  }
  bool ok = !violation.has_value();
  if (ok && family.size() > 0) {
    const flatrank::Tensor t = flatrank::fw_tensor(family, cfg);
    const auto ranks = flatrank::flattening_ranks(t);
    std::vector<std::uint64_t> bounds;
    bool ranks_ok = true;
    for (unsigned j = 0; j < cfg.k; ++j) {
      bounds.push_back(flatrank::fw_flattening_bound(cfg, family.n, j));
      ranks_ok = ranks_ok && ranks[j] <= bounds.back();
    }
    const bool semi = cfg.k < 2 || flatrank::is_semi_diagonal(t);
    r["semi_diagonal"] = semi;
    r["ranks"] = ranks;
    r["mfrank"] = *std::max_element(ranks.begin(), ranks.end());
    r["rank_upper_bounds"] = bounds;
    ok = semi && ranks_ok && family.size() <= r["size_bound"].get<std::uint64_t>();
  }
  r["verified"] = ok;
  emit(args.o, io::make_report("verify fw", chain_inputs(family_doc, config_doc), r),
       std::string("fw: ") + (ok ? "verified" : "failed"));
  return ok ? kOk : kFailed;
}

int cmd_verify_rainbow(const VerifyArgs& args) {
  const Json doc = io::read_json_file(args.file);
  const flatrank::ColoredHypergraph h = io::hypergraph_from_json(doc);
  const auto field = args.field.empty() ? flatrank::rainbow_field(h.vertices) : io::parse_field_spec(args.field);
  const auto report = flatrank::certify_no_rainbow_bound(h, field);
  const Json r = io::rainbow_report_to_json(report);
  emit(args.o, io::make_report("verify rainbow", chain_inputs(doc), r),
       std::string("rainbow: ") + (report.chain_holds ? "verified" : "failed"));
  return report.chain_holds ? kOk : kFailed;
}

int cmd_verify_bollobas(const VerifyArgs& args) {
  const Json doc = io::read_json_file(args.file);
  const flatrank::SetPairSystem s = io::set_pair_system_from_json(doc);
  const auto report = flatrank::bollobas_verify(s);
  emit(args.o, io::make_report("verify bollobas", chain_inputs(doc), io::bollobas_report_to_json(report)),
       std::string("bollobas: ") + (report.verified() ? "verified" : "failed"));
  return report.verified() ? kOk : kFailed;
}

int cmd_verify_badbox(const VerifyArgs& args) {
  const Json doc = io::read_json_file(args.file);
  const flatrank::BadboxFamily f = io::badbox_family_from_json(doc);
  Json r;
  r["t"] = f.t;
  r["s"] = f.s;
  r["k"] = f.k;
  r["size"] = f.members.size();
  r["target_size"] = flatrank::badbox_target_size(f.t, f.s);
  const auto clique = flatrank::find_odd_clique(f.members, f.k);
  r["odd_clique"] = clique ? Json(*clique) : Json(nullptr);
  const auto cfg = flatrank::Configuration::complete_graph(static_cast<unsigned>(f.k), 2, {0});
  const bool satisfying = flatrank::is_config_satisfying(f.as_set_family(), cfg, flatrank::Distinctness::Positions);
  bool odd_factors = true;
  for (const auto& m : f.members) {
    for (std::uint64_t factor : m.factors) odd_factors = odd_factors && flatrank::popcount(factor) % 2 == 1;
  }
  r["odd_factors"] = odd_factors;
  r["badbox_free"] = !clique.has_value();
  r["config_satisfying"] = satisfying;
  const bool ok = odd_factors && !clique && satisfying;
  r["verified"] = ok;
  emit(args.o, io::make_report("verify badbox", chain_inputs(doc), r),
       std::string("badbox: ") + (ok ? "verified" : "failed"));
  return ok ? kOk : kFailed;
}

// -- experiment ---------------------------------------------------------------

struct ExperimentArgs {
  std::size_t a = 0;
  std::size_t d = 0;
  unsigned n = 0;
  unsigned t = 0;
  unsigned s = 0;
  std::uint64_t samples = 0;
  std::uint64_t budget = 0;
  std::size_t max_attempts = flatrank::kBadboxMaxAttempts;
  std::string field = "prime:2";
  std::uint64_t seed = 0;
  bool timing = false;
  Output o;
};

std::vector<std::pair<std::string, std::string>> sweep_row(const flatrank::SearchReport& r) {
  return {{"examined", std::to_string(r.examined)},
          {"seed", r.seed ? std::to_string(*r.seed) : ""},
          {"mfrank_lower_bound", std::to_string(r.mfrank_lower_bound)},
          {"min_mfrank", opt_str(r.min_mfrank)},
          {"sum_lower_bound", std::to_string(r.sum_lower_bound)},
          {"min_sum_frank", opt_str(r.min_sum_frank)},
          {"violations", std::to_string(r.violations)}};
}

int finish_sweep(const std::string& command, const Json& params, const flatrank::SearchReport& report,
                 const ExperimentArgs& args) {
  Json results = io::search_report_to_json(report, args.timing);
  results["params"] = params;
  emit(args.o, io::make_report(command, params, results, report.seed),
       command + ": min mfrank " + opt_str(report.min_mfrank) + ", violations " + std::to_string(report.violations));
  emit_csv(args.o, sweep_row(report));
  return report.violations == 0 ? kOk : kFailed;
}

int cmd_exhaustive(const ExperimentArgs& args) {
  const auto report = flatrank::exhaustive_min_mfrank(args.a, args.d);
  return finish_sweep("experiment exhaustive", Json{{"a", args.a}, {"d", args.d}}, report, args);
}

int cmd_random_semidiagonal(const ExperimentArgs& args) {
  const auto field = io::parse_field_spec(args.field);
  const auto report = flatrank::random_semidiagonal_sweep(args.a, args.d, field, args.samples, args.seed);
  const Json params{{"a", args.a}, {"d", args.d}, {"field", io::field_to_json(field)}, {"samples", args.samples},
                    {"seed", args.seed}};
  return finish_sweep("experiment random-semidiagonal", params, report, args);
}

int cmd_badbox_sample(const ExperimentArgs& args) {
  const Json params{{"t", args.t}, {"s", args.s}, {"seed", args.seed}, {"max_attempts", args.max_attempts}};
  Json results;
  results["params"] = params;
  int code = kOk;
  std::string summary;
  std::vector<std::pair<std::string, std::string>> row{{"t", std::to_string(args.t)}, {"s", std::to_string(args.s)},
                                                       {"seed", std::to_string(args.seed)}};
  try {
    const auto family = flatrank::sample_badbox_family(args.t, args.s, args.seed, args.max_attempts);
    results["family"] = io::badbox_family_to_json(family);
    results["target_size"] = flatrank::badbox_target_size(args.t, args.s);
    results["verified"] = true;
    summary = "badbox-sample: verified after " + std::to_string(family.attempts) + " attempt(s)";
    row.emplace_back("size", std::to_string(family.members.size()));
    row.emplace_back("attempts", std::to_string(family.attempts));
  } catch (const flatrank::BadboxSamplingError& e) {
    results["family"] = nullptr;
    results["attempts"] = e.attempts();
    results["verified"] = false;
    results["error"] = e.what();
    summary = std::string("badbox-sample: failed: ") + e.what();
    row.emplace_back("size", "");
    row.emplace_back("attempts", std::to_string(e.attempts()));
    code = kFailed;
  }
  emit(args.o, io::make_report("experiment badbox-sample", params, results, args.seed), summary);
  emit_csv(args.o, row);
  return code;
}

int cmd_oddtown_search(const ExperimentArgs& args) {
  flatrank::Rng rng(args.seed);
  const auto report = flatrank::random_cross_oddtown_search(args.n, args.d, args.budget, rng);
  const Json params{{"n", args.n}, {"d", args.d}, {"budget", args.budget}, {"seed", args.seed}};
  Json results = io::search_report_to_json(report, args.timing);
  results["params"] = params;
  const std::size_t best = report.best_family ? report.best_family->size() : 0;
  emit(args.o, io::make_report("experiment oddtown-search", params, results, args.seed),
       "oddtown-search: best " + std::to_string(best) + " of bound " + std::to_string(report.family_bound));
  emit_csv(args.o, {{"n", std::to_string(args.n)},
                    {"d", std::to_string(args.d)},
                    {"budget", std::to_string(args.budget)},
                    {"seed", std::to_string(args.seed)},
                    {"best_size", std::to_string(best)},
                    {"bound", std::to_string(report.family_bound)}});
  return report.violations == 0 ? kOk : kFailed;
}

void add_output(CLI::App* cmd, Output& o, bool csv) {
  cmd->add_option("--out,-o", o.out, "Write the report to this file instead of stdout");
  if (csv) cmd->add_option("--csv", o.csv, "Also write a one-row CSV summary");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flattening ranks of semi-diagonal tensors and their combinatorial applications"};
  app.set_version_flag("--version", std::string(io::kToolVersion));
  app.require_subcommand(1);

  std::function<int()> action;

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "Flattening ranks of a tensor document");
  rank_cmd->add_option("file", rank.file, "Tensor document")->required();
  auto* axis_opt = rank_cmd->add_option("--axis", rank.axis, "Rank of one flattening (0-based axis)");
  auto* max_opt = rank_cmd->add_flag("--max", rank.max, "Max-flattening rank");
  auto* sum_opt = rank_cmd->add_flag("--sum", rank.sum, "Sum of flattening ranks");
  axis_opt->excludes(max_opt, sum_opt);
  max_opt->excludes(sum_opt);
  add_output(rank_cmd, rank.o, false);
  rank_cmd->callback([&] { action = [&] { return cmd_rank(rank); }; });

  ConstructArgs construct;
  auto* construct_cmd = app.add_subcommand("construct", "Write an extremal semi-diagonal tensor");
  construct_cmd->add_option("kind", construct.kind, "partition or axis-constant")
      ->required()
      ->check(CLI::IsMember({"partition", "axis-constant"}));
  construct_cmd->add_option("--a", construct.a, "Side length |A|")->required();
  construct_cmd->add_option("--d", construct.d, "Order")->required();
  construct_cmd->add_option("--i", construct.axis, "Constant axis for axis-constant (0-based)");
  construct_cmd->add_option("--field", construct.field, "prime:P or binary:K")->capture_default_str();
  add_output(construct_cmd, construct.o, false);
  construct_cmd->callback([&] { action = [&] { return cmd_construct(construct); }; });

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a bound chain on an input document");
  verify_cmd->require_subcommand(1);
  struct VerifyKind {
    const char* name;
    const char* help;
    int (*run)(const VerifyArgs&);
  };
  const VerifyKind kinds[] = {
      {"oddtown", "Cross-d-wise Oddtown family", cmd_verify_oddtown},
      {"fw", "Family satisfying a forbidden-intersection configuration", cmd_verify_fw},
      {"rainbow", "Colored hypergraph without a rainbow matching", cmd_verify_rainbow},
      {"bollobas", "Skew set-pair system", cmd_verify_bollobas},
      {"badbox", "Sampled bad-box family", cmd_verify_badbox},
  };
  for (const auto& kind : kinds) {
    auto* sub = verify_cmd->add_subcommand(kind.name, kind.help);
    sub->add_option("file", verify.file, "Input document")->required();
    if (std::string(kind.name) == "fw") {
      sub->add_option("--config", verify.config, "Configuration document");
      sub->add_flag("--positions", verify.positions, "Treat members as distinct by position only");
    }
    if (std::string(kind.name) == "rainbow") {
      sub->add_option("--field", verify.field, "Override the coefficient field (binary:K)");
    }
    add_output(sub, verify.o, false);
    auto run = kind.run;
    sub->callback([&, run] { action = [&, run] { return run(verify); }; });
  }

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Deterministic sweeps and samplers");
  exp_cmd->require_subcommand(1);

  auto* ex = exp_cmd->add_subcommand("exhaustive", "All GF(2) semi-diagonal tensors on A^d");
  ex->add_option("--a", exp.a, "Side length |A|")->required();
  ex->add_option("--d", exp.d, "Order")->required();
  ex->add_flag("--timing", exp.timing, "Include wall-clock time in the report");
  add_output(ex, exp.o, true);
  ex->callback([&] { action = [&] { return cmd_exhaustive(exp); }; });

  auto* rs = exp_cmd->add_subcommand("random-semidiagonal", "Random semi-diagonal tensors");
  rs->add_option("--a", exp.a, "Side length |A|")->required();
  rs->add_option("--d", exp.d, "Order")->required();
  rs->add_option("--samples", exp.samples, "Number of samples")->required();
  rs->add_option("--field", exp.field, "prime:P or binary:K")->capture_default_str();
  rs->add_option("--seed", exp.seed, "Base seed; sample i uses seed + i")->required();
  rs->add_flag("--timing", exp.timing, "Include wall-clock time in the report");
  add_output(rs, exp.o, true);
  rs->callback([&] { action = [&] { return cmd_random_semidiagonal(exp); }; });

  auto* bb = exp_cmd->add_subcommand("badbox-sample", "Sample a bad-box family");
  bb->add_option("--t", exp.t, "Factor ground size t")->required();
  bb->add_option("--s", exp.s, "Number of factors s")->required();
  bb->add_option("--seed", exp.seed, "Base seed; attempt i uses seed + i")->required();
  bb->add_option("--max-attempts", exp.max_attempts, "Attempt cap")->capture_default_str();
  add_output(bb, exp.o, true);
  bb->callback([&] { action = [&] { return cmd_badbox_sample(exp); }; });

  auto* os = exp_cmd->add_subcommand("oddtown-search", "Random growth of cross-oddtown families");
  os->add_option("--n", exp.n, "Ground set size")->required();
  os->add_option("--d", exp.d, "Tuple width")->required();
  os->add_option("--budget", exp.budget, "Number of trials")->required();
  os->add_option("--seed", exp.seed, "Seed")->required();
  os->add_flag("--timing", exp.timing, "Include wall-clock time in the report");
  add_output(os, exp.o, true);
  os->callback([&] { action = [&] { return cmd_oddtown_search(exp); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    // Malformed documents, invalid parameters and exceeded caps.
    std::cerr << "flatrank: error: " << e.what() << "\n";
    return kUsage;
  }
}
