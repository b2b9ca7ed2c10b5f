// Command-line front end: loads a measure spec, builds the block trees,
// runs the verification passes, and writes deterministic CSV/JSON reports.
//
// Exit codes: 0 all asserted inequalities hold; 1 bad usage or config;
// 2 an asserted invariant failed (failure record written to the output
// directory as failure.json).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "confdim/dimension.hpp"
#include "confdim/martingale.hpp"
#include "confdim/measure.hpp"
#include "confdim/mu_tree.hpp"
#include "confdim/profile.hpp"
#include "confdim/qs_map.hpp"
#include "confdim/rational.hpp"
#include "confdim/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace confdim;

namespace {

struct RunConfig {
  std::string measure_path;
  double epsilon = 1.0;
  std::string rho_override; // "p/q", empty = default_rho(epsilon)
  std::string blocks;       // "lo..hi", empty = the spec's own range
  int depth = 10;           // explicit construction depth
  std::vector<int> check_depths; // per-level walk-tail checks
  std::vector<int> agg_depths;   // aggregated covering-sum depths
  std::vector<double> s_grid;
  std::string out_dir = "confdim-out";
};

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json doc = json::parse(in);
  if (doc.contains("measure")) cfg.measure_path = doc["measure"].get<std::string>();
  if (doc.contains("epsilon")) cfg.epsilon = doc["epsilon"].get<double>();
  if (doc.contains("rho")) cfg.rho_override = doc["rho"].get<std::string>();
  if (doc.contains("blocks")) cfg.blocks = doc["blocks"].get<std::string>();
  if (doc.contains("depth")) cfg.depth = doc["depth"].get<int>();
  if (doc.contains("check_depths")) cfg.check_depths = doc["check_depths"].get<std::vector<int>>();
  if (doc.contains("agg_depths")) cfg.agg_depths = doc["agg_depths"].get<std::vector<int>>();
  if (doc.contains("s_grid")) cfg.s_grid = doc["s_grid"].get<std::vector<double>>();
  if (doc.contains("out_dir")) cfg.out_dir = doc["out_dir"].get<std::string>();
}

fs::path output_dir(const RunConfig& cfg) {
  const char* env = std::getenv("CONFDIM_OUT_DIR");
  fs::path dir = env && *env ? fs::path(env) : fs::path(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::pair<long long, long long> block_range(const RunConfig& cfg, const MeasureSpec& spec) {
  if (cfg.blocks.empty()) return {spec.block_lo, spec.block_hi};
  auto pos = cfg.blocks.find("..");
  if (pos == std::string::npos)
    throw CLI::ValidationError("--blocks", "expected lo..hi, got " + cfg.blocks);
  long long lo = std::stoll(cfg.blocks.substr(0, pos));
  long long hi = std::stoll(cfg.blocks.substr(pos + 2));
  if (lo > hi) throw CLI::ValidationError("--blocks", "empty range " + cfg.blocks);
  return {lo, hi};
}

RhoParameter choose_rho(const RunConfig& cfg) {
  if (cfg.rho_override.empty()) return default_rho(cfg.epsilon);
  return make_rho(parse_rational_or_throw(cfg.rho_override, "--rho"), cfg.epsilon);
}

std::vector<MuTree> build_blocks(const RunConfig& cfg, std::shared_ptr<const MeasureOracle> nu,
                                 const RhoParameter& rho, long long lo, long long hi) {
  std::vector<MuTree> trees;
  for (long long k = lo; k <= hi; ++k) trees.push_back(build_tree(nu, k, cfg.depth, rho));
  return trees;
}

json run_header(const RunConfig& cfg, const RhoParameter& rho, long long lo, long long hi) {
  json doc;
  doc["measure"] = cfg.measure_path;
  doc["epsilon"] = cfg.epsilon;
  doc["rho"] = to_fraction_string(rho.rho);
  doc["blocks"] = {lo, hi};
  doc["depth"] = cfg.depth;
  return doc;
}

// Writes the failure record and returns the invariant-violation status.
int fail_out(const fs::path& dir, const json& record) {
  write_json((dir / "failure.json").string(), record);
  std::cerr << record.dump(2) << "\n";
  return 2;
}

int cmd_build(const RunConfig& cfg) {
  auto nu = std::make_shared<MeasureOracle>(load_measure_spec(cfg.measure_path));
  auto rho = choose_rho(cfg);
  auto [lo, hi] = block_range(cfg, nu->spec());
  auto dir = output_dir(cfg);
  json summary = run_header(cfg, rho, lo, hi);
  auto blocks = json::array();
  for (long long k = lo; k <= hi; ++k) {
    auto tree = build_tree(nu, k, cfg.depth, rho);
    std::ofstream os(dir / ("tree_block_" + std::to_string(k) + ".txt"));
    tree.dump(os);
    json b;
    b["block"] = k;
    b["explicit_nodes"] = tree.explicit_node_count();
    b["frontier_open"] = tree.frontier_open();
    b["nu_mass"] = to_fraction_string(nu->block_mass(k));
    blocks.push_back(std::move(b));
  }
  summary["blocks_built"] = std::move(blocks);
  write_json((dir / "build_summary.json").string(), summary);
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_check_doubling(const RunConfig& cfg) {
  auto nu = std::make_shared<MeasureOracle>(load_measure_spec(cfg.measure_path));
  auto rho = choose_rho(cfg);
  auto [lo, hi] = block_range(cfg, nu->spec());
  auto trees = build_blocks(cfg, nu, rho, lo, hi);
  auto rep = doubling_check(trees, cfg.depth);
  auto dir = output_dir(cfg);
  json doc = run_header(cfg, rho, lo, hi);
  doc["report"] = rep.to_json();
  doc["window_bound"] = to_fraction_string(rho.one_minus_3rho() / rho.rho);
  write_json((dir / "doubling.json").string(), doc);
  std::cout << doc.dump(2) << "\n";
  return rep.passed ? 0 : fail_out(dir, doc);
}

int cmd_check_martingale(const RunConfig& cfg) {
  auto nu = std::make_shared<MeasureOracle>(load_measure_spec(cfg.measure_path));
  auto rho = choose_rho(cfg);
  auto [lo, hi] = block_range(cfg, nu->spec());
  auto dir = output_dir(cfg);
  json doc = run_header(cfg, rho, lo, hi);
  bool ok = true;
  auto blocks = json::array();
  for (long long k = lo; k <= hi; ++k) {
    auto tree = build_tree(nu, k, cfg.depth, rho);
    auto rep = submartingale_check(tree, cfg.depth);
    json b;
    b["block"] = k;
    b["ok"] = rep.ok;
    b["nodes_checked"] = rep.nodes_checked;
    if (rep.min_set) {
      b["min_numerator"] = to_fraction_string(rep.min_numerator);
      b["argmin"] = to_string(rep.argmin);
    }
    if (!rep.ok) ok = false;
    blocks.push_back(std::move(b));
  }
  doc["blocks_checked"] = std::move(blocks);
  doc["ok"] = ok;
  write_json((dir / "martingale.json").string(), doc);
  std::cout << doc.dump(2) << "\n";
  return ok ? 0 : fail_out(dir, doc);
}

int cmd_check_azuma(const RunConfig& cfg) {
  auto nu = std::make_shared<MeasureOracle>(load_measure_spec(cfg.measure_path));
  auto rho = choose_rho(cfg);
  auto [lo, hi] = block_range(cfg, nu->spec());
  std::vector<int> ns = cfg.check_depths;
  if (ns.empty())
    for (int n = 1; n <= cfg.depth; ++n) ns.push_back(n);
  auto dir = output_dir(cfg);
  json doc = run_header(cfg, rho, lo, hi);
  std::vector<std::string> rows;
  bool ok = true;
  json violations = json::array();
  for (long long k = lo; k <= hi; ++k) {
    auto tree = build_tree(nu, k, cfg.depth, rho);
    Rational block_nu = nu->block_mass(k);
    for (int n : ns) {
      auto w = bad_mass(tree, n);
      rows.push_back(walk_csv_row(w));
      // asserted inequality: nu(B^n) <= nu(block) * e^(-sqrt n)
      if (w.nu_bad.get_d() > block_nu.get_d() * w.paper_env * (1 + 1e-12)) {
        ok = false;
        violations.push_back({{"block", k}, {"n", n}, {"nu_bad", to_fraction_string(w.nu_bad)}});
      }
    }
  }
  write_csv((dir / "azuma.csv").string(), kWalkCsvHeader, rows);
  doc["ok"] = ok;
  doc["violations"] = std::move(violations);
  doc["rows_written"] = rows.size();
  write_json((dir / "azuma.json").string(), doc);
  std::cout << doc.dump(2) << "\n";
  return ok ? 0 : fail_out(dir, doc);
}

int cmd_dim_report(const RunConfig& cfg) {
  auto nu = std::make_shared<MeasureOracle>(load_measure_spec(cfg.measure_path));
  auto rho = choose_rho(cfg);
  auto [lo, hi] = block_range(cfg, nu->spec());
  std::vector<int> ns = cfg.agg_depths;
  if (ns.empty()) ns = {cfg.depth};
  auto dir = output_dir(cfg);
  json doc = run_header(cfg, rho, lo, hi);
  std::vector<std::string> rows;
  bool ok = true;
  auto blocks = json::array();
  for (long long k = lo; k <= hi; ++k) {
    auto tree = build_tree(nu, k, cfg.depth, rho);
    auto rep = dim_report(tree, cfg.epsilon, ns, cfg.s_grid);
    for (const auto& row : rep.rows) rows.push_back(dim_csv_row(row));
    json b = rep.to_json();
    b["block"] = k;
    // asserted: in the asymptotic regime the covering bound chain holds
    for (int n : ns) {
      auto f6 = covering_bound_check(tree, n, cfg.epsilon);
      if (f6.in_regime && !(f6.bound_ok && f6.premise_ok && f6.mass_ok)) {
        ok = false;
        b["covering_bound_violation_at_n"] = n;
      }
    }
    if (ns.size() >= 2 && !rep.epsilon_decays) {
      ok = false;
      b["decay_violation"] = true;
    }
    blocks.push_back(std::move(b));
  }
  doc["blocks"] = std::move(blocks);
  doc["ok"] = ok;
  write_csv((dir / "dim_report.csv").string(), kDimCsvHeader, rows);
  write_json((dir / "dim_report.json").string(), doc);
  std::cout << doc.dump(2) << "\n";
  return ok ? 0 : fail_out(dir, doc);
}

int cmd_map(const RunConfig& cfg, const std::string& at, const std::string& inverse) {
  auto nu = std::make_shared<MeasureOracle>(load_measure_spec(cfg.measure_path));
  auto rho = choose_rho(cfg);
  json doc;
  doc["rho"] = to_fraction_string(rho.rho);
  if (!at.empty()) {
    Rational t = parse_rational_or_throw(at, "--at");
    Integer block_z;
    mpz_fdiv_q(block_z.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    long long k = block_z.get_si();
    auto tree = build_tree(nu, k, cfg.depth, rho);
    Rational y = f_eval(tree, t);
    doc["t"] = to_fraction_string(t);
    doc["f"] = to_fraction_string(y);
    doc["f_float"] = shortest_double(y.get_d());
  }
  if (!inverse.empty()) {
    Rational y = parse_rational_or_throw(inverse, "--inverse");
    Integer block_z;
    mpz_fdiv_q(block_z.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
    long long k = block_z.get_si();
    auto tree = build_tree(nu, k, cfg.depth, rho);
    auto inv = f_inverse(tree, y, cfg.depth);
    doc["y"] = to_fraction_string(y);
    doc["exact"] = inv.exact;
    if (inv.exact) {
      doc["preimage"] = to_fraction_string(inv.t);
    } else {
      doc["bracket"] = to_string(inv.bracket);
      doc["bracket_left"] = to_fraction_string(left_endpoint(inv.bracket));
      doc["bracket_right"] = to_fraction_string(right_endpoint(inv.bracket));
    }
  }
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_export(const RunConfig& cfg, const std::string& what) {
  auto nu = std::make_shared<MeasureOracle>(load_measure_spec(cfg.measure_path));
  auto rho = choose_rho(cfg);
  auto [lo, hi] = block_range(cfg, nu->spec());
  auto dir = output_dir(cfg);
  auto tree = build_tree(nu, lo, cfg.depth, rho);
  if (what == "walk") {
    std::vector<std::string> rows;
    for (int n : cfg.check_depths) rows.push_back(walk_csv_row(bad_mass(tree, n)));
    write_csv((dir / "walk.csv").string(), kWalkCsvHeader, rows);
  } else if (what == "dim") {
    std::vector<int> ns = cfg.agg_depths;
    std::vector<std::string> rows;
    if (!ns.empty()) {
      auto rep = dim_report(tree, cfg.epsilon, ns, cfg.s_grid);
      for (const auto& row : rep.rows) rows.push_back(dim_csv_row(row));
      write_json((dir / "dim.json").string(), rep.to_json());
    }
    write_csv((dir / "dim.csv").string(), kDimCsvHeader, rows);
  } else if (what == "measure") {
    write_json((dir / "measure.json").string(), measure_spec_to_json(nu->spec()));
  } else {
    throw CLI::ValidationError("--what", "expected walk, dim, or measure");
  }
  std::cout << "written to " << dir.string() << "\n";
  return 0;
}

void add_common(CLI::App* app, RunConfig& cfg, std::string& config_path) {
  app->add_option("--config", config_path, "JSON run configuration (flags override fields)");
  app->add_option("--measure", cfg.measure_path, "measure spec JSON path");
  app->add_option("--epsilon", cfg.epsilon, "target dimension bound");
  app->add_option("--rho", cfg.rho_override, "rho override as p/q");
  app->add_option("--blocks", cfg.blocks, "block range lo..hi");
  app->add_option("--depth", cfg.depth, "explicit construction / check depth");
  app->add_option("--check-depths", cfg.check_depths, "walk-tail depths n");
  app->add_option("--agg-depths", cfg.agg_depths, "aggregated covering-sum depths n");
  app->add_option("--s-grid", cfg.s_grid, "covering exponents s");
  app->add_option("--out", cfg.out_dir, "output directory (env CONFDIM_OUT_DIR overrides)");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive doubling-measure construction and verification"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::string map_at, map_inverse, export_what = "walk";

  auto* build = app.add_subcommand("build", "construct the block trees and dump them");
  auto* check = app.add_subcommand("check", "run a verification pass");
  check->require_subcommand(1);
  auto* doubling = check->add_subcommand("doubling", "adjacent-interval mass ratios");
  auto* martingale = check->add_subcommand("martingale", "conditional step expectation >= 0");
  auto* azuma = check->add_subcommand("azuma", "walk tail mass against both envelopes");
  auto* dim = app.add_subcommand("dim-report", "covering sums and decay verdicts");
  auto* map_cmd = app.add_subcommand("map", "evaluate f or its inverse");
  auto* exp = app.add_subcommand("export", "write report tables without asserting");

  for (CLI::App* sub : {build, doubling, martingale, azuma, dim, map_cmd, exp})
    add_common(sub, cfg, config_path);
  map_cmd->add_option("--at", map_at, "grid point t (rational)");
  map_cmd->add_option("--inverse", map_inverse, "image point y (rational)");
  exp->add_option("--what", export_what, "walk | dim | measure");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      // re-parse so explicit flags override the config file
      RunConfig from_file;
      apply_config_file(from_file, config_path);
      RunConfig flags_only = cfg;
      cfg = from_file;
      CLI::App* sub = app.get_subcommands().front();
      if (sub == check) sub = check->get_subcommands().front();
      auto keep = [&](const std::string& name, auto member) {
        if (sub->count(name) > 0) cfg.*member = flags_only.*member;
      };
      keep("--measure", &RunConfig::measure_path);
      keep("--epsilon", &RunConfig::epsilon);
      keep("--rho", &RunConfig::rho_override);
      keep("--blocks", &RunConfig::blocks);
      keep("--depth", &RunConfig::depth);
      keep("--check-depths", &RunConfig::check_depths);
      keep("--agg-depths", &RunConfig::agg_depths);
      keep("--s-grid", &RunConfig::s_grid);
      keep("--out", &RunConfig::out_dir);
    }
    if (cfg.measure_path.empty())
      throw CLI::ValidationError("--measure", "a measure spec is required");

    if (*build) return cmd_build(cfg);
    if (*doubling) return cmd_check_doubling(cfg);
    if (*martingale) return cmd_check_martingale(cfg);
    if (*azuma) return cmd_check_azuma(cfg);
    if (*dim) return cmd_dim_report(cfg);
    if (*map_cmd) return cmd_map(cfg, map_at, map_inverse);
    if (*exp) return cmd_export(cfg, export_what);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const MeasureParseError& e) {
    std::cerr << "measure spec error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
