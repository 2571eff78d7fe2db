#include "simplexcover/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "simplexcover/bound_verify.hpp"
#include "simplexcover/covering.hpp"
#include "simplexcover/ddp_search.hpp"
#include "simplexcover/report.hpp"
#include "simplexcover/tile.hpp"

namespace simplexcover {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flag values for every subcommand; validated per subcommand before work starts.
struct RunConfig {
  std::string lattice_path;
  std::string out_path;
  std::string baseline_path;
  int n = 0;
  std::int64_t d = -1;
  std::string d_range;
  std::optional<std::int64_t> index_cap;
  int threads = 0;
  int resolution = 4;
  bool continuous = false;
  bool expect_cover = false;
  bool ascii = false;
  bool as_json = false;
  std::string d_star = "1";
  std::string v;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  std::string method = "mc";
  int nodes = 256;
  int n_max = 6;
};

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("range must look like A..B: " + text);
  try {
    const std::int64_t a = std::stoll(text.substr(0, dots));
    const std::int64_t b = std::stoll(text.substr(dots + 2));
    if (a < 0 || b < a) throw UsageError("bad range: " + text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("bad range: " + text);
  }
}

void emit(const std::string& content, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out_path.empty())
    out << content;
  else
    write_file(cfg.out_path, content);
}

void require_n(const RunConfig& cfg) {
  if (cfg.n < 1 || cfg.n > kMaxDim) throw UsageError("--n must be in 1.." + std::to_string(kMaxDim));
}

void require_d(const RunConfig& cfg) {
  if (cfg.d < 0) throw UsageError("--d must be nonnegative");
}

int cmd_tile(const RunConfig& cfg, std::ostream& out) {
  const auto lattice = read_lattice_file(cfg.lattice_path);
  const auto tile = build_tile(lattice, cfg.threads);
  if (cfg.ascii) {
    if (tile.dim != 2) throw UsageError("--ascii needs a 2-D lattice");
    emit(render_ascii(tile), cfg, out);
  } else {
    emit(dump_stable(to_json(to_record(tile))), cfg, out);
  }
  return kExitOk;
}

int cmd_cover(const RunConfig& cfg, std::ostream& out) {
  require_n(cfg);
  require_d(cfg);
  if (cfg.resolution < 1) throw UsageError("--resolution must be positive");
  const auto lattice = read_lattice_file(cfg.lattice_path);
  if (lattice.dim() != cfg.n) throw UsageError("lattice dimension does not match --n");
  const auto verdict = covers_discrete(cfg.n, cfg.d, lattice);
  json j = to_json(verdict);
  if (cfg.continuous) {
    const Rational dilation = cfg.d + cfg.n;
    const auto witness = continuous_cover_falsify(cfg.n, dilation, lattice, cfg.resolution, cfg.threads);
    json w = nullptr;
    if (witness) {
      w = json::array();
      for (const auto& c : *witness) w.push_back(to_string(c));
    }
    j["continuous"] = json{
        {"dilation", cfg.d + cfg.n},
        {"density", verdict.covered ? rational_to_json(lift_to_continuous(cfg.n, cfg.d, lattice).continuous_density)
                                    : json(nullptr)},
        {"resolution", cfg.resolution},
        {"falsifier_witness", w}};
  }
  emit(dump_stable(j), cfg, out);
  return cfg.expect_cover && !verdict.covered ? kExitClaimFalse : kExitOk;
}

int cmd_search(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_n(cfg);
  require_d(cfg);
  const auto report = brute_force_f(cfg.n, cfg.d, SearchOptions{cfg.index_cap, cfg.threads});
  emit(dump_stable(to_json(report)), cfg, out);
  // The witness is rebuilt through the tile path, independent of the search kernel.
  if (build_tile(report.witness).m_diameter > cfg.d) {
    err << "witness lattice fails revalidation\n";
    return kExitClaimFalse;
  }
  return kExitOk;
}

int cmd_density_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_n(cfg);
  const auto [lo, hi] = parse_range(cfg.d_range);
  std::vector<std::int64_t> ds;
  for (auto d = lo; d <= hi; ++d) ds.push_back(d);
  const auto rows = density_trend(cfg.n, ds, SearchOptions{cfg.index_cap, cfg.threads});
  emit(density_csv(rows), cfg, out);
  if (!cfg.baseline_path.empty()) {
    const auto baseline = search_report_from_json(json::parse(read_file(cfg.baseline_path)));
    if (baseline.n != cfg.n) throw UsageError("baseline report has a different n");
    for (const auto& row : rows) {
      if (row.d != baseline.d) continue;
      const Rational expected = make_rational(baseline.binomial_cap, baseline.f_value);
      if (row.min_density != expected || row.witness != baseline.witness) {
        err << "regression at d=" << row.d << ": density " << to_string(row.min_density) << " vs baseline "
            << to_string(expected) << "\n";
        return kExitClaimFalse;
      }
    }
  }
  return kExitOk;
}

int cmd_verify_bounds(const RunConfig& cfg, std::ostream& out) {
  BoundCheckConfig config;
  try {
    config.d_star = parse_rational(cfg.d_star);
    if (!cfg.v.empty()) config.v_values.push_back(parse_rational(cfg.v));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (config.d_star <= 0) throw UsageError("--d-star must be positive");
  for (const auto& v : config.v_values)
    if (v < 0 || v > config.d_star / 4) throw UsageError("--v must lie in [0, d*/4]");
  if (cfg.samples == 0 || cfg.nodes < 1) throw UsageError("--samples and --nodes must be positive");
  config.integration.method = cfg.method == "quad" ? IntegrationMethod::nested_quadrature : IntegrationMethod::monte_carlo;
  config.integration.samples = cfg.samples;
  config.integration.seed = cfg.seed;
  config.integration.nodes = cfg.nodes;
  config.integration.threads = cfg.threads;

  const auto checks = run_bound_checks(config);
  std::string content;
  if (cfg.as_json) {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back(to_json(c));
    content = dump_stable(arr);
  } else {
    std::ostringstream table;
    for (const auto& c : checks) {
      char line[256];
      std::snprintf(line, sizeof line, "%-4s %-36s est=%.12g closed=%.12g rel=%.3g se=%.3g\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.estimate, c.closed_form, c.rel_err, c.std_err);
      table << line;
    }
    content = table.str();
  }
  emit(content, cfg, out);
  const bool all_pass = std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
  return all_pass ? kExitOk : kExitClaimFalse;
}

int cmd_theta_bounds(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n_max < 2 || cfg.n_max > kMaxDim) throw UsageError("--n-max must be in 2.." + std::to_string(kMaxDim));
  const auto [lo, hi] = parse_range(cfg.d_range.empty() ? std::string("0..10") : cfg.d_range);
  if (cfg.as_json) {
    json theta = json::array();
    json upper = json::array();
    for (int n = 2; n <= cfg.n_max; ++n) {
      const auto t = theta_lower_bound(n);
      theta.push_back(json{{"n", n}, {"value", rational_to_json(t)}, {"decimal", round_significant(to_double(t))}});
      for (auto d = lo; d <= hi; ++d) {
        const auto u = fn_upper_bound(n, d);
        upper.push_back(json{{"n", n}, {"d", d}, {"value", rational_to_json(u)}, {"floor", bigint_to_json(floor(u))}});
      }
    }
    emit(dump_stable(json{{"theta_lower_bound", theta}, {"fn_upper_bound", upper}}), cfg, out);
  } else {
    std::ostringstream text;
    text << "n,theta_lower_bound,decimal\n";
    for (int n = 2; n <= cfg.n_max; ++n) {
      const auto t = theta_lower_bound(n);
      text << n << ',' << to_string(t) << ',' << round_significant(to_double(t)) << '\n';
    }
    text << "\nn,d,fn_upper_bound,floor\n";
    for (int n = 2; n <= cfg.n_max; ++n)
      for (auto d = lo; d <= hi; ++d) {
        const auto u = fn_upper_bound(n, d);
        text << n << ',' << d << ',' << to_string(u) << ',' << floor(u) << '\n';
      }
    emit(text.str(), cfg, out);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cayley tiles, simplex lattice coverings and the degree-diameter function"};
  app.name("simplexcover");
  app.require_subcommand(1);
  RunConfig cfg;

  auto* tile = app.add_subcommand("tile", "Build the Cayley tile of a lattice");
  tile->add_option("--lattice", cfg.lattice_path, "Lattice JSON file")->required();
  auto* tile_json = tile->add_flag("--json", cfg.as_json, "JSON output (default)");
  tile->add_flag("--ascii", cfg.ascii, "ASCII grid (2-D only)")->excludes(tile_json);
  tile->add_option("--out", cfg.out_path, "Write output to a file");
  tile->add_option("--threads", cfg.threads, "Worker threads");

  auto* cover = app.add_subcommand("cover", "Decide S°(n,d) + L = Z^n");
  cover->add_option("--n", cfg.n)->required();
  cover->add_option("--d", cfg.d)->required();
  cover->add_option("--lattice", cfg.lattice_path)->required();
  cover->add_flag("--continuous", cfg.continuous, "Also run the continuous S(n,d+n) falsifier");
  cover->add_option("--resolution", cfg.resolution, "Falsifier grid resolution");
  cover->add_flag("--expect-cover", cfg.expect_cover, "Exit 1 when the lattice does not cover");
  cover->add_option("--threads", cfg.threads);
  cover->add_option("--out", cfg.out_path);

  auto* table = app.add_subcommand("density-table", "Minimum discrete covering density for a range of d (CSV)");
  table->add_option("--n", cfg.n)->required();
  table->add_option("--d-range", cfg.d_range, "A..B")->required();
  table->add_option("--index-cap", cfg.index_cap);
  table->add_option("--threads", cfg.threads);
  table->add_option("--out", cfg.out_path);
  table->add_option("--baseline", cfg.baseline_path, "search-f report to compare against");

  auto* search = app.add_subcommand("search-f", "Exhaustive search for f(n,d)");
  search->add_option("--n", cfg.n)->required();
  search->add_option("--d", cfg.d)->required();
  search->add_option("--index-cap", cfg.index_cap);
  search->add_option("--threads", cfg.threads);
  search->add_option("--out", cfg.out_path);

  auto* verify = app.add_subcommand("verify-bounds", "Numeric and exact checks of the 4-D volume bounds");
  verify->add_option("--d-star", cfg.d_star, "Tile M-diameter (integer, p/q or decimal)");
  verify->add_option("--v", cfg.v, "Notch coordinate; default d*/8, d*/7, d*/4");
  verify->add_option("--samples", cfg.samples);
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--method", cfg.method)->check(CLI::IsMember({"mc", "quad"}));
  verify->add_option("--nodes", cfg.nodes, "Quadrature nodes per axis");
  verify->add_flag("--json", cfg.as_json);
  verify->add_option("--threads", cfg.threads);
  verify->add_option("--out", cfg.out_path);

  auto* theta = app.add_subcommand("theta-bounds", "Tables of the closed-form density and order bounds");
  theta->add_option("--n-max", cfg.n_max);
  theta->add_option("--d-range", cfg.d_range);
  theta->add_flag("--json", cfg.as_json);
  theta->add_option("--out", cfg.out_path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (tile->parsed()) return cmd_tile(cfg, out);
    if (cover->parsed()) return cmd_cover(cfg, out);
    if (table->parsed()) return cmd_density_table(cfg, out, err);
    if (search->parsed()) return cmd_search(cfg, out, err);
    if (verify->parsed()) return cmd_verify_bounds(cfg, out);
    if (theta->parsed()) return cmd_theta_bounds(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const NotACovering& e) {
    err << e.what() << "\n";
    return kExitClaimFalse;
  } catch (const json::exception& e) {
    err << "bad JSON input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace simplexcover
