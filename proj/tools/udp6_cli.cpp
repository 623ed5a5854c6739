// udp6: command-line front end.
//
// Exit codes: 0 ok, 1 input/validation error, 2 branch-cap truncation,
// 3 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "udp6/evolution.hpp"
#include "udp6/families.hpp"
#include "udp6/io.hpp"
#include "udp6/params.hpp"
#include "udp6/qp6_oracle.hpp"
#include "udp6/riccati.hpp"

using namespace udp6;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kInput = 1, kTruncated = 2, kVerify = 3 };

struct Window {
  Index lo = 0, hi = 0;
};

Window parse_window(const std::string& text) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw ParseError("window must look like lo:hi, got '" + text + "'");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    Window w{std::stol(a, &used), 0};
    if (used != a.size()) throw ParseError("");
    w.hi = std::stol(b, &used);
    if (used != b.size()) throw ParseError("");
    if (w.lo > w.hi) throw ParseError("window lo exceeds hi in '" + text + "'");
    return w;
  } catch (const ParseError& e) {
    if (*e.what()) throw;
  } catch (const std::exception&) {
  }
  throw ParseError("window must look like lo:hi with integers, got '" + text + "'");
}

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad eps value '" + item + "'");
    }
  }
  return out;
}

// Writes to the --out path atomically, or to stdout.
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file_atomically(path, content);
}

std::string render_tables(const std::vector<SolutionTable>& tables, bool truncated, const std::string& format) {
  std::ostringstream out;
  if (format == "json")
    write_tables_json(out, tables, truncated);
  else
    write_tables_csv(out, tables);
  return out.str();
}

// Deterministic across standard libraries: plain modulo mapping on mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  long uniform(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(gen_() % span);
  }

 private:
  std::mt19937_64 gen_;
};

Params random_constrained_params(Rng& rng) {
  Params p;
  p.q = rng.uniform(1, 100);
  for (auto& v : p.a) v = rng.uniform(-50, 50);
  for (auto& v : p.b) v = rng.uniform(-50, 50);
  p.b[0] = p.q + p.a[0] + p.a[1] + p.b[2] + p.b[3] - p.b[1] - p.a[2] - p.a[3];
  return p;
}

json failures_json(const std::vector<ResidualFailure>& failures) {
  json out = json::array();
  for (const auto& f : failures)
    out.push_back({{"m", f.m}, {"equation", to_string(f.equation)}, {"balance", f.balance.describe()}});
  return out;
}

json tail_json(const LinearTail& t) {
  if (!t.detected) return {{"detected", false}};
  return {{"detected", true},
          {"m0", t.m0},
          {"alpha", rational_to_json(t.ansatz.alpha)},
          {"beta", rational_to_json(t.ansatz.beta)},
          {"gamma", rational_to_json(t.ansatz.gamma)},
          {"slopes_consistent", t.slopes_consistent},
          {"identity", t.identity},
          {"alpha_in_range", t.alpha_in_range},
          {"inequalities_edge", t.inequalities_edge ? json(*t.inequalities_edge) : json(nullptr)}};
}

// ---------------------------------------------------------------------------

struct Common {
  std::string params_path;
  std::string out_path;
  std::string format = "csv";
};

int cmd_evolve(const Common& c, const std::string& y0, const std::string& z0, Index m0, const std::string& window,
               std::size_t cap) {
  const Params p = load_params(c.params_path);
  require_constraint(p);
  const Window w = parse_window(window);
  const BranchTree tree = evolve(p, {m0, parse_parity_pair(y0), parse_parity_pair(z0)}, {w.lo, w.hi, cap});
  emit(c.out_path, render_tables(tree.tables(), tree.truncated, c.format));
  if (tree.truncated) {
    std::cerr << "udp6: branch cap " << cap << " reached; output truncated\n";
    return kTruncated;
  }
  return kOk;
}

int cmd_verify(const Common& c, const std::string& table_path, const std::string& equations) {
  if (equations != "udp6" && equations != "riccati" && equations != "both")
    throw ParseError("--equations must be udp6, riccati or both");
  const Params p = load_params(c.params_path);
  const auto tables = load_tables(table_path);
  if (tables.empty()) throw ParseError("table file '" + table_path + "' has no rows");

  json report = json::array();
  bool ok = true;
  for (std::size_t k = 0; k < tables.size(); ++k) {
    std::vector<ResidualFailure> failures;
    if (equations != "riccati") failures = check_table(p, tables[k]);
    if (equations != "udp6") {
      auto more = check_riccati_table(p, tables[k]);
      failures.insert(failures.end(), more.begin(), more.end());
    }
    ok = ok && failures.empty();
    report.push_back({{"branch", k}, {"rows", tables[k].size()}, {"failures", failures_json(failures)}});
    for (const auto& f : failures)
      std::cerr << "branch " << k << ": " << to_string(f.equation) << " fails at m=" << f.m << " ("
                << f.balance.describe() << ")\n";
  }
  emit(c.out_path, json{{"ok", ok}, {"branches", report}}.dump(2) + "\n");
  return ok ? kOk : kVerify;
}

int cmd_riccati(const Common& c, const std::string& y0, Index m0, const std::string& window,
                const std::string& sampling, std::size_t cap) {
  const Params p = load_params(c.params_path);
  const Window w = parse_window(window);
  const auto result = riccati_evolve(p, m0, parse_parity_pair(y0), w.lo, w.hi, parse_sampling(sampling), cap);
  for (const auto& d : result.dead_ends) std::cerr << "udp6: dead end: " << d << '\n';
  if (result.tables.empty()) {
    std::cerr << "udp6: no Riccati solution through the initial value on this window\n";
    return kVerify;
  }
  emit(c.out_path, render_tables(result.tables, result.truncated, c.format));
  return result.truncated ? kTruncated : kOk;
}

int cmd_families(const Common& c, bool list, const std::string& id, const std::string& cval,
                 std::optional<Index> m0, const std::string& alpha, const std::string& beta,
                 const std::string& gamma, const std::string& window) {
  if (list) {
    json out = json::array();
    for (const auto& f : family_catalog())
      out.push_back({{"id", to_string(f.id)}, {"free", f.free_parameters}, {"summary", f.summary}});
    emit(c.out_path, out.dump(2) + "\n");
    return kOk;
  }
  if (id.empty()) throw ParseError("families needs --id or --list");
  if (c.params_path.empty()) throw ParseError("families needs --params");
  const Params p = load_params(c.params_path);
  FamilySpec spec;
  spec.id = parse_family_id(id);
  if (!cval.empty()) spec.c = parse_rational(cval);
  spec.m0 = m0;
  if (!alpha.empty() || !beta.empty() || !gamma.empty()) {
    if (alpha.empty() || beta.empty() || gamma.empty()) throw ParseError("--alpha, --beta and --gamma go together");
    spec.ansatz = LinearAnsatz{parse_rational(alpha), parse_rational(beta), parse_rational(gamma)};
  }
  const Window w = parse_window(window);
  const FamilyInstance inst = instantiate_family(spec, p, w.lo, w.hi);

  if (c.format == "csv") {
    emit(c.out_path, render_tables({inst.table}, false, "csv"));
    for (const auto& v : inst.violated()) std::cerr << "violated: " << v.expr << " (" << v.detail << ")\n";
  } else {
    json conds = json::array();
    for (const auto& k : inst.conditions) conds.push_back({{"expr", k.expr}, {"holds", k.holds}, {"detail", k.detail}});
    json out{{"family", to_string(spec.id)},
             {"params", params_to_json(p)},
             {"valid", inst.valid},
             {"conditions", conds},
             {"rows", table_to_json(inst.table)}};
    emit(c.out_path, out.dump(2) + "\n");
  }
  return inst.valid ? kOk : kVerify;
}

int cmd_conjecture(const Common& c, std::size_t n, const std::string& window, std::uint64_t seed, Index w_len) {
  const Window w = parse_window(window);
  std::optional<Params> fixed;
  if (!c.params_path.empty()) {
    fixed = load_params(c.params_path);
    require_constraint(*fixed);
  }
  Rng rng(seed);
  std::size_t detected = 0, consistent = 0;
  json candidates = json::array();
  for (std::size_t run = 0; run < n; ++run) {
    const Params p = fixed ? *fixed : random_constrained_params(rng);
    const Rational y0 = rng.uniform(-100, 100), z0 = rng.uniform(-100, 100);
    const Index m0 = (w.lo <= 0 && 0 <= w.hi) ? 0 : w.lo;
    const SolutionTable t = evolve_noparity(p, m0, y0, z0, w.lo, w.hi);
    const LinearityReport r = detect_asymptotic_linearity(p, t, w_len);
    if (r.forward.detected && r.backward.detected) ++detected;
    if (r.conjecture_consistent()) {
      ++consistent;
    } else if (candidates.size() < 50) {
      candidates.push_back({{"run", run},
                            {"params", params_to_json(p)},
                            {"Y0", rational_to_json(y0)},
                            {"Z0", rational_to_json(z0)},
                            {"forward", tail_json(r.forward)},
                            {"backward", tail_json(r.backward)}});
    }
  }
  json out{{"runs", n},
           {"seed", seed},
           {"window", {w.lo, w.hi}},
           {"linear_detected", detected},
           {"conjecture_consistent", consistent},
           {"counterexample_candidates_total", n - consistent},
           {"counterexample_candidates", candidates}};
  emit(c.out_path, out.dump(2) + "\n");
  return kOk;
}

int cmd_qlimit(const Common& c, const std::string& table_path, const std::string& y0, const std::string& z0,
               const std::string& eps, const std::string& window) {
  const Params p = load_params(c.params_path);
  require_constraint(p);
  const Window w = parse_window(window);
  SolutionTable table;
  if (!table_path.empty()) {
    const auto tables = load_tables(table_path);
    if (tables.empty()) throw ParseError("table file '" + table_path + "' has no rows");
    table = tables.front();
  } else {
    if (y0.empty() || z0.empty()) throw ParseError("qlimit needs --table or both --y0 and --z0");
    const BranchTree tree = evolve(p, {w.lo, parse_parity_pair(y0), parse_parity_pair(z0)}, {w.lo, w.hi, 1});
    table = tree.tables().front();
    if (tree.truncated) std::cerr << "udp6: initial value branches; comparing the first branch\n";
  }
  const LimitReport report = ud_limit_compare(p, table, parse_eps_list(eps), w.lo, w.hi);
  std::ostringstream out;
  write_limit_report_csv(out, report);
  emit(c.out_path, out.str());
  for (const auto& v : report.verdicts)
    if (!(v.monotone && v.converging && v.signs_ok))
      std::cerr << "m=" << v.m << ": monotone=" << v.monotone << " converging=" << v.converging
                << " signs_ok=" << v.signs_ok << " cancellation=" << v.cancellation << '\n';
  if (report.abort_reason) std::cerr << "udp6: aborted: " << *report.abort_reason << '\n';
  return report.all_converging() ? kOk : kVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ultradiscrete Painleve VI with parity variables"};
  app.require_subcommand(1);

  Common common;
  const auto add_common = [&](CLI::App* sub, bool params_required) {
    auto* opt = sub->add_option("--params", common.params_path, "parameter JSON file");
    if (params_required) opt->required();
    sub->add_option("--out,-o", common.out_path, "output path (default stdout)");
    sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  std::string y0, z0, window = "0:0", table_path, equations = "udp6", sampling = "endpoints", id, cval, alpha,
                      beta, gamma, eps = "1,0.5,0.2,0.1";
  Index m0 = 0, w_len = 3;
  std::optional<Index> fam_m0;
  std::size_t cap = 64, n = 100;
  std::uint64_t seed = 0;
  bool list = false;

  auto* evolve_cmd = app.add_subcommand("evolve", "parity evolution from an initial state");
  add_common(evolve_cmd, true);
  evolve_cmd->add_option("--y0", y0, "initial y as sign:amplitude")->required();
  evolve_cmd->add_option("--z0", z0, "initial z as sign:amplitude")->required();
  evolve_cmd->add_option("--m0", m0, "index of the initial state");
  evolve_cmd->add_option("--window", window, "lo:hi");
  evolve_cmd->add_option("--max-branches", cap)->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "check a table against the residuals");
  add_common(verify_cmd, true);
  verify_cmd->add_option("--table", table_path)->required();
  verify_cmd->add_option("--equations", equations, "udp6, riccati or both");

  auto* riccati_cmd = app.add_subcommand("riccati", "Riccati-type evolution");
  add_common(riccati_cmd, true);
  riccati_cmd->add_option("--y0", y0, "y at m0 as sign:amplitude")->required();
  riccati_cmd->add_option("--m0", m0);
  riccati_cmd->add_option("--window", window);
  riccati_cmd->add_option("--sampling", sampling, "endpoints, midpoint or all-breakpoints");
  riccati_cmd->add_option("--max-tables", cap)->check(CLI::PositiveNumber);

  auto* families_cmd = app.add_subcommand("families", "closed-form solution families");
  add_common(families_cmd, false);
  families_cmd->add_flag("--list", list);
  families_cmd->add_option("--id", id);
  families_cmd->add_option("--c", cval, "c or c'");
  families_cmd->add_option("--m0", fam_m0);
  families_cmd->add_option("--alpha", alpha);
  families_cmd->add_option("--beta", beta);
  families_cmd->add_option("--gamma", gamma);
  families_cmd->add_option("--window", window);

  auto* conjecture_cmd = app.add_subcommand("conjecture", "seeded asymptotic-linearity scan");
  add_common(conjecture_cmd, false);
  conjecture_cmd->add_option("--n", n);
  conjecture_cmd->add_option("--window", window);
  conjecture_cmd->add_option("--seed", seed);
  conjecture_cmd->add_option("--w", w_len, "affine detection length");

  auto* qlimit_cmd = app.add_subcommand("qlimit", "compare a table with the q-system as eps -> 0");
  add_common(qlimit_cmd, true);
  qlimit_cmd->add_option("--table", table_path);
  qlimit_cmd->add_option("--y0", y0);
  qlimit_cmd->add_option("--z0", z0);
  qlimit_cmd->add_option("--eps", eps, "comma-separated decreasing schedule");
  qlimit_cmd->add_option("--window", window);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*evolve_cmd) return cmd_evolve(common, y0, z0, m0, window, cap);
    if (*verify_cmd) return cmd_verify(common, table_path, equations);
    if (*riccati_cmd) return cmd_riccati(common, y0, m0, window, sampling, cap);
    if (*families_cmd) {
      if (!families_cmd->count("--format")) common.format = "json";
      return cmd_families(common, list, id, cval, fam_m0, alpha, beta, gamma, window);
    }
    if (*conjecture_cmd) {
      if (!conjecture_cmd->count("--window")) window = "-50:50";
      return cmd_conjecture(common, n, window, seed, w_len);
    }
    if (*qlimit_cmd) return cmd_qlimit(common, table_path, y0, z0, eps, window);
  } catch (const std::exception& e) {
    std::cerr << "udp6: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
