/*
 * Copyright 2026 The ttorus Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "ttorus/dirac.hpp"
#include "ttorus/serialize.hpp"
#include "ttorus/svg.hpp"
#include "ttorus/triple.hpp"

namespace ttorus::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::pair<std::string, Command>> kCommands = {
    {"spectrum", Command::spectrum}, {"verify", Command::verify},
    {"index", Command::index},       {"summability", Command::summability},
    {"sweep", Command::sweep},       {"wedge", Command::wedge},
    {"polar", Command::polar}};

/// Everything a command produces before it is written to disk.
struct Outcome {
  std::vector<Check> checks;
  Json data = Json::object();
  std::optional<std::string> csv;
  std::optional<PlotSpec> plot;
};

void add_check(Outcome& out, std::string name, double value, double tol) {
  out.checks.push_back({std::move(name), value, tol, value <= tol});
}

/// Copies a report's checks, optionally regraded against `tol`.
void absorb(Outcome& out, const VerificationReport& r, std::optional<double> tol = std::nullopt) {
  if (r.precondition_violation) {
    out.checks.push_back({r.name + "/precondition", kNaN, 0.0, false});
    return;
  }
  for (Check c : r.checks) {
    c.name = r.name + "/" + c.name;
    if (tol) {
      c.tolerance = *tol;
      c.passed = c.value <= *tol;
    }
    out.checks.push_back(std::move(c));
  }
}

Outcome run_spectrum(const RunConfig& cfg) {
  const int n = cfg.n;
  const DiracBlock d(n);
  const SpectrumReport s = spectrum(d);
  Outcome out;

  double ladder = std::numeric_limits<double>::infinity();
  int multiplicity_errors = 0;
  if (s.distinct.size() == std::size_t(2 * n - 1)) {
    ladder = 0.0;
    for (int k = -(n - 1); k <= n - 1; ++k) {
      ladder = std::max(ladder, std::abs(s.distinct[k + n - 1] - k));
      multiplicity_errors += s.multiplicities[k + n - 1] != (k == 0 ? 2 : 1);
    }
  } else {
    multiplicity_errors = 2 * n - 1;
  }
  double residual = 0.0;
  for (double r : s.residuals) residual = std::max(residual, r);
  double eigenbasis = 0.0;
  for (int k = -(n - 2); k <= n - 2; ++k) {
    const Vector b = analytic_eigenvector(k, n);
    eigenbasis = std::max(eigenbasis, (d.assembled().entries() * b - double(k) * b).norm());
  }
  add_check(out, "ladder_deviation", ladder, cfg.tol.residual * n);
  add_check(out, "multiplicity_mismatches", multiplicity_errors, 0.0);
  add_check(out, "max_eigenpair_residual", residual, cfg.tol.residual);
  add_check(out, "spurious_count_minus_one", std::abs(double(s.spurious.size()) - 1.0), 0.0);
  add_check(out, "eigenbasis_residual", eigenbasis, cfg.tol.eigenbasis);

  out.data = to_json(s);
  out.csv = to_csv(s);
  PlotSpec plot{"Truncated Dirac spectrum, n = " + std::to_string(n), "index", "eigenvalue",
                false, false, {}};
  PlotSeries all{"eigenvalues", {}, {}, true}, bad{"spurious", {}, {}, true};
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    const bool spurious = std::find(s.spurious.begin(), s.spurious.end(), int(i)) != s.spurious.end();
    PlotSeries& target = spurious ? bad : all;
    target.x.push_back(double(i));
    target.y.push_back(s.eigenvalues[i]);
  }
  plot.series = {all, bad};
  out.plot = plot;
  return out;
}

Outcome run_verify(const RunConfig& cfg) {
  const FourierSeries f = load_symbol(cfg.symbol_spec);
  const int n = cfg.n;
  const int b = f.bandwidth();
  const double tol = cfg.tol.identity;
  Outcome out;
  Json reports = Json::array();
  auto take = [&](const VerificationReport& r, std::optional<double> regrade = std::nullopt) {
    absorb(out, r, regrade);
    reports.push_back(to_json(r));
  };
  take(verify_commutator_N(f, n, cfg.margin.value_or(b), tol));
  take(verify_commutator_dz(f, n, cfg.margin.value_or(b + 1), tol));
  for (int k = 1; k <= 3; ++k) take(verify_delta_k(f, k, n, cfg.margin.value_or(k * b), tol));
  const AlgebraElement a = AlgebraElement::toeplitz_unchecked(f);
  take(verify_dzstar_via_adjoint(a, n, cfg.margin.value_or(b + 1), tol));
  take(evenness_check(a, n));
  take(membership_check(a, n));
  out.data = Json{{"symbol", to_json(f)}, {"reports", reports}};
  return out;
}

std::vector<std::pair<int, int>> index_pairs(const RunConfig& cfg) {
  const std::vector<int> sizes = cfg.sizes_given ? cfg.sizes : std::vector<int>{16, 32, 64, 128};
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) pairs.emplace_back(sizes[i], sizes[i + 1]);
  return pairs;
}

Outcome run_index(const RunConfig& cfg) {
  Outcome out;
  Json reports = Json::array();
  std::ostringstream csv;
  csv << "n_small,n_large,index,minus_plus_index\n";
  for (auto [a, b] : index_pairs(cfg)) {
    const IndexReport r = index_report(a, b);
    const std::string tag = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    add_check(out, "index_minus_one" + tag, std::abs(r.index - 1.0), 0.0);
    add_check(out, "exact_minus_numeric" + tag, std::abs(double(r.exact.index() - r.numeric_large.index())),
              0.0);
    add_check(out, "minus_plus_index_plus_one" + tag, std::abs(r.minus_plus_index + 1.0), 0.0);
    Json j = to_json(r);
    j["n_small"] = a;
    j["n_large"] = b;
    reports.push_back(j);
    csv << a << ',' << b << ',' << r.index << ',' << r.minus_plus_index << '\n';
  }
  out.data = Json{{"pairs", reports}};
  out.csv = csv.str();
  return out;
}

Outcome run_summability(const RunConfig& cfg) {
  const double eps = cfg.epsilon.value_or(0.0);
  const SummabilityDiagnostic d = summability_diagnostic(eps, cfg.K);
  Outcome out;
  if (eps == 0.0) {
    const double want = 2.0 * std::log(2.0);
    add_check(out, "doubling_increment_vs_2ln2", std::abs(d.doubling_increment - want) / want,
              cfg.tol.divergence);
  } else {
    // Σ_{k ∈ ℤ} (1+|k|)^{-(1+ε)} = 2ζ(1+ε) - 1 must lie in the tail bracket.
    const double limit = 2.0 * std::riemann_zeta(1.0 + eps) - 1.0;
    const double lo = d.partial_sum + d.tail_lower, hi = d.partial_sum + d.tail_upper;
    add_check(out, "limit_outside_bracket", std::max({lo - limit, limit - hi, 0.0}), 1e-12);
    out.data["zeta_limit"] = limit;
  }
  out.data["diagnostic"] = to_json(d);

  std::ostringstream csv;
  csv << "K,partial_sum\n";
  PlotSpec plot{"Partial sums, eps = " + std::to_string(eps), "K", "partial sum", true, false, {}};
  PlotSeries curve{"partial sum", {}, {}, false};
  for (std::int64_t k = 1;; k *= 2) {
    const std::int64_t kk = std::min(k, cfg.K);
    const double s = summability_partial_sum(eps, kk);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", s);
    csv << kk << ',' << buf << '\n';
    curve.x.push_back(double(kk));
    curve.y.push_back(s);
    if (kk == cfg.K) break;
  }
  plot.series = {curve};
  out.csv = csv.str();
  out.plot = plot;
  return out;
}

SweepKind sweep_kind(const RunConfig& cfg) {
  if (cfg.sweep_target == "dirac") return {SweepTarget::dirac_commutator, 0};
  if (cfg.sweep_target == "delta") return {SweepTarget::delta, cfg.order};
  if (cfg.sweep_target == "delta_dz") return {SweepTarget::delta_dz, cfg.order};
  throw ConfigError("unknown sweep target '" + cfg.sweep_target + "' (dirac, delta, delta_dz)");
}

Outcome run_sweep(const RunConfig& cfg) {
  const SweepKind kind = sweep_kind(cfg);
  const SweepReport r =
      cfg.symbol_spec == "rough"
          ? boundedness_sweep(rough_symbol_control, cfg.sizes, kind)
          : boundedness_sweep(AlgebraElement::toeplitz(load_symbol(cfg.symbol_spec)), cfg.sizes, kind);
  Outcome out;
  const double last = r.values.back(), prev = r.values[r.values.size() - 2];
  const double change = std::abs(last - prev) / std::max(std::abs(last), 1e-300);
  add_check(out, "last_step_relative_change", last == prev ? 0.0 : change, cfg.tol.stabilization);
  out.data = to_json(r);
  out.csv = to_csv(r);
  std::vector<double> x(r.sizes.begin(), r.sizes.end());
  PlotSpec plot{"Norm sweep " + r.label, "n", "norm", true, true, {}};
  plot.series = {{"estimate", x, r.values, false}, {"leading section", x, r.section_norms, true}};
  out.plot = plot;
  return out;
}

Outcome run_wedge(const RunConfig& cfg) {
  const FourierSeries f = load_symbol(cfg.symbol_spec);
  const WedgeReport w = wedge_check(f, cfg.tol.wedge);
  Outcome out;
  add_check(out, "wedge_first", w.max_violation_first, cfg.tol.wedge);
  add_check(out, "wedge_second", w.max_violation_second, cfg.tol.wedge);
  out.data = Json{{"symbol", to_json(f)}, {"wedge", to_json(w)}};
  return out;
}

Outcome run_polar(const RunConfig& cfg) {
  Outcome out;
  const VerificationReport r = polar_check(cfg.n, cfg.margin.value_or(2));
  absorb(out, r, cfg.tol.residual);
  out.data = to_json(r);
  return out;
}

Outcome dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::spectrum: return run_spectrum(cfg);
    case Command::verify: return run_verify(cfg);
    case Command::index: return run_index(cfg);
    case Command::summability: return run_summability(cfg);
    case Command::sweep: return run_sweep(cfg);
    case Command::wedge: return run_wedge(cfg);
    case Command::polar: return run_polar(cfg);
  }
  throw std::logic_error("unknown command");
}

Json config_json(const RunConfig& cfg) {
  Json j;
  j["command"] = command_name(cfg.command);
  j["n"] = cfg.n;
  j["sizes"] = cfg.sizes;
  j["epsilon"] = cfg.epsilon ? Json(*cfg.epsilon) : Json(nullptr);
  j["K"] = cfg.K;
  j["symbol"] = cfg.symbol_spec;
  j["margin"] = cfg.margin ? Json(*cfg.margin) : Json(nullptr);
  j["sweep_target"] = cfg.sweep_target;
  j["order"] = cfg.order;
  j["output_dir"] = cfg.output_dir.string();
  j["emit_svg"] = cfg.emit_svg;
  j["tolerances"] = Json{{"identity", cfg.tol.identity},       {"residual", cfg.tol.residual},
                         {"eigenbasis", cfg.tol.eigenbasis},   {"wedge", cfg.tol.wedge},
                         {"stabilization", cfg.tol.stabilization},
                         {"divergence", cfg.tol.divergence}};
  return j;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream os(p, std::ios::binary);
  os << body;
  if (!os) throw std::runtime_error("cannot write " + p.string());
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad number in " + what + ": '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("bad number in " + what + ": '" + s + "'");
  return v;
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [name, cmd] : kCommands)
    if (cmd == c) return name;
  return "?";
}

void RunConfig::validate() const {
  if (n < 2) throw ConfigError("--n must be >= 2");
  if (sizes.empty()) throw ConfigError("--sizes must not be empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 2) throw ConfigError("--sizes entries must be >= 2");
    if (i && sizes[i] <= sizes[i - 1]) throw ConfigError("--sizes must be strictly increasing");
  }
  if (epsilon && !(*epsilon >= 0.0)) throw ConfigError("--epsilon must be >= 0");
  if (K < 1) throw ConfigError("--K must be >= 1");
  if (margin && *margin < 0) throw ConfigError("--margin must be >= 0");
  if (order < 0) throw ConfigError("--order must be >= 0");
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Truncated Toeplitz torus spectral triple checks", "ttorus_cli"};
  app.require_subcommand(1);
  std::string output_dir;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "truncation size");
    sub->add_option("--output-dir", output_dir, "directory for report.json, data.csv, plot.svg");
    sub->add_flag("--svg", cfg.emit_svg, "also write plot.svg");
    sub->add_option("--tol-identity", cfg.tol.identity);
    sub->add_option("--tol-residual", cfg.tol.residual);
    sub->add_option("--tol-eigenbasis", cfg.tol.eigenbasis);
    sub->add_option("--tol-wedge", cfg.tol.wedge);
    sub->add_option("--tol-stabilization", cfg.tol.stabilization);
    sub->add_option("--tol-divergence", cfg.tol.divergence);
  };
  std::vector<int> sizes;
  double epsilon = 0.0;
  CLI::Option* epsilon_option = nullptr;
  for (const auto& [name, cmd] : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub);
    const Command c = cmd;
    sub->callback([&cfg, c] { cfg.command = c; });
    if (c == Command::verify || c == Command::wedge || c == Command::sweep)
      sub->add_option("--symbol", cfg.symbol_spec, "cos4k:k, const:c, rough (sweep), or a sample file");
    if (c == Command::verify || c == Command::polar)
      sub->add_option("--margin", cfg.margin, "interior margin (auto if absent)");
    if (c == Command::sweep || c == Command::index)
      sub->add_option("--sizes", sizes, "increasing truncation sizes")->delimiter(',');
    if (c == Command::sweep) {
      sub->add_option("--target", cfg.sweep_target, "dirac, delta or delta_dz");
      sub->add_option("--order", cfg.order, "k for the iterated delta");
    }
    if (c == Command::summability) {
      epsilon_option = sub->add_option("--epsilon", epsilon, "exponent offset");
      sub->add_option("--K", cfg.K, "cut-off");
    }
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    throw HelpRequested(subs.empty() ? app.help() : subs.front()->help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  if (!sizes.empty()) {
    cfg.sizes = sizes;
    cfg.sizes_given = true;
  }
  if (epsilon_option && epsilon_option->count()) cfg.epsilon = epsilon;
  if (!output_dir.empty()) {
    cfg.output_dir = output_dir;
  } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    cfg.output_dir = env;
  }
  cfg.validate();
  return cfg;
}

FourierSeries load_symbol(const std::string& spec) {
  if (spec.rfind("cos4k:", 0) == 0) {
    const double k = parse_real(spec.substr(6), "symbol");
    if (k < 0 || k != std::floor(k) || k > 1e6) throw ConfigError("cos4k:k needs an integer k >= 0");
    if (k == 0) return FourierSeries::constant(1.0);
    return FourierSeries::cosine(4 * int(k));
  }
  if (spec.rfind("const:", 0) == 0) return FourierSeries::constant(parse_real(spec.substr(6), "symbol"));
  if (!std::filesystem::is_regular_file(spec))
    throw ConfigError("unknown symbol '" + spec + "' (cos4k:k, const:c, or a sample file)");
  std::ifstream in(spec);
  if (!in) throw ConfigError("cannot read sample file " + spec);
  std::vector<Complex> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream fields(line);
    std::string re, im, extra;
    if (!(fields >> re)) continue;
    fields >> im;
    if (fields >> extra)
      throw ConfigError(spec + ":" + std::to_string(line_no) + ": expected 're' or 're im'");
    const std::string where = spec + ":" + std::to_string(line_no);
    samples.emplace_back(parse_real(re, where), im.empty() ? 0.0 : parse_real(im, where));
  }
  try {
    return from_samples(samples);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(spec + ": " + e.what());
  }
}

int exit_status_for(const std::exception& e) {
  // ConfigError, NotInAlgebra and precondition failures of the library all
  // derive from invalid_argument: the request itself was unusable.
  if (dynamic_cast<const std::invalid_argument*>(&e)) return kExitUsage;
  return kExitNumerical;
}

int run(const RunConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  const std::filesystem::path report_path = config.output_dir / "report.json";
  {
    std::ofstream probe(report_path, std::ios::app);
    if (!probe) {
      std::cerr << "ttorus_cli: output directory " << config.output_dir << " is not writable\n";
      return kExitUsage;
    }
  }

  Json report;
  report["command"] = command_name(config.command);
  report["config"] = config_json(config);
  int status = kExitPass;
  Outcome out;
  std::optional<Json> error;
  try {
    config.validate();
    out = dispatch(config);
  } catch (const std::exception& e) {
    status = exit_status_for(e);
    error = Json{{"kind", status == kExitUsage ? "usage" : "numerical"}, {"message", e.what()}};
  }
  if (error) {
    out = Outcome{};
    out.checks.push_back({"completed", kNaN, 0.0, false});
  }

  Json checks = Json::array();
  bool all_passed = !out.checks.empty();
  for (const Check& c : out.checks) {
    checks.push_back(Json{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance},
                          {"passed", c.passed}});
    all_passed = all_passed && c.passed;
  }
  if (!error && !all_passed) status = kExitCheckFailure;

  Json artifacts = Json::array();
  try {
    if (out.csv) {
      write_file(config.output_dir / "data.csv", *out.csv);
      artifacts.push_back("data.csv");
    }
    if (config.emit_svg && out.plot) {
      write_file(config.output_dir / "plot.svg", render_svg(*out.plot));
      artifacts.push_back("plot.svg");
    }
  } catch (const std::exception& e) {
    std::cerr << "ttorus_cli: " << e.what() << '\n';
    return kExitUsage;
  }
  report["checks"] = checks;
  report["artifacts"] = artifacts;
  report["passed"] = all_passed && !error;
  report["exit_status"] = status;
  report["data"] = out.data;
  if (error) report["error"] = *error;
  report["timestamp"] = utc_timestamp();
  try {
    write_file(report_path, report.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "ttorus_cli: " << e.what() << '\n';
    return kExitUsage;
  }
  std::cout << command_name(config.command) << ": " << (status == kExitPass ? "PASS" : "FAIL") << " ("
            << out.checks.size() << " checks) -> " << report_path.string() << '\n';
  if (error) std::cerr << "ttorus_cli: " << (*error)["message"].get<std::string>() << '\n';
  return status;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& e) {
    std::cout << e.what();
    return kExitPass;
  } catch (const ConfigError& e) {
    std::cerr << "ttorus_cli: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(cfg);
}

}  // namespace ttorus::cli
