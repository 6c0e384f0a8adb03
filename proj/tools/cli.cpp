// Copyright 2026 The blgi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "blgi/blgi.h"

namespace blgi::cli {
namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_reals(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    const double x = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(x)) {
      throw UsageError(std::string(flag) + ": '" + cell + "' is not a number");
    }
    out.push_back(x);
  }
  return out;
}

void check_v(double v, const char* flag) {
  if (!(v > 0.0 && v <= 1.0)) throw UsageError(std::string(flag) + " must lie in (0, 1], got " + real(v));
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + real(xs[i]);
  return s;
}

// Owning wrappers for the C handles.
template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using SettingsPtr = std::unique_ptr<blgi_settings, Deleter<blgi_settings, blgi_settings_destroy>>;
using RecordsPtr = std::unique_ptr<blgi_records, Deleter<blgi_records, blgi_records_destroy>>;
using PredictionsPtr = std::unique_ptr<blgi_predictions, Deleter<blgi_predictions, blgi_predictions_destroy>>;
using SweepPtr = std::unique_ptr<blgi_sweep, Deleter<blgi_sweep, blgi_sweep_destroy>>;
using ManifestPtr = std::unique_ptr<blgi_manifest, Deleter<blgi_manifest, blgi_manifest_destroy>>;

void check(blgi_status status) {
  if (status == BLGI_OK) return;
  const std::string msg = blgi_last_error();
  if (status == BLGI_ERR_INVALID_ARGUMENT) throw UsageError(msg);
  throw RuntimeFailure(msg);
}

SettingsPtr make_settings(const Invocation& inv) {
  blgi_settings* raw = nullptr;
  check(blgi_settings_create(&raw));
  SettingsPtr s(raw);
  check(blgi_settings_set_angles_deg(s.get(), inv.angles[0], inv.angles[1], inv.angles[2], inv.angles[3]));
  check(blgi_settings_set_coupling(s.get(), inv.v));
  check(blgi_settings_set_noise(s.get(), inv.noise_bias, inv.noise_sigma));
  check(blgi_settings_set_bell(s.get(), inv.bell == "psi-" ? BLGI_BELL_PSI_MINUS : BLGI_BELL_PHI_PLUS));
  return s;
}

ordered_json correlator_json(const blgi_correlator& c) {
  return ordered_json{{"value", c.value}, {"stderr", c.std_error}, {"count", c.count}};
}

ordered_json chsh_json(const blgi_chsh_report& r) {
  return ordered_json{{"e11", correlator_json(r.e11)},
                      {"e12", correlator_json(r.e12)},
                      {"e21", correlator_json(r.e21)},
                      {"e22", correlator_json(r.e22)},
                      {"chsh", r.chsh},
                      {"chsh_stderr", r.chsh_std_error}};
}

void write_manifest(const Invocation& inv, const std::vector<std::string>& outputs) {
  std::string path = inv.manifest;
  if (path.empty() && !inv.out.empty()) path = inv.out + ".manifest.json";
  if (path.empty()) return;
  blgi_manifest* raw = nullptr;
  check(blgi_manifest_create(command_name(inv.kind), inv.seed, &raw));
  ManifestPtr m(raw);
  for (const auto& [k, v] : reproduction_parameters(inv)) check(blgi_manifest_set_param(m.get(), k.c_str(), v.c_str()));
  for (const auto& o : outputs) check(blgi_manifest_add_output(m.get(), o.c_str()));
  check(blgi_manifest_write(m.get(), path.c_str()));
}

int run_verify_theorem(std::ostream& out) {
  blgi_theorem_report rep{};
  check(blgi_verify_theorem(&rep));
  out << "a1 a2 b1 b2 term\n";
  for (const auto& r : rep.rows) {
    char line[64];
    std::snprintf(line, sizeof line, "%+d %+d %+d %+d %+d\n", r.a1, r.a2, r.b1, r.b2, r.term);
    out << line;
  }
  const bool holds = rep.plus_two + rep.minus_two == 16;
  out << ordered_json{{"plus_two", rep.plus_two},
                      {"minus_two", rep.minus_two},
                      {"mean_term", rep.mean_term},
                      {"bound_holds", holds}}
             .dump()
      << '\n';
  return holds ? kExitOk : kExitCheckFailed;
}

int run_simulate(const Invocation& inv, std::ostream& out) {
  auto settings = make_settings(inv);
  blgi_records* raw = nullptr;
  check(blgi_simulate(settings.get(), inv.trials, inv.seed, inv.workers, &raw));
  RecordsPtr records(raw);
  std::vector<std::string> outputs;
  if (!inv.out.empty()) {
    check(blgi_records_write_csv(records.get(), inv.out.c_str()));
    outputs.push_back(inv.out);
  }
  double exact = 0.0;
  check(blgi_exact_chsh(settings.get(), &exact));
  ordered_json summary{{"command", "simulate"}, {"trials", inv.trials}, {"v", inv.v}, {"exact_chsh", exact}};
  if (inv.trials >= 2) {
    blgi_chsh_report rep{};
    check(blgi_records_chsh(records.get(), &rep));
    summary["empirical"] = chsh_json(rep);
  }
  write_manifest(inv, outputs);
  out << summary.dump() << '\n';
  return kExitOk;
}

int run_audit(const Invocation& inv, std::ostream& out) {
  blgi_records* raw = nullptr;
  check(blgi_records_read_csv(inv.in.c_str(), &raw));
  RecordsPtr records(raw);
  blgi_audit_verdict verdict{};
  const blgi_status st = blgi_audit(records.get(), inv.v, inv.threshold_sigmas, &verdict);
  if (st == BLGI_ERR_MALFORMED) throw RuntimeFailure(blgi_last_error());
  check(st);
  std::size_t needed = 0;
  check(blgi_audit_verdict_json(&verdict, nullptr, 0, &needed));
  std::string json(needed, '\0');
  check(blgi_audit_verdict_json(&verdict, json.data(), json.size(), &needed));
  json.resize(needed - 1);
  if (!inv.out.empty()) {
    std::ofstream f(inv.out, std::ios::binary | std::ios::trunc);
    f << json << '\n';
    if (!f) throw RuntimeFailure("cannot write " + inv.out);
  }
  out << json << '\n';
  return kExitOk;
}

int run_predict(const Invocation& inv, std::ostream& out) {
  auto settings = make_settings(inv);
  // Same-axis protocol: couple along the projective axes.
  check(blgi_settings_set_angles_deg(settings.get(), inv.angles[2], inv.angles[3], inv.angles[2], inv.angles[3]));
  blgi_predictions* raw = nullptr;
  check(blgi_predict(settings.get(), inv.v, inv.readout_v, inv.steps, inv.trials, inv.seed, inv.workers, &raw));
  PredictionsPtr preds(raw);
  std::vector<std::string> outputs;
  if (!inv.out.empty()) {
    check(blgi_predictions_write_csv(preds.get(), inv.out.c_str()));
    outputs.push_back(inv.out);
  }
  blgi_accuracy acc{};
  check(blgi_predictions_accuracy(preds.get(), &acc));
  double expected = 0.0;
  check(blgi_exact_prediction_accuracy(settings.get(), inv.v, inv.readout_v, inv.steps, &expected));
  blgi_chsh_report bell{};
  check(blgi_post_protocol_chsh(settings.get(), inv.v, inv.readout_v, inv.steps, std::max<std::uint64_t>(inv.trials, 8),
                                inv.seed, inv.workers,
                                inv.postselect ? BLGI_POSTSELECT_BOTH_PREDICTED_PLUS : BLGI_POSTSELECT_NONE, &bell));
  double exact_bell = 0.0;
  check(blgi_exact_post_protocol_chsh(settings.get(), inv.v, &exact_bell));
  write_manifest(inv, outputs);
  ordered_json summary{{"command", "predict"},
                       {"trials", inv.trials},
                       {"system_v", inv.v},
                       {"readout_v", inv.readout_v},
                       {"steps", inv.steps},
                       {"accuracy", acc.accuracy},
                       {"accuracy_ci95", {acc.lower, acc.upper}},
                       {"matches", acc.matches},
                       {"predictions", acc.total},
                       {"expected_accuracy", expected},
                       {"post_protocol", chsh_json(bell)},
                       {"post_protocol_postselected", inv.postselect}};
  if (!inv.postselect) summary["post_protocol_exact_chsh"] = exact_bell;
  out << summary.dump() << '\n';
  return kExitOk;
}

int run_sweep(const Invocation& inv, std::ostream& out) {
  auto settings = make_settings(inv);
  blgi_sweep* raw = nullptr;
  check(blgi_sweep_run(settings.get(), inv.v_grid.data(), inv.v_grid.size(), inv.trials, inv.seed, inv.workers,
                       inv.threshold_sigmas, &raw));
  SweepPtr sweep(raw);
  std::vector<std::string> outputs;
  if (!inv.out.empty()) {
    check(blgi_sweep_write_csv(sweep.get(), inv.out.c_str()));
    outputs.push_back(inv.out);
  }
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < blgi_sweep_count(sweep.get()); ++i) {
    blgi_sweep_row r{};
    check(blgi_sweep_get(sweep.get(), i, &r));
    rows.push_back(ordered_json{{"v", r.v},
                                {"exact_chsh", r.exact_chsh},
                                {"empirical_chsh", r.empirical_chsh},
                                {"chsh_stderr", r.chsh_std_error},
                                {"verdict", blgi_verdict_name(r.verdict)}});
  }
  write_manifest(inv, outputs);
  out << ordered_json{{"command", "sweep"}, {"rows", rows}}.dump() << '\n';
  return kExitOk;
}

}  // namespace

const char* command_name(CommandKind kind) {
  switch (kind) {
    case CommandKind::verify_theorem:
      return "verify-theorem";
    case CommandKind::simulate:
      return "simulate";
    case CommandKind::audit:
      return "audit";
    case CommandKind::predict:
      return "predict";
    case CommandKind::sweep:
      return "sweep";
  }
  return "?";
}

ParseResult parse_invocation(int argc, const char* const* argv) {
  Invocation inv;
  CLI::App app{"Weak-measurement Bell-Leggett-Garg simulator and auditor", "blgi"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--workers", inv.workers, "Worker threads (0 = all cores)");

  std::string angles = "0,90,45,-45";
  std::string grid;
  auto add_settings = [&](CLI::App* cmd) {
    cmd->add_option("--angles", angles, "a1,a2,b1,b2 in degrees");
    cmd->add_option("--bell", inv.bell, "Bell state")->check(CLI::IsMember({"phi+", "psi-"}));
    cmd->add_option("--noise-sigma", inv.noise_sigma, "Gaussian readout noise on the raw ancilla signal");
    cmd->add_option("--noise-bias", inv.noise_bias, "Additive readout bias on the raw ancilla signal");
  };

  auto* theorem = app.add_subcommand("verify-theorem", "Enumerate all 16 binary 4-tuples");

  auto* simulate = app.add_subcommand("simulate", "Run BLGI trials and estimate the correlators");
  simulate->add_option("--v", inv.v, "Coupling strength V in (0,1]");
  simulate->add_option("--trials", inv.trials, "Number of trials");
  simulate->add_option("--seed", inv.seed, "Master seed");
  simulate->add_option("--out", inv.out, "Trial record CSV");
  simulate->add_option("--manifest", inv.manifest, "Run manifest JSON (default <out>.manifest.json)");
  add_settings(simulate);

  auto* audit = app.add_subcommand("audit", "Test records against binary signal + unbiased noise");
  audit->add_option("--in", inv.in, "Trial record CSV")->required();
  audit->add_option("--v", inv.v, "Coupling strength used to rescale the records")->required();
  audit->add_option("--threshold-sigmas", inv.threshold_sigmas, "Rejection threshold in standard errors");
  audit->add_option("--out", inv.out, "Write the verdict JSON here as well");

  auto* predict = app.add_subcommand("predict", "Sequential-readout prediction protocol");
  predict->add_option("--v", inv.v, "System coupling strength V in (0,1]");
  predict->add_option("--readout-v", inv.readout_v, "Per-step readout strength in (0,1]");
  predict->add_option("--steps", inv.steps, "Readout steps per ancilla");
  predict->add_option("--trials", inv.trials, "Number of trials");
  predict->add_option("--seed", inv.seed, "Master seed");
  predict->add_option("--out", inv.out, "Prediction record CSV");
  predict->add_option("--manifest", inv.manifest, "Run manifest JSON (default <out>.manifest.json)");
  predict->add_flag("--postselect", inv.postselect, "Post-select the follow-up Bell test on +1,+1 predictions");
  predict->add_option("--bell", inv.bell, "Bell state")->check(CLI::IsMember({"phi+", "psi-"}));

  auto* sweep = app.add_subcommand("sweep", "Exact and empirical CHSH with audit verdict over a V grid");
  sweep->add_option("--v-grid", grid, "Comma-separated V values")->required();
  sweep->add_option("--trials", inv.trials, "Trials per grid point");
  sweep->add_option("--seed", inv.seed, "Master seed");
  sweep->add_option("--out", inv.out, "Sweep table CSV");
  sweep->add_option("--manifest", inv.manifest, "Run manifest JSON (default <out>.manifest.json)");
  sweep->add_option("--threshold-sigmas", inv.threshold_sigmas, "Rejection threshold in standard errors");
  add_settings(sweep);

  ParseResult result;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    result.message = app.help();
    result.exit_code = kExitOk;
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.message = app.help("", CLI::AppFormatMode::All);
    result.exit_code = kExitOk;
    return result;
  } catch (const CLI::ParseError& e) {
    result.message = std::string(e.what()) + "\n" + app.help();
    result.exit_code = kExitUsage;
    return result;
  }

  try {
    if (*theorem) inv.kind = CommandKind::verify_theorem;
    if (*simulate) inv.kind = CommandKind::simulate;
    if (*audit) inv.kind = CommandKind::audit;
    if (*predict) inv.kind = CommandKind::predict;
    if (*sweep) inv.kind = CommandKind::sweep;

    const auto a = parse_reals(angles, "--angles");
    if (a.size() != 4) throw UsageError("--angles needs exactly four values a1,a2,b1,b2");
    std::copy(a.begin(), a.end(), inv.angles.begin());
    if (!(inv.noise_sigma >= 0.0) || !std::isfinite(inv.noise_sigma)) throw UsageError("--noise-sigma must be >= 0");
    if (!std::isfinite(inv.noise_bias)) throw UsageError("--noise-bias must be finite");
    if (!(inv.threshold_sigmas >= 0.0)) throw UsageError("--threshold-sigmas must be >= 0");

    switch (inv.kind) {
      case CommandKind::simulate:
      case CommandKind::audit:
        check_v(inv.v, "--v");
        break;
      case CommandKind::predict:
        check_v(inv.v, "--v");
        check_v(inv.readout_v, "--readout-v");
        if (inv.steps < 1) throw UsageError("--steps must be >= 1");
        if (inv.trials < 1) throw UsageError("--trials must be >= 1");
        break;
      case CommandKind::sweep:
        inv.v_grid = parse_reals(grid, "--v-grid");
        if (inv.v_grid.empty()) throw UsageError("--v-grid must list at least one value");
        for (double v : inv.v_grid) check_v(v, "--v-grid");
        if (inv.trials < 1) throw UsageError("--trials must be >= 1");
        break;
      case CommandKind::verify_theorem:
        break;
    }
  } catch (const UsageError& e) {
    result.message = std::string("error: ") + e.what();
    result.exit_code = kExitUsage;
    return result;
  }
  result.invocation = inv;
  return result;
}

std::map<std::string, std::string> reproduction_parameters(const Invocation& inv) {
  std::map<std::string, std::string> p;
  switch (inv.kind) {
    case CommandKind::verify_theorem:
    case CommandKind::audit:
      break;
    case CommandKind::simulate:
      p["v"] = real(inv.v);
      p["trials"] = std::to_string(inv.trials);
      p["seed"] = std::to_string(inv.seed);
      p["angles"] = join({inv.angles.begin(), inv.angles.end()});
      p["bell"] = inv.bell;
      p["noise-sigma"] = real(inv.noise_sigma);
      p["noise-bias"] = real(inv.noise_bias);
      break;
    case CommandKind::predict:
      p["v"] = real(inv.v);
      p["readout-v"] = real(inv.readout_v);
      p["steps"] = std::to_string(inv.steps);
      p["trials"] = std::to_string(inv.trials);
      p["seed"] = std::to_string(inv.seed);
      p["bell"] = inv.bell;
      break;
    case CommandKind::sweep:
      p["v-grid"] = join(inv.v_grid);
      p["trials"] = std::to_string(inv.trials);
      p["seed"] = std::to_string(inv.seed);
      p["angles"] = join({inv.angles.begin(), inv.angles.end()});
      p["bell"] = inv.bell;
      p["noise-sigma"] = real(inv.noise_sigma);
      p["noise-bias"] = real(inv.noise_bias);
      p["threshold-sigmas"] = real(inv.threshold_sigmas);
      break;
  }
  return p;
}

std::vector<std::string> replay_arguments(const std::string& manifest_path, const std::string& out) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + manifest_path);
  const auto j = nlohmann::json::parse(in);
  std::vector<std::string> args{j.at("command").get<std::string>()};
  for (const auto& [k, v] : j.at("parameters").items()) {
    args.push_back("--" + k + "=" + v.get<std::string>());
  }
  args.push_back("--out=" + out);
  return args;
}

int run(const Invocation& inv, std::ostream& out, std::ostream& err) {
  try {
    switch (inv.kind) {
      case CommandKind::verify_theorem:
        return run_verify_theorem(out);
      case CommandKind::simulate:
        return run_simulate(inv, out);
      case CommandKind::audit:
        return run_audit(inv, out);
      case CommandKind::predict:
        return run_predict(inv, out);
      case CommandKind::sweep:
        return run_sweep(inv, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const ParseResult parsed = parse_invocation(argc, argv);
  if (!parsed.invocation) {
    (parsed.exit_code == kExitOk ? out : err) << parsed.message << '\n';
    return parsed.exit_code;
  }
  return run(*parsed.invocation, out, err);
}

}  // namespace blgi::cli
