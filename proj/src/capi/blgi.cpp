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

#include "blgi/blgi.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "auditor/auditor.hpp"
#include "harness/manifest.hpp"
#include "harness/records_io.hpp"
#include "harness/sweep.hpp"
#include "predictor/predictor.hpp"
#include "protocol/protocol.hpp"

struct blgi_settings {
  blgi::protocol::Settings value;
};

struct blgi_records {
  std::vector<blgi::protocol::TrialRecord> rows;
};

struct blgi_predictions {
  std::vector<blgi::predictor::PredictionRecord> rows;
};

struct blgi_sweep {
  std::vector<blgi::harness::SweepRow> rows;
};

struct blgi_manifest {
  blgi::harness::RunManifest value;
};

namespace {

using namespace blgi;

thread_local std::string g_last_error;

template <class Fn>
blgi_status guard(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    fn();
    return BLGI_OK;
  } catch (const auditor::MalformedRecords& e) {
    g_last_error = e.what();
    return BLGI_ERR_MALFORMED;
  } catch (const qcore::MeasurementError& e) {
    g_last_error = e.what();
    return BLGI_ERR_MEASUREMENT;
  } catch (const harness::IoError& e) {
    g_last_error = e.what();
    return BLGI_ERR_IO;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return BLGI_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BLGI_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return BLGI_ERR_INTERNAL;
  }
}

template <class T>
T& deref(T* p, const char* what) {
  if (p == nullptr) throw std::invalid_argument(std::string(what) + " must not be null");
  return *p;
}

const char* nonnull(const char* s, const char* what) {
  if (s == nullptr) throw std::invalid_argument(std::string(what) + " must not be null");
  return s;
}

blgi_verdict to_c(auditor::Verdict v) {
  switch (v) {
    case auditor::Verdict::consistent:
      return BLGI_VERDICT_CONSISTENT;
    case auditor::Verdict::reject:
      return BLGI_VERDICT_REJECT;
    case auditor::Verdict::inconclusive:
      break;
  }
  return BLGI_VERDICT_INCONCLUSIVE;
}

auditor::Verdict from_c(blgi_verdict v) {
  switch (v) {
    case BLGI_VERDICT_CONSISTENT:
      return auditor::Verdict::consistent;
    case BLGI_VERDICT_REJECT:
      return auditor::Verdict::reject;
    case BLGI_VERDICT_INCONCLUSIVE:
      return auditor::Verdict::inconclusive;
  }
  throw std::invalid_argument("unknown verdict");
}

blgi_correlator to_c(const protocol::CorrelatorEstimate& e) { return blgi_correlator{e.value, e.std_error, e.count}; }

protocol::CorrelatorEstimate from_c(const blgi_correlator& e) {
  return protocol::CorrelatorEstimate{e.value, e.std_error, static_cast<std::size_t>(e.count)};
}

blgi_chsh_report to_c(const protocol::ChshReport& r) {
  return blgi_chsh_report{to_c(r.e11), to_c(r.e12), to_c(r.e21), to_c(r.e22), r.chsh, r.chsh_std_error};
}

predictor::PredictionSetup make_setup(const blgi_settings* settings, double system_v, double readout_v,
                                      std::uint64_t steps) {
  const auto& s = deref(settings, "settings").value;
  return predictor::prediction_setup(s, qcore::CouplingStrength(system_v),
                                     predictor::SequentialReadoutParams{qcore::CouplingStrength(readout_v), steps});
}

}  // namespace

extern "C" {

const char* blgi_version(void) { return harness::kToolVersion; }

const char* blgi_last_error(void) { return g_last_error.c_str(); }

const char* blgi_verdict_name(blgi_verdict verdict) {
  switch (verdict) {
    case BLGI_VERDICT_CONSISTENT:
      return "CONSISTENT";
    case BLGI_VERDICT_REJECT:
      return "REJECT";
    case BLGI_VERDICT_INCONCLUSIVE:
      return "INCONCLUSIVE";
  }
  return "UNKNOWN";
}

blgi_status blgi_settings_create(blgi_settings** out) {
  return guard([&] {
    deref(out, "out") = nullptr;
    *out = new blgi_settings{protocol::default_settings(qcore::CouplingStrength(0.2))};
  });
}

void blgi_settings_destroy(blgi_settings* settings) { delete settings; }

blgi_status blgi_settings_set_angles_deg(blgi_settings* settings, double a1, double a2, double b1, double b2) {
  return guard([&] {
    auto& s = deref(settings, "settings").value;
    const auto na1 = qcore::MeasurementAxis::degrees(a1);
    const auto na2 = qcore::MeasurementAxis::degrees(a2);
    const auto nb1 = qcore::MeasurementAxis::degrees(b1);
    const auto nb2 = qcore::MeasurementAxis::degrees(b2);
    s.a1 = na1;
    s.a2 = na2;
    s.b1 = nb1;
    s.b2 = nb2;
  });
}

blgi_status blgi_settings_set_coupling(blgi_settings* settings, double v) {
  return guard([&] { deref(settings, "settings").value.v = qcore::CouplingStrength(v); });
}

blgi_status blgi_settings_set_noise(blgi_settings* settings, double bias, double sigma) {
  return guard([&] {
    const qcore::NoiseModel noise{bias, sigma};
    noise.validate();
    deref(settings, "settings").value.noise = noise;
  });
}

blgi_status blgi_settings_set_bell(blgi_settings* settings, blgi_bell_kind kind) {
  return guard([&] {
    auto& s = deref(settings, "settings").value;
    switch (kind) {
      case BLGI_BELL_PHI_PLUS:
        s.bell = protocol::BellKind::phi_plus;
        return;
      case BLGI_BELL_PSI_MINUS:
        s.bell = protocol::BellKind::psi_minus;
        return;
    }
    throw std::invalid_argument("unknown Bell state kind");
  });
}

blgi_status blgi_settings_set_id(blgi_settings* settings, uint32_t id) {
  return guard([&] { deref(settings, "settings").value.id = id; });
}

blgi_status blgi_verify_theorem(blgi_theorem_report* out) {
  return guard([&] {
    auto& o = deref(out, "out");
    const auto rep = auditor::exhaustive_verify();
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      const auto& r = rep.rows[i];
      o.rows[i] = blgi_theorem_row{r.tuple.a1, r.tuple.a2, r.tuple.b1, r.tuple.b2, r.term};
    }
    o.plus_two = rep.plus_two;
    o.minus_two = rep.minus_two;
    o.mean_term = rep.mean_term;
  });
}

blgi_status blgi_simulate(const blgi_settings* settings, uint64_t trials, uint64_t master_seed, unsigned workers,
                          blgi_records** out) {
  return guard([&] {
    deref(out, "out") = nullptr;
    auto rows = protocol::run_trials(deref(settings, "settings").value, trials, master_seed, workers);
    *out = new blgi_records{std::move(rows)};
  });
}

blgi_status blgi_records_read_csv(const char* path, blgi_records** out) {
  return guard([&] {
    deref(out, "out") = nullptr;
    *out = new blgi_records{harness::read_records(nonnull(path, "path"))};
  });
}

blgi_status blgi_records_write_csv(const blgi_records* records, const char* path) {
  return guard([&] { harness::emit_records(deref(records, "records").rows, nonnull(path, "path")); });
}

uint64_t blgi_records_count(const blgi_records* records) { return records ? records->rows.size() : 0; }

blgi_status blgi_records_get(const blgi_records* records, uint64_t index, blgi_trial_record* out) {
  return guard([&] {
    const auto& rows = deref(records, "records").rows;
    if (index >= rows.size()) throw std::invalid_argument("record index out of range");
    const auto& r = rows[index];
    deref(out, "out") = blgi_trial_record{r.trial_index, r.settings_id, r.raw1,  r.raw2,
                                          r.alpha1,      r.alpha2,      r.beta1, r.beta2, r.seed};
  });
}

blgi_status blgi_records_chsh(const blgi_records* records, blgi_chsh_report* out) {
  return guard([&] { deref(out, "out") = to_c(protocol::estimate_chsh(deref(records, "records").rows)); });
}

void blgi_records_destroy(blgi_records* records) { delete records; }

blgi_status blgi_exact_chsh(const blgi_settings* settings, double* out) {
  return guard([&] { deref(out, "out") = protocol::exact_chsh(deref(settings, "settings").value); });
}

blgi_status blgi_audit(const blgi_records* records, double v, double threshold_sigmas, blgi_audit_verdict* out) {
  return guard([&] {
    auditor::AuditConfig config;
    config.threshold_sigmas = threshold_sigmas;
    const auto verdict =
        auditor::decomposition_test(deref(records, "records").rows, qcore::CouplingStrength(v), config);
    deref(out, "out") = blgi_audit_verdict{verdict.chsh_value, verdict.chsh_stderr, verdict.threshold_sigmas,
                                           to_c(verdict.verdict), verdict.count,    to_c(verdict.report)};
  });
}

blgi_status blgi_audit_verdict_json(const blgi_audit_verdict* verdict, char* buf, size_t size, size_t* needed) {
  return guard([&] {
    const auto& v = deref(verdict, "verdict");
    auditor::AuditVerdict av;
    av.chsh_value = v.chsh_value;
    av.chsh_stderr = v.chsh_std_error;
    av.threshold_sigmas = v.threshold_sigmas;
    av.verdict = from_c(v.verdict);
    av.count = static_cast<std::size_t>(v.count);
    av.report = protocol::chsh_combine(from_c(v.report.e11), from_c(v.report.e12), from_c(v.report.e21),
                                       from_c(v.report.e22));
    av.report.chsh = v.report.chsh;
    av.report.chsh_std_error = v.report.chsh_std_error;
    const std::string json = auditor::verdict_json(av);
    deref(needed, "needed") = json.size() + 1;
    if (buf != nullptr && size >= json.size() + 1) std::memcpy(buf, json.c_str(), json.size() + 1);
  });
}

blgi_status blgi_predict(const blgi_settings* settings, double system_v, double readout_v, uint64_t steps,
                         uint64_t trials, uint64_t master_seed, unsigned workers, blgi_predictions** out) {
  return guard([&] {
    deref(out, "out") = nullptr;
    const auto setup = make_setup(settings, system_v, readout_v, steps);
    *out = new blgi_predictions{predictor::run_prediction_experiments(setup, trials, master_seed, workers)};
  });
}

blgi_status blgi_predictions_write_csv(const blgi_predictions* predictions, const char* path) {
  return guard(
      [&] { harness::emit_prediction_records(deref(predictions, "predictions").rows, nonnull(path, "path")); });
}

uint64_t blgi_predictions_count(const blgi_predictions* predictions) {
  return predictions ? predictions->rows.size() : 0;
}

blgi_status blgi_predictions_get(const blgi_predictions* predictions, uint64_t index, blgi_prediction_record* out) {
  return guard([&] {
    const auto& rows = deref(predictions, "predictions").rows;
    if (index >= rows.size()) throw std::invalid_argument("prediction index out of range");
    const auto& r = rows[index];
    deref(out, "out") = blgi_prediction_record{r.trial_index, r.settings_id, r.trajectory_mean1, r.trajectory_mean2,
                                               r.predicted1,  r.predicted2,  r.actual1,          r.actual2,
                                               r.seed};
  });
}

blgi_status blgi_predictions_accuracy(const blgi_predictions* predictions, blgi_accuracy* out) {
  return guard([&] {
    const auto a = predictor::prediction_accuracy(deref(predictions, "predictions").rows);
    deref(out, "out") = blgi_accuracy{a.accuracy, a.lower, a.upper, a.matches, a.total};
  });
}

void blgi_predictions_destroy(blgi_predictions* predictions) { delete predictions; }

blgi_status blgi_post_protocol_chsh(const blgi_settings* settings, double system_v, double readout_v, uint64_t steps,
                                    uint64_t trials, uint64_t master_seed, unsigned workers,
                                    blgi_post_selection post_selection, blgi_chsh_report* out) {
  return guard([&] {
    const auto setup = make_setup(settings, system_v, readout_v, steps);
    predictor::PostSelection ps = predictor::PostSelection::none;
    if (post_selection == BLGI_POSTSELECT_BOTH_PREDICTED_PLUS) {
      ps = predictor::PostSelection::both_predicted_plus;
    } else if (post_selection != BLGI_POSTSELECT_NONE) {
      throw std::invalid_argument("unknown post-selection mode");
    }
    deref(out, "out") = to_c(predictor::post_protocol_chsh(setup, trials, master_seed, workers, ps));
  });
}

blgi_status blgi_exact_post_protocol_chsh(const blgi_settings* settings, double system_v, double* out) {
  return guard([&] {
    const auto setup = make_setup(settings, system_v, 0.05, 1);
    deref(out, "out") = predictor::exact_post_protocol_chsh(setup);
  });
}

blgi_status blgi_exact_prediction_accuracy(const blgi_settings* settings, double system_v, double readout_v,
                                           uint64_t steps, double* out) {
  return guard([&] {
    deref(out, "out") = predictor::exact_prediction_accuracy(make_setup(settings, system_v, readout_v, steps));
  });
}

blgi_status blgi_sweep_run(const blgi_settings* settings, const double* v_values, size_t count,
                           uint64_t trials_per_point, uint64_t master_seed, unsigned workers, double threshold_sigmas,
                           blgi_sweep** out) {
  return guard([&] {
    deref(out, "out") = nullptr;
    if (v_values == nullptr && count > 0) throw std::invalid_argument("v_values must not be null");
    harness::SweepSpec spec{std::vector<double>(v_values, v_values + count), trials_per_point};
    auditor::AuditConfig audit;
    audit.threshold_sigmas = threshold_sigmas;
    *out = new blgi_sweep{harness::run_sweep(spec, deref(settings, "settings").value, master_seed, workers, audit)};
  });
}

size_t blgi_sweep_count(const blgi_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

blgi_status blgi_sweep_get(const blgi_sweep* sweep, size_t index, blgi_sweep_row* out) {
  return guard([&] {
    const auto& rows = deref(sweep, "sweep").rows;
    if (index >= rows.size()) throw std::invalid_argument("sweep row index out of range");
    const auto& r = rows[index];
    deref(out, "out") =
        blgi_sweep_row{r.v, r.settings_id, r.exact_chsh, r.empirical_chsh, r.chsh_stderr, to_c(r.verdict)};
  });
}

blgi_status blgi_sweep_write_csv(const blgi_sweep* sweep, const char* path) {
  return guard([&] { harness::emit_sweep(deref(sweep, "sweep").rows, nonnull(path, "path")); });
}

void blgi_sweep_destroy(blgi_sweep* sweep) { delete sweep; }

blgi_status blgi_manifest_create(const char* command, uint64_t master_seed, blgi_manifest** out) {
  return guard([&] {
    deref(out, "out") = nullptr;
    harness::RunManifest m;
    m.command = nonnull(command, "command");
    m.master_seed = master_seed;
    m.started = harness::utc_timestamp();
    *out = new blgi_manifest{std::move(m)};
  });
}

blgi_status blgi_manifest_set_param(blgi_manifest* manifest, const char* key, const char* value) {
  return guard([&] { deref(manifest, "manifest").value.parameters[nonnull(key, "key")] = nonnull(value, "value"); });
}

blgi_status blgi_manifest_add_output(blgi_manifest* manifest, const char* path) {
  return guard([&] { deref(manifest, "manifest").value.output_paths.emplace_back(nonnull(path, "path")); });
}

blgi_status blgi_manifest_write(blgi_manifest* manifest, const char* path) {
  return guard([&] {
    auto& m = deref(manifest, "manifest").value;
    m.finished = harness::utc_timestamp();
    harness::emit_manifest(m, nonnull(path, "path"));
  });
}

void blgi_manifest_destroy(blgi_manifest* manifest) { delete manifest; }

}  // extern "C"
