#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ringqec/code.hpp"
#include "ringqec/experiment.hpp"
#include "ringqec/schedule.hpp"

namespace ringqec {

using json = nlohmann::ordered_json;

/// Fixed-width round-trippable double for CSV cells (JSON uses nlohmann's
/// shortest round-trip form).
inline std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline json timing_to_json(const TimingParams& t) {
  return {{"t_g1_ns", t.t_g1}, {"t_g2_ns", t.t_g2}, {"t_m_ns", t.t_m}};
}

inline json schedule_to_json(const CycleSchedule& s) {
  return {{"n", s.n},
          {"n_q1", s.n_q1},
          {"n_q2", s.n_q2},
          {"window_size", s.n_q2},
          {"cycle_gate_time_ns", s.cycle_gate_time},
          {"full_cycle_time_ns", s.full_cycle_time},
          {"pd_ratio", pd_ratio(s)},
          {"timing", timing_to_json(s.timing)}};
}

inline json fit_to_json(const FitResult& f) {
  return {{"epsilon_l_per_us", f.epsilon_l},
          {"epsilon_l_stderr", f.stderr_epsilon},
          {"t0_us", f.t0},
          {"t0_stderr", f.stderr_t0},
          {"points_used", f.points_used}};
}

inline json curve_to_json(const FidelityCurve& c) {
  return {{"t_us", c.t_us},
          {"fidelity", c.fidelity},
          {"sixths_sum", c.sixths_sum},
          {"trials", c.trials},
          {"decode_misses", c.decode_misses},
          {"frame_misses", c.frame_misses}};
}

inline json run_config_to_json(const StabilizerCode& code, const CycleSchedule& sched, int w_max,
                               const NoiseParams& noise, const ExperimentConfig& cfg,
                               double floor_margin) {
  return {{"family", family_name(code.family)},
          {"d", code.distance},
          {"n", code.n},
          {"w_max", w_max},
          {"n_q1", sched.n_q1},
          {"timing", timing_to_json(sched.timing)},
          {"p_b", noise.p_b},
          {"p_d", noise.p_d},
          {"split", noise.split},
          {"trials", cfg.trials},
          {"cycles", cfg.cycles},
          {"master_seed", cfg.master_seed},
          {"workers", cfg.workers},
          {"flip_mode", flip_mode_name(cfg.flip_mode)},
          {"fidelity_rule", fidelity_rule_name(cfg.fidelity_rule)},
          {"floor_margin", floor_margin}};
}

inline json run_artifact(const StabilizerCode& code, const CycleSchedule& sched, int w_max,
                         const NoiseParams& noise, const ExperimentConfig& cfg,
                         const FidelityCurve& curve, const FitResult* fit,
                         const std::string& fit_failure, double floor_margin) {
  json j = {{"schema", "ringqec.run/1"},
            {"config", run_config_to_json(code, sched, w_max, noise, cfg, floor_margin)},
            {"schedule", schedule_to_json(sched)},
            {"curve", curve_to_json(curve)}};
  j["fit"] = fit ? fit_to_json(*fit) : json(nullptr);
  if (!fit) j["fit_failure"] = fit_failure;
  j["wall_seconds"] = curve.wall_seconds;
  return j;
}

/// Curve as stored in a run artifact; enough to re-fit without re-simulating.
inline FidelityCurve curve_from_json(const json& j) {
  FidelityCurve c;
  c.t_us = j.at("t_us").get<std::vector<double>>();
  c.fidelity = j.at("fidelity").get<std::vector<double>>();
  if (j.contains("sixths_sum")) c.sixths_sum = j.at("sixths_sum").get<std::vector<std::uint64_t>>();
  c.trials = j.value("trials", std::uint64_t{0});
  c.decode_misses = j.value("decode_misses", std::uint64_t{0});
  c.frame_misses = j.value("frame_misses", std::uint64_t{0});
  return c;
}

inline constexpr const char* kSweepCsvHeader =
    "family,d,n,p_b,p_d,epsilon_L,epsilon_L_stderr,t0,trials,cycles,misses,seed";

inline void write_sweep_csv(std::ostream& os, const StabilizerCode& code,
                            const ExperimentConfig& cfg, const SweepResult& sweep) {
  os << kSweepCsvHeader << "\n";
  for (const auto& pt : sweep.points) {
    const double eps = pt.fit ? pt.fit->epsilon_l : std::nan("");
    const double se = pt.fit ? pt.fit->stderr_epsilon : std::nan("");
    const double t0 = pt.fit ? pt.fit->t0 : std::nan("");
    os << family_name(code.family) << ',' << code.distance << ',' << code.n << ','
       << csv_double(pt.p_b) << ',' << csv_double(pt.p_d) << ',' << csv_double(eps) << ','
       << csv_double(se) << ',' << csv_double(t0) << ',' << cfg.trials << ',' << cfg.cycles << ','
       << (pt.curve.decode_misses + pt.curve.frame_misses) << ',' << pt.seed << "\n";
  }
}

/// Two-column (ln p_b, ln epsilon_L) plot data with the fit in comment lines.
inline void write_loglog_data(std::ostream& os, const SweepResult& sweep) {
  if (sweep.slope) {
    os << "# slope_r=" << csv_double(sweep.slope->slope)
       << " stderr=" << csv_double(sweep.slope->stderr_slope)
       << " intercept=" << csv_double(sweep.slope->intercept) << " points=" << sweep.slope->points
       << "\n";
  } else {
    os << "# slope fit unavailable\n";
  }
  os << "# ln_p_b ln_epsilon_L\n";
  for (const auto& pt : sweep.points) {
    if (!pt.fit || pt.fit->epsilon_l <= 0) continue;
    os << csv_double(std::log(pt.p_b)) << ' ' << csv_double(std::log(pt.fit->epsilon_l)) << "\n";
  }
}

inline json sweep_artifact(const StabilizerCode& code, const CycleSchedule& sched, int w_max,
                           const ExperimentConfig& cfg, std::span<const double> pb_list,
                           const SweepResult& sweep, std::array<double, 3> split,
                           double floor_margin) {
  json points = json::array();
  for (const auto& pt : sweep.points) {
    json p = {{"p_b", pt.p_b},
              {"p_d", pt.p_d},
              {"seed", pt.seed},
              {"fit", pt.fit ? fit_to_json(*pt.fit) : json(nullptr)},
              {"decode_misses", pt.curve.decode_misses},
              {"frame_misses", pt.curve.frame_misses}};
    if (!pt.fit) p["fit_failure"] = pt.fit_failure;
    points.push_back(std::move(p));
  }
  json j = {{"schema", "ringqec.sweep/1"},
            {"config",
             {{"family", family_name(code.family)},
              {"d", code.distance},
              {"n", code.n},
              {"w_max", w_max},
              {"n_q1", sched.n_q1},
              {"timing", timing_to_json(sched.timing)},
              {"p_b_list", std::vector<double>(pb_list.begin(), pb_list.end())},
              {"split", split},
              {"trials", cfg.trials},
              {"cycles", cfg.cycles},
              {"master_seed", cfg.master_seed},
              {"workers", cfg.workers},
              {"flip_mode", flip_mode_name(cfg.flip_mode)},
              {"fidelity_rule", fidelity_rule_name(cfg.fidelity_rule)},
              {"floor_margin", floor_margin}}},
            {"schedule", schedule_to_json(sched)},
            {"points", points},
            {"warnings", sweep.warnings}};
  if (sweep.slope) {
    j["slope"] = {{"r", sweep.slope->slope},
                  {"stderr", sweep.slope->stderr_slope},
                  {"intercept", sweep.slope->intercept},
                  {"points", sweep.slope->points}};
  } else {
    j["slope"] = nullptr;
  }
  return j;
}

inline json distance_report_to_json(const DistanceReport& rep) {
  json j = {{"max_weight", rep.max_weight},
            {"enumerated", rep.enumerated},
            {"syndrome_classes", rep.syndrome_classes},
            {"degenerate_pairs", rep.degenerate_pairs},
            {"coset_collisions", rep.coset_collisions},
            {"passed", rep.passed}};
  j["min_logical_weight"] =
      rep.min_logical_weight ? json(*rep.min_logical_weight) : json(nullptr);
  return j;
}

}  // namespace ringqec
