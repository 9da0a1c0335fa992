#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ringqec/code.hpp"
#include "ringqec/decoder.hpp"
#include "ringqec/errors.hpp"
#include "ringqec/noise.hpp"
#include "ringqec/rng.hpp"
#include "ringqec/schedule.hpp"
#include "ringqec/syndrome_sim.hpp"

namespace ringqec {

/// How the per-cycle recovered state is scored when the decoder's explained
/// syndrome differs from the true one (u_j = sigma(cum_j) XOR explained_j):
///  - terminal_decode: look u_j up in the table as a final correction round
///    and fold its coset in; only an unclassifiable u_j scores zero.
///  - strict_subspace: any nonzero u_j scores zero (recovered state lies in an
///    orthogonal syndrome subspace).
/// terminal_decode is the default and is what the fidelity-floor behavior of
/// the memory experiment assumes.
enum class FidelityRule : std::uint8_t { terminal_decode = 0, strict_subspace = 1 };

inline const char* fidelity_rule_name(FidelityRule r) {
  return r == FidelityRule::terminal_decode ? "terminal_decode" : "strict_subspace";
}
inline const char* flip_mode_name(FlipMode f) {
  return f == FlipMode::independent ? "independent" : "shared";
}

/// Six-cardinal-state fidelity contribution for cycle j, in sixths:
/// 6 if the residual logical action is I, 2 if it is X/Y/Z (only the matching
/// axis pair survives), 0 if the residual cannot be classified.
inline int cycle_fidelity_sixths(const DecodeTable& table, const TrialTrace& trace,
                                 const DecodeResult& dres, std::size_t j, FidelityRule rule,
                                 std::uint64_t* frame_misses = nullptr) {
  const std::uint64_t u = trace.true_syndrome[j] ^ dres.explained[j];
  std::uint8_t residual = trace.cum_frame[j] ^ dres.correction_frame[j];
  if (u != 0) {
    if (rule == FidelityRule::strict_subspace) return 0;
    const auto* e = table.find(u);
    if (e == nullptr) {
      if (frame_misses) ++*frame_misses;
      return 0;
    }
    residual ^= e->coset;
  }
  return residual == 0 ? 6 : 2;
}

/// Per-cycle contributions over the six cardinal states, averaged analytically
/// (values are sixths: 0, 2 or 6).
inline std::vector<int> trial_fidelity(const DecodeTable& table, const TrialTrace& trace,
                                       const DecodeResult& dres,
                                       FidelityRule rule = FidelityRule::terminal_decode,
                                       std::uint64_t* frame_misses = nullptr) {
  std::vector<int> sixths(trace.record.m);
  for (std::size_t j = 0; j < trace.record.m; ++j)
    sixths[j] = cycle_fidelity_sixths(table, trace, dres, j, rule, frame_misses);
  return sixths;
}

struct ExperimentConfig {
  std::size_t cycles = 50;
  std::uint64_t trials = 100'000;
  std::uint64_t master_seed = 1;
  int workers = 1;
  FlipMode flip_mode = FlipMode::independent;
  FidelityRule fidelity_rule = FidelityRule::terminal_decode;
};

struct FidelityCurve {
  std::vector<double> t_us;          // t_j = j * full_cycle_time, j = 1..m
  std::vector<double> fidelity;      // mean over trials, six-state average
  std::vector<std::uint64_t> sixths_sum;  // exact integer accumulators
  std::uint64_t trials = 0;
  std::uint64_t decode_misses = 0;   // merged rows absent from the table
  std::uint64_t frame_misses = 0;    // unexplained syndromes absent from the table
  double wall_seconds = 0.0;
};

/// Monte Carlo memory experiment. Deterministic given (config, seeds): trial
/// t draws its track from stream mix(master, 2t) and its readout flips from
/// stream mix(master, 2t+1); per-cycle tallies are exact integers, so the
/// result is identical for any worker count.
inline FidelityCurve run_memory_experiment(const StabilizerCode& code, const CycleSchedule& sched,
                                           const DecodeTable& table, const NoiseParams& noise,
                                           const ExperimentConfig& cfg) {
  if (cfg.cycles < 2) throw BuildError("memory experiment needs cycles >= 2");
  if (cfg.trials < 1) throw BuildError("memory experiment needs trials >= 1");
  if (table.n != code.n) throw DimensionError("decode table does not match code");
  noise.validate();
  const auto t_start = std::chrono::steady_clock::now();

  const SimContext ctx(code, sched, cfg.flip_mode);
  const std::size_t m = cfg.cycles;

  struct Tally {
    std::vector<std::uint64_t> sixths;
    std::uint64_t decode_misses = 0;
    std::uint64_t frame_misses = 0;
  };

  const int workers = cfg.workers < 1 ? 1 : cfg.workers;
  std::vector<Tally> tallies(static_cast<std::size_t>(workers));

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi, Tally& tally) {
    tally.sixths.assign(m, 0);
    ErrorTrack track;
    TrialTrace trace;
    DecodeResult dres;
    for (std::uint64_t t = lo; t < hi; ++t) {
      sample_track_into(track, noise, code.n, m, mix_seed(cfg.master_seed, 2 * t));
      simulate_trial_into(trace, ctx, track, mix_seed(cfg.master_seed, 2 * t + 1));
      decode_into(dres, table, trace.record);
      tally.decode_misses += dres.misses;
      for (std::size_t j = 0; j < m; ++j)
        tally.sixths[j] += static_cast<std::uint64_t>(
            cycle_fidelity_sixths(table, trace, dres, j, cfg.fidelity_rule, &tally.frame_misses));
    }
  };

  if (workers == 1) {
    run_range(0, cfg.trials, tallies[0]);
  } else {
    std::vector<std::thread> threads;
    const std::uint64_t chunk = cfg.trials / static_cast<std::uint64_t>(workers);
    const std::uint64_t rem = cfg.trials % static_cast<std::uint64_t>(workers);
    std::uint64_t lo = 0;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t hi = lo + chunk + (static_cast<std::uint64_t>(w) < rem ? 1 : 0);
      threads.emplace_back(run_range, lo, hi, std::ref(tallies[static_cast<std::size_t>(w)]));
      lo = hi;
    }
    for (auto& th : threads) th.join();
  }

  FidelityCurve curve;
  curve.trials = cfg.trials;
  curve.sixths_sum.assign(m, 0);
  for (const auto& t : tallies) {
    for (std::size_t j = 0; j < m; ++j) curve.sixths_sum[j] += t.sixths[j];
    curve.decode_misses += t.decode_misses;
    curve.frame_misses += t.frame_misses;
  }
  curve.t_us.resize(m);
  curve.fidelity.resize(m);
  const double denom = 6.0 * static_cast<double>(cfg.trials);
  for (std::size_t j = 0; j < m; ++j) {
    curve.t_us[j] = static_cast<double>(j + 1) * sched.full_cycle_time / 1000.0;
    curve.fidelity[j] = static_cast<double>(curve.sixths_sum[j]) / denom;
  }
  curve.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return curve;
}

// ---- fits -------------------------------------------------------------------

namespace detail {

struct LinReg {
  double slope = 0, intercept = 0;
  double var_slope = 0, var_intercept = 0, cov = 0;
  std::size_t npts = 0;
};

inline LinReg linear_fit(std::span<const double> x, std::span<const double> y) {
  const std::size_t k = x.size();
  LinReg r;
  r.npts = k;
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(k), my = sy / static_cast<double>(k);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw FitError("degenerate fit: all abscissae equal");
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double e = y[i] - (r.intercept + r.slope * x[i]);
    ssr += e * e;
  }
  const double s2 = k > 2 ? ssr / static_cast<double>(k - 2) : 0.0;
  r.var_slope = s2 / sxx;
  r.var_intercept = s2 * (1.0 / static_cast<double>(k) + mx * mx / sxx);
  r.cov = -mx * s2 / sxx;
  return r;
}

}  // namespace detail

struct FitResult {
  double epsilon_l = 0;        // logical error rate per microsecond
  double t0 = 0;               // time offset, microseconds
  double stderr_epsilon = 0;
  double stderr_t0 = 0;
  std::size_t points_used = 0;
};

/// Linearized least squares of F(t) = 1/2 + 1/2 (1-2e)^(t-t0): regress
/// ln(2F-1) on t. Points within floor_margin of the 0.5 floor are excluded
/// (the log transform blows up there).
inline FitResult fit_fidelity(const FidelityCurve& curve, double floor_margin = 0.02) {
  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < curve.fidelity.size(); ++j) {
    if (curve.fidelity[j] > 0.5 + floor_margin) {
      xs.push_back(curve.t_us[j]);
      ys.push_back(std::log(2.0 * curve.fidelity[j] - 1.0));
    }
  }
  if (xs.size() < 3)
    throw FitError("fit_fidelity: only " + std::to_string(xs.size()) +
                   " points above the 0.5 floor (margin " + std::to_string(floor_margin) +
                   "); lower p_b or use fewer cycles");
  const auto reg = detail::linear_fit(xs, ys);
  FitResult fit;
  fit.points_used = reg.npts;
  const double b = reg.slope, a = reg.intercept;
  fit.epsilon_l = (1.0 - std::exp(b)) / 2.0;
  fit.stderr_epsilon = std::exp(b) / 2.0 * std::sqrt(reg.var_slope);
  if (b == 0.0) {
    fit.t0 = 0.0;
    fit.stderr_t0 = 0.0;
  } else {
    fit.t0 = -a / b;
    // propagate through t0 = -a/b with cov(a,b)
    const double ga = -1.0 / b, gb = a / (b * b);
    const double v = ga * ga * reg.var_intercept + gb * gb * reg.var_slope + 2.0 * ga * gb * reg.cov;
    fit.stderr_t0 = v > 0 ? std::sqrt(v) : 0.0;
  }
  return fit;
}

struct SweepPoint {
  double p_b = 0, p_d = 0;
  std::uint64_t seed = 0;
  FidelityCurve curve;
  std::optional<FitResult> fit;  // absent when the per-point fit failed
  std::string fit_failure;       // reason, when absent
};

struct SlopeResult {
  double slope = 0, intercept = 0, stderr_slope = 0;
  std::size_t points = 0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::optional<SlopeResult> slope;
  std::vector<std::string> warnings;
};

/// Log-log slope of epsilon_L versus p_b across surviving points.
inline SlopeResult fit_loglog_slope(std::span<const double> pbs, std::span<const double> eps) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < pbs.size(); ++i) {
    xs.push_back(std::log(pbs[i]));
    ys.push_back(std::log(eps[i]));
  }
  const auto reg = detail::linear_fit(xs, ys);
  return {reg.slope, reg.intercept, std::sqrt(reg.var_slope), reg.npts};
}

/// Run one memory experiment per p_b (point k seeded from mix(master, k)),
/// fit each curve, then fit the log-log slope over points with epsilon_L > 0.
inline SweepResult sweep_and_fit_slope(const StabilizerCode& code, const CycleSchedule& sched,
                                       const DecodeTable& table, std::span<const double> pb_list,
                                       const ExperimentConfig& cfg,
                                       std::array<double, 3> split = {1.0 / 3.0, 1.0 / 3.0,
                                                                      1.0 / 3.0},
                                       double floor_margin = 0.02) {
  if (pb_list.size() < 3) throw FitError("sweep needs at least 3 p_b values");
  double lo = pb_list[0], hi = pb_list[0];
  for (double p : pb_list) {
    if (p <= 0) throw BuildError("sweep p_b values must be positive");
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  if (hi / lo < 3.16227766 * 0.999)  // half a decade, with rounding slack
    throw FitError("sweep p_b range must span at least half a decade");

  SweepResult result;
  result.points.reserve(pb_list.size());
  for (std::size_t k = 0; k < pb_list.size(); ++k) {
    SweepPoint pt;
    pt.p_b = pb_list[k];
    pt.seed = mix_seed(cfg.master_seed, k);
    const NoiseParams noise = NoiseParams::from_pb(pt.p_b, sched, split);
    pt.p_d = noise.p_d;
    ExperimentConfig point_cfg = cfg;
    point_cfg.master_seed = pt.seed;
    pt.curve = run_memory_experiment(code, sched, table, noise, point_cfg);
    try {
      pt.fit = fit_fidelity(pt.curve, floor_margin);
    } catch (const FitError& e) {
      pt.fit_failure = e.what();
      result.warnings.push_back("p_b=" + std::to_string(pt.p_b) + ": " + e.what());
    }
    result.points.push_back(std::move(pt));
  }

  std::vector<double> pbs, eps;
  for (const auto& pt : result.points) {
    if (!pt.fit) continue;
    if (pt.fit->epsilon_l <= 0) {
      result.warnings.push_back("p_b=" + std::to_string(pt.p_b) +
                                ": epsilon_L <= 0, excluded from slope fit");
      continue;
    }
    pbs.push_back(pt.p_b);
    eps.push_back(pt.fit->epsilon_l);
  }
  if (pbs.size() < 3) {
    result.warnings.push_back("slope fit skipped: fewer than 3 surviving points");
    return result;
  }
  result.slope = fit_loglog_slope(pbs, eps);
  return result;
}

}  // namespace ringqec
