#pragma once

#include <cstddef>
#include <vector>

#include "ringqec/code.hpp"
#include "ringqec/errors.hpp"

namespace ringqec {

/// Gate/readout durations in nanoseconds.
struct TimingParams {
  double t_g1 = 14.0;   // single-qubit gate
  double t_g2 = 26.0;   // iSWAP / SWAP
  double t_m = 880.0;   // measurement + initialization

  void validate() const {
    if (t_g1 <= 0 || t_g2 <= 0 || t_m <= 0) throw BuildError("timing durations must be positive");
  }
};

/// Ring-layout aggregates consumed by the noise model: which data qubits each
/// sliding ancilla traverses, gate-series counts, cycle timing.
struct CycleSchedule {
  std::size_t n = 0;
  int n_q1 = 0;  // single-qubit gate layers per cycle
  int n_q2 = 0;  // two-qubit gate series per cycle == support span of g_0
  std::vector<std::vector<std::size_t>> windows;  // windows[i] = data qubits ancilla i interacts with
  TimingParams timing;
  double cycle_gate_time = 0.0;  // ns
  double full_cycle_time = 0.0;  // ns
};

/// Interaction window of ancilla i is the contiguous span-length run starting
/// at its own index: the ancilla slides across every data qubit under its
/// generator's support span, identity positions included (SWAP traversal).
inline CycleSchedule build_schedule(const StabilizerCode& code, const TimingParams& timing = {},
                                    int n_q1 = 2) {
  timing.validate();
  if (n_q1 < 0) throw BuildError("n_q1 must be >= 0");
  CycleSchedule s;
  s.n = code.n;
  s.n_q1 = n_q1;
  s.n_q2 = static_cast<int>(support_span(code.base));
  s.timing = timing;
  s.windows.resize(s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    s.windows[i].reserve(static_cast<std::size_t>(s.n_q2));
    for (int k = 0; k < s.n_q2; ++k) s.windows[i].push_back((i + static_cast<std::size_t>(k)) % s.n);
  }
  s.cycle_gate_time = n_q1 * timing.t_g1 + s.n_q2 * timing.t_g2;
  s.full_cycle_time = s.cycle_gate_time + timing.t_m;
  return s;
}

/// p_d / p_b = 2 (n_Q1 T_g1 + n_Q2 T_g2) / T_m. The factor 2 folds the 2n
/// qubits active during the gate portion of the cycle into the data-qubit
/// error budget.
inline double pd_ratio(const CycleSchedule& s) { return 2.0 * s.cycle_gate_time / s.timing.t_m; }

}  // namespace ringqec
