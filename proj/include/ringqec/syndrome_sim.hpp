#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ringqec/code.hpp"
#include "ringqec/errors.hpp"
#include "ringqec/noise.hpp"
#include "ringqec/rng.hpp"
#include "ringqec/schedule.hpp"

namespace ringqec {

/// Raw ancilla measurement outcomes m^i_j for one trial, one row per cycle,
/// bit i = ancilla i. Rows are single 64-bit words (the fast path covers
/// every code in the experiment set; n > 64 is refused at context build).
struct SyndromeRecord {
  std::size_t m = 0, n = 0;
  std::vector<std::uint64_t> rows;

  void resize(std::size_t m_, std::size_t n_) {
    m = m_;
    n = n_;
    rows.assign(m, 0);
  }
  bool get(std::size_t cycle, std::size_t ancilla) const { return (rows[cycle] >> ancilla) & 1u; }
};

/// Whether the 1/2-probability readout randomization draws one coin per
/// interacting ancilla (independent) or a single coin for all of them.
enum class FlipMode : std::uint8_t { independent = 0, shared = 1 };

/// Measurement record plus the oracle-side truth, per evaluation point:
/// cumulative_error[j] covers during-phase letters of cycles 0..j and
/// between-phase letters of cycles 0..j-1 (0-based).
struct TrialTrace {
  SyndromeRecord record;
  std::vector<std::uint64_t> cum_x, cum_z;       // cumulative error masks at cycle j
  std::vector<std::uint64_t> true_syndrome;      // sigma(cumulative_error[j]), pre-flip
  std::vector<std::uint8_t> cum_frame;           // logical frame bits of cumulative_error[j]

  PauliOperator cumulative_error(std::size_t j, std::size_t n) const {
    return {n, BitVec::from_u64(cum_x[j], n), BitVec::from_u64(cum_z[j], n)};
  }
};

/// Precomputed per-qubit columns for the trial loop: syndrome increment and
/// logical-frame increment per letter, plus the mask of ancillas whose window
/// covers the qubit.
class SimContext {
 public:
  SimContext(const StabilizerCode& code, const CycleSchedule& sched,
             FlipMode flip_mode = FlipMode::independent)
      : n_(code.n), flip_mode_(flip_mode) {
    if (code.n > 64) throw BuildError("simulation fast path requires n <= 64, got n=" + std::to_string(code.n));
    if (sched.n != code.n) throw DimensionError("schedule does not match code");
    syn_col_.resize(n_);
    frame_col_.resize(n_);
    for (std::size_t q = 0; q < n_; ++q) {
      for (std::uint8_t lv = 0; lv < 4; ++lv) {
        const auto l = static_cast<Letter>(lv);
        const PauliOperator e = PauliOperator::single(n_, q, l);
        syn_col_[q][lv] = syndrome_of(code, e).low64();
        frame_col_[q][lv] = logical_frame_bits(code, e);
      }
    }
    // ancillas interacting with qubit q: windows are contiguous runs of span
    // length starting at the ancilla index, so ancilla i covers q iff
    // (q - i) mod n < span.
    anc_cover_.assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t q : sched.windows[i]) anc_cover_[q] |= std::uint64_t{1} << i;
  }

  std::size_t n() const { return n_; }
  FlipMode flip_mode() const { return flip_mode_; }
  std::uint64_t syndrome_column(std::size_t q, Letter l) const {
    return syn_col_[q][static_cast<std::uint8_t>(l)];
  }
  std::uint64_t ancilla_cover(std::size_t q) const { return anc_cover_[q]; }
  std::uint8_t frame_column(std::size_t q, Letter l) const {
    return frame_col_[q][static_cast<std::uint8_t>(l)];
  }

 private:
  std::size_t n_;
  FlipMode flip_mode_;
  std::vector<std::array<std::uint64_t, 4>> syn_col_;
  std::vector<std::array<std::uint8_t, 4>> frame_col_;
  std::vector<std::uint64_t> anc_cover_;
};

/// Run one trial: accumulate the track's errors, emit the raw measurement row
/// per cycle, then flip (with probability 1/2) every ancilla that interacted
/// with a qubit hit by a during-phase error in that same cycle.
inline void simulate_trial_into(TrialTrace& trace, const SimContext& ctx, const ErrorTrack& track,
                                std::uint64_t seed) {
  const std::size_t n = ctx.n();
  const std::size_t m = track.m;
  if (track.n != n) throw DimensionError("track qubit count does not match code");
  trace.record.resize(m, n);
  trace.cum_x.assign(m, 0);
  trace.cum_z.assign(m, 0);
  trace.true_syndrome.assign(m, 0);
  trace.cum_frame.assign(m, 0);

  Xoshiro256pp rng(seed);
  std::uint64_t cx = 0, cz = 0, syn = 0;
  std::uint8_t frame = 0;

  for (std::size_t j = 0; j < m; ++j) {
    std::uint64_t flip_candidates = 0;
    const Letter* dur = track.during.data() + j * n;
    for (std::size_t q = 0; q < n; ++q) {
      const Letter l = dur[q];
      if (l == Letter::I) continue;
      cx ^= static_cast<std::uint64_t>(letter_x_bit(l)) << q;
      cz ^= static_cast<std::uint64_t>(letter_z_bit(l)) << q;
      syn ^= ctx.syndrome_column(q, l);
      frame ^= ctx.frame_column(q, l);
      flip_candidates |= ctx.ancilla_cover(q);
    }
    trace.cum_x[j] = cx;
    trace.cum_z[j] = cz;
    trace.true_syndrome[j] = syn;
    trace.cum_frame[j] = frame;

    std::uint64_t row = syn;
    if (flip_candidates != 0) {
      const std::uint64_t w = rng.next();
      if (ctx.flip_mode() == FlipMode::independent) {
        row ^= w & flip_candidates;  // each bit of w is an independent fair coin
      } else if (w & 1u) {
        row ^= flip_candidates;
      }
    }
    trace.record.rows[j] = row;

    const Letter* btw = track.between.data() + j * n;
    for (std::size_t q = 0; q < n; ++q) {
      const Letter l = btw[q];
      if (l == Letter::I) continue;
      cx ^= static_cast<std::uint64_t>(letter_x_bit(l)) << q;
      cz ^= static_cast<std::uint64_t>(letter_z_bit(l)) << q;
      syn ^= ctx.syndrome_column(q, l);
      frame ^= ctx.frame_column(q, l);
    }
  }
}

inline TrialTrace simulate_trial(const SimContext& ctx, const ErrorTrack& track, std::uint64_t seed) {
  TrialTrace trace;
  simulate_trial_into(trace, ctx, track, seed);
  return trace;
}

}  // namespace ringqec
