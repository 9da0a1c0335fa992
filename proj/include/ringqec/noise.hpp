#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ringqec/errors.hpp"
#include "ringqec/pauli.hpp"
#include "ringqec/rng.hpp"
#include "ringqec/schedule.hpp"

namespace ringqec {

/// iid single-qubit Pauli error channel parameters. p_d applies once per data
/// qubit during the gate portion of each cycle, p_b once during measurement /
/// idle time between cycles.
struct NoiseParams {
  double p_b = 0.0;
  double p_d = 0.0;
  std::array<double, 3> split{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};  // (f_x, f_y, f_z)

  void validate() const {
    if (p_b < 0 || p_b > 1 || p_d < 0 || p_d > 1)
      throw BuildError("error probabilities must be in [0,1]");
    if (split[0] < 0 || split[1] < 0 || split[2] < 0)
      throw BuildError("split fractions must be nonnegative");
    if (std::abs(split[0] + split[1] + split[2] - 1.0) > 1e-12)
      throw BuildError("split fractions must sum to 1");
  }

  /// Standard configuration: p_d derived from p_b through the schedule ratio.
  static NoiseParams from_pb(double p_b, const CycleSchedule& sched,
                             std::array<double, 3> split = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}) {
    NoiseParams p;
    p.p_b = p_b;
    p.p_d = p_b * pd_ratio(sched);
    p.split = split;
    p.validate();
    return p;
  }
};

/// Sampled error letters for one trial: for each cycle and data qubit, one
/// during-phase letter and one between-phase letter. Cycle-major layout.
struct ErrorTrack {
  std::size_t n = 0, m = 0;
  std::vector<Letter> during;   // size m*n
  std::vector<Letter> between;  // size m*n

  void resize(std::size_t n_, std::size_t m_) {
    n = n_;
    m = m_;
    during.assign(m * n, Letter::I);
    between.assign(m * n, Letter::I);
  }

  // cycle index j is 0-based here; cycle j of the sliced layout is spec cycle j+1
  Letter during_at(std::size_t j, std::size_t q) const { return during[j * n + q]; }
  Letter between_at(std::size_t j, std::size_t q) const { return between[j * n + q]; }
  Letter& during_at(std::size_t j, std::size_t q) { return during[j * n + q]; }
  Letter& between_at(std::size_t j, std::size_t q) { return between[j * n + q]; }
};

namespace detail {

/// One-draw-per-slot sampler: a uniform 64-bit word is compared against
/// cumulative thresholds for (X, Y, Z, no error). Integer compares only.
struct LetterThresholds {
  unsigned __int128 cx, cy, cz;

  LetterThresholds(double p, const std::array<double, 3>& split)
      : cx(prob_threshold(p * split[0])),
        cy(prob_threshold(p * (split[0] + split[1]))),
        cz(prob_threshold(p)) {}

  Letter sample(std::uint64_t w) const {
    const auto v = static_cast<unsigned __int128>(w);
    if (v >= cz) return Letter::I;
    if (v < cx) return Letter::X;
    if (v < cy) return Letter::Y;
    return Letter::Z;
  }
};

inline void fill_phase(std::vector<Letter>& out, const LetterThresholds& th, Xoshiro256pp& rng) {
  for (auto& slot : out) slot = th.sample(rng.next());
}

}  // namespace detail

/// Deterministic function of (params, n, m, seed): same inputs give the same
/// track on every platform and under any parallel schedule.
/// Draw order: all during slots (cycle-major), then all between slots.
inline void sample_track_into(ErrorTrack& track, const NoiseParams& params, std::size_t n,
                              std::size_t m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw DimensionError("sample_track: need n >= 1 and m >= 1");
  params.validate();
  track.resize(n, m);
  Xoshiro256pp rng(seed);
  const detail::LetterThresholds th_d(params.p_d, params.split);
  const detail::LetterThresholds th_b(params.p_b, params.split);
  detail::fill_phase(track.during, th_d, rng);
  detail::fill_phase(track.between, th_b, rng);
}

inline ErrorTrack sample_track(const NoiseParams& params, std::size_t n, std::size_t m,
                               std::uint64_t seed) {
  ErrorTrack track;
  sample_track_into(track, params, n, m, seed);
  return track;
}

}  // namespace ringqec
