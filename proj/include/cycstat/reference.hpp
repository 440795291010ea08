#ifndef CYCSTAT_REFERENCE_HPP
#define CYCSTAT_REFERENCE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cycstat/siggen.hpp"
#include "cycstat/types.hpp"

namespace cycstat {

/// Trials-averaged |R| of a CPM signal on an (alpha, lag) grid, produced by
/// slow direct summation. Serves as ground truth for the streaming kernels.
struct OracleTable {
    std::vector<double> alphas;
    std::vector<int> lags;
    /// Row-major |alphas| x |lags| mean magnitudes, all finite and >= 0.
    std::vector<double> mean_magnitude;
    int trials = 0;
    std::size_t record_len = 0;
    std::uint64_t seed = 0;

    double cell(std::size_t alpha_idx, std::size_t lag_idx) const {
        return mean_magnitude[alpha_idx * lags.size() + lag_idx];
    }
};

/// Literal windowed sum, no algebraic shortcuts:
///   e^{-j 2 pi alpha k0} * (1/N) * sum_{n=0}^{N-1} x[k0+n+m] * y[k0+n]^(*) * e^{-j 2 pi alpha n}
/// with the conjugation applied to y iff conj == false.
/// @throws UsageError when N < 1 or either input fails to cover its window.
cx cyclic_xcorr_direct(const std::vector<cx>& x, const std::vector<cx>& y,
                       double alpha, int m, bool conj, std::size_t k0, int N);

/// Monte-Carlo cyclic-magnitude table: per trial, draw fresh symbols with
/// seed + trial_index, modulate, slide non-overlapping windows of win_len
/// across the record, and average |R| over every window of every trial.
/// Reduction order is fixed by trial index, so tables are bit-reproducible.
/// @throws UsageError on invalid params, empty grids, trials < 1, or a
/// record too short for a single window.
OracleTable gmsk_mc_oracle(const CpmParams& params,
                           const std::vector<double>& alphas,
                           const std::vector<int>& lags,
                           bool conj, int win_len, int trials,
                           std::size_t record_len, std::uint64_t seed);

} // namespace cycstat

#endif
