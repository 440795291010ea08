#ifndef CYCSTAT_IMPAIR_HPP
#define CYCSTAT_IMPAIR_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cycstat/types.hpp"

namespace cycstat {

/// Carrier frequency offset: a per-sample phase ramp of eps cycles/sample
/// plus a fixed phase, indexed from the start of the record it is applied to.
struct CfoSpec {
    double eps = 0.0;  ///< cycles/sample, |eps| < 1/2
    double phi0 = 0.0; ///< radians

    CfoSpec inverse() const { return {-eps, -phi0}; }
};

/// y[n] = x[n] * e^{j (2 pi eps n + phi0)}. apply_cfo(apply_cfo(x, c),
/// c.inverse()) returns x to within rounding.
/// @throws UsageError when |eps| >= 1/2.
std::vector<cx> apply_cfo(const std::vector<cx>& x, const CfoSpec& cfo);

/// x plus white circular Gaussian noise scaled so that
/// noise variance = mean_power(x) * 10^{-snr_db/10}; deterministic per seed.
/// @throws UsageError when x is empty or has zero mean power.
std::vector<cx> add_noise_snr(const std::vector<cx>& x, double snr_db,
                              std::uint64_t seed);

/// CFO estimate from the conjugate-correlation scan: runs a conj Full-mode
/// sweep at lag 0 over num_frames windows of length N, magnitude-averages,
/// locates the peak bin within +-N/8 bins of expected_beta, refines it by
/// three-point parabolic interpolation on log-magnitude, and returns
///   eps_hat = (beta_peak - expected_beta) / 2
/// (a CFO of eps moves the conjugate feature by 2*eps).
/// @throws UsageError when x is too short for num_frames windows, when
///         num_frames < 1, or when expected_beta is outside [-1/2, 1/2);
/// @throws NoFeatureError when the peak fails to clear 3x the median scan
///         magnitude (proper signals carry no conjugate feature).
double estimate_cfo_ccf(const std::vector<cx>& x, double expected_beta, int N,
                        int num_frames);

} // namespace cycstat

#endif
