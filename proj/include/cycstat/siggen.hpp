#ifndef CYCSTAT_SIGGEN_HPP
#define CYCSTAT_SIGGEN_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cycstat/types.hpp"

namespace cycstat {

enum class PulseKind { GaussianGmsk, Rectangular };

/// Continuous-phase modulation parameters. The reference configuration used
/// throughout the tests is h=0.5, alphabet 2, L=4, BT=0.25, 8 samples/symbol.
struct CpmParams {
    double h = 0.5;       ///< modulation index, > 0
    int alphabet_size = 2; ///< even M >= 2; symbols in {±1, ±3, ..., ±(M-1)}
    int pulse_len = 4;    ///< L, frequency-pulse span in symbols
    double bt = 0.25;     ///< bandwidth-symbol-time product (Gaussian pulse only)
    int sps = 8;          ///< samples per symbol
    PulseKind pulse_kind = PulseKind::GaussianGmsk;
};

/// Sampled frequency pulse f over [0, L*sps) (units 1/sample, sums to 1/2)
/// and its running prefix sum g (dimensionless, ends at 1/2).
struct PulseTable {
    std::vector<double> f;
    std::vector<double> g;
};

/// Standard GMSK Gaussian frequency pulse: difference of Gaussian tail
/// integrals with parameter 2*pi*BT/sqrt(ln 2), centered on [0, L] symbol
/// times, sampled at midpoints, then renormalized so the sample sum is
/// exactly 1/2 despite truncation.
/// @throws UsageError for bt <= 0, pulse_len < 1, or sps < 1.
PulseTable gaussian_freq_pulse(double bt, int pulse_len, int sps);

/// Flat pulse of the same normalization (full-response when pulse_len == 1).
/// @throws UsageError for pulse_len < 1 or sps < 1.
PulseTable rect_freq_pulse(int pulse_len, int sps);

/// Dispatch on params.pulse_kind. @throws UsageError on invalid params.
PulseTable make_pulse(const CpmParams& params);

/// Complex CPM envelope e^{j phi[n]}, length |symbols| * sps, with
///   phi[n] = 2*pi*h * ( sum_completed a_k * 1/2 + sum_active a_k * g[n - k*sps] ),
/// a symbol being completed once n - k*sps >= L*sps. Initial phase is 0.
/// @throws UsageError on invalid params or empty symbols;
/// @throws DataError naming the index of any out-of-alphabet symbol.
std::vector<cx> cpm_modulate(const CpmParams& params, const std::vector<int>& symbols);

/// I.i.d. uniform draw from {±1, ±3, ..., ±(alphabet_size-1)}; identical
/// output for identical inputs and seed.
/// @throws UsageError when alphabet_size is odd or < 2.
std::vector<int> random_symbols(int alphabet_size, std::size_t count, std::uint64_t seed);

/// Complex exponential: sample n = e^{j (2 pi f0 n + phi0)}.
std::vector<cx> tone(double f0, double phi0, std::size_t count);

/// White circular complex Gaussian noise, total variance sigma^2
/// (sigma/sqrt(2) per component), deterministic per seed.
/// @throws UsageError when sigma < 0.
std::vector<cx> awgn(std::size_t count, double sigma, std::uint64_t seed);

} // namespace cycstat

#endif
