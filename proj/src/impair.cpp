#include "cycstat/impair.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cycstat/errors.hpp"
#include "cycstat/estimator.hpp"
#include "cycstat/siggen.hpp"

namespace cycstat {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

std::vector<cx> apply_cfo(const std::vector<cx>& x, const CfoSpec& cfo) {
    if (!(std::abs(cfo.eps) < 0.5))
        throw UsageError("frequency offset must satisfy |eps| < 1/2 cycles/sample");
    std::vector<cx> y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        // fmod keeps the rotation exactly antisymmetric in eps, so applying
        // the inverse spec recovers the input to rounding error.
        const double frac = std::fmod(cfo.eps * static_cast<double>(n), 1.0);
        y[n] = x[n] * std::polar(1.0, two_pi * frac + cfo.phi0);
    }
    return y;
}

std::vector<cx> add_noise_snr(const std::vector<cx>& x, double snr_db,
                              std::uint64_t seed) {
    if (x.empty()) throw UsageError("cannot scale noise to an empty record");
    double power = 0.0;
    for (const cx& v : x) power += std::norm(v);
    power /= static_cast<double>(x.size());
    if (!(power > 0.0))
        throw UsageError("cannot scale noise to an all-zero record");
    const double sigma = std::sqrt(power * std::pow(10.0, -snr_db / 10.0));
    const auto w = awgn(x.size(), sigma, seed);
    std::vector<cx> y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) y[n] = x[n] + w[n];
    return y;
}

double estimate_cfo_ccf(const std::vector<cx>& x, double expected_beta, int N,
                        int num_frames) {
    if (num_frames < 1) throw UsageError("need at least one frame for the scan");
    if (!(expected_beta >= -0.5 && expected_beta < 0.5))
        throw UsageError("expected conjugate cycle frequency must lie in [-1/2, 1/2)");
    EstimatorConfig cfg;
    cfg.mode = Mode::Full;
    cfg.conj = true;
    cfg.win_len = N;
    cfg.lag_spec = LagSpec::Explicit({0});
    CyclicCorrelator est(cfg); // validates N
    const std::size_t need =
        static_cast<std::size_t>(N) * static_cast<std::size_t>(num_frames);
    if (x.size() < need)
        throw UsageError("record too short for the requested number of frames");

    auto frames = est.push(x, x);
    frames.resize(static_cast<std::size_t>(num_frames));
    const auto avg = average_frames(frames, AverageMode::Magnitude);
    std::vector<double> mag(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) mag[static_cast<std::size_t>(k)] = avg[static_cast<std::size_t>(k)].real();

    // Peak search restricted to strictly within +-N/8 bins around the
    // expected feature.  The edges are excluded: a mirror feature at
    // -expected_beta sits exactly N/8 bins below when expected_beta = 1/16,
    // and must not capture the peak.
    const auto wrap_bin = [N](long long k) {
        long long r = k % N;
        if (r < 0) r += N;
        return static_cast<std::size_t>(r);
    };
    const long long bin_e = std::llround(expected_beta * N);
    const long long half_span = N / 8;
    std::size_t k_peak = wrap_bin(bin_e);
    std::vector<double> window;
    window.reserve(static_cast<std::size_t>(2 * half_span - 1));
    for (long long k = bin_e - half_span + 1; k <= bin_e + half_span - 1; ++k) {
        const std::size_t kk = wrap_bin(k);
        window.push_back(mag[kk]);
        if (mag[kk] > mag[k_peak]) k_peak = kk;
    }

    // The feature must stand out against the scanned band itself.  Signals
    // whose squared samples merely carry broadband energy near the expected
    // frequency (no spectral line) raise the band's median along with its
    // maximum, so this ratio stays small and they are rejected.
    std::nth_element(window.begin(), window.begin() + window.size() / 2,
                     window.end());
    const double median = window[window.size() / 2];
    if (!(mag[k_peak] > 3.0 * median))
        throw NoFeatureError(
            "no feature detected at the expected conjugate cycle frequency");

    // Sub-bin refinement: parabola through the log-magnitudes of the peak
    // and its neighbours.
    const double l0 = mag[k_peak];
    const double lm = mag[wrap_bin(static_cast<long long>(k_peak) - 1)];
    const double lp = mag[wrap_bin(static_cast<long long>(k_peak) + 1)];
    double delta = 0.0;
    if (lm > 0.0 && l0 > 0.0 && lp > 0.0) {
        const double a = std::log(lm), b = std::log(l0), c = std::log(lp);
        const double den = a - 2.0 * b + c;
        if (den < 0.0) delta = std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
    }

    double beta_peak = (static_cast<double>(k_peak) + delta) / N;
    if (beta_peak >= 0.5) beta_peak -= 1.0;
    double diff = beta_peak - expected_beta;
    diff -= std::round(diff); // shortest wrapped distance on the cycle circle
    return diff / 2.0;
}

} // namespace cycstat
