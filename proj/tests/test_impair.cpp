#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cycstat/errors.hpp"
#include "cycstat/estimator.hpp"
#include "cycstat/impair.hpp"
#include "cycstat/siggen.hpp"

using namespace cycstat;

namespace {

std::vector<cx> gmsk_record(std::size_t len, double h, std::uint64_t seed) {
    CpmParams p;
    p.h = h;
    const auto syms = random_symbols(
        p.alphabet_size, (len + p.sps - 1) / static_cast<std::size_t>(p.sps), seed);
    auto x = cpm_modulate(p, syms);
    x.resize(len);
    return x;
}

std::vector<CyclicFrame> conj_full_frames(const std::vector<cx>& x, int n,
                                          const std::vector<int>& lags) {
    EstimatorConfig cfg;
    cfg.mode = Mode::Full;
    cfg.conj = true;
    cfg.win_len = n;
    cfg.lag_spec = LagSpec::Explicit(lags);
    CyclicCorrelator est(cfg);
    return est.push(x, x);
}

int peak_bin(const std::vector<cx>& mag_avg, int n) {
    int best = 0;
    double best_mag = -1.0;
    for (int k = 0; k < n; ++k)
        if (mag_avg[static_cast<std::size_t>(k)].real() > best_mag) {
            best_mag = mag_avg[static_cast<std::size_t>(k)].real();
            best = k;
        }
    return best;
}

} // namespace

TEST_CASE("apply_cfo: identity, tone shift, exact-ish inverse, guard") {
    const auto x = gmsk_record(4096, 0.5, 5);

    const auto same = apply_cfo(x, {0.0, 0.0});
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(same[i] == x[i]);

    // A CFO turns a tone at f0 into a tone at f0 + eps with phase phi0.
    const auto t = tone(0.1, 0.2, 512);
    const auto shifted = apply_cfo(t, {0.05, 0.3});
    const auto want = tone(0.15, 0.5, 512);
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(std::abs(shifted[i] - want[i]) <= 1e-9);

    const CfoSpec c{0.003, 1.1};
    const auto back = apply_cfo(apply_cfo(x, c), c.inverse());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(back[i] - x[i]) <= 1e-12);

    CHECK_THROWS_AS(apply_cfo(x, {0.5, 0.0}), UsageError);
    CHECK_THROWS_AS(apply_cfo(x, {-0.6, 0.0}), UsageError);
}

TEST_CASE("add_noise_snr: level, determinism, guards") {
    const std::vector<cx> x(1 << 16, cx(1, 0));

    // Very high SNR is indistinguishable from the input.
    const auto clean = add_noise_snr(x, 300.0, 1);
    for (std::size_t i = 0; i < 256; ++i) CHECK(std::abs(clean[i] - x[i]) <= 1e-12);

    // At 10 dB on a unit-power signal the added noise has variance 0.1.
    const auto noisy = add_noise_snr(x, 10.0, 2);
    double p = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) p += std::norm(noisy[i] - x[i]);
    p /= static_cast<double>(x.size());
    CHECK(p == doctest::Approx(0.1).epsilon(0.10));

    const auto again = add_noise_snr(x, 10.0, 2);
    CHECK(noisy == again);
    const auto other = add_noise_snr(x, 10.0, 3);
    CHECK(noisy != other);

    CHECK_THROWS_AS(add_noise_snr({}, 10.0, 1), UsageError);
    CHECK_THROWS_AS(add_noise_snr(std::vector<cx>(8, cx(0, 0)), 10.0, 1), UsageError);
}

TEST_CASE("CFO leaves non-conjugate cyclic magnitudes untouched") {
    // R_y(alpha, m) = e^{j 2 pi eps m} R_x(alpha, m) when y conjugates the
    // second factor, so every magnitude is invariant.
    const auto x = gmsk_record(8 * 1024 + 16, 0.5, 21);
    const auto y = apply_cfo(x, {0.003, 0.7});

    EstimatorConfig cfg;
    cfg.mode = Mode::Set;
    cfg.conj = false;
    cfg.win_len = 1024;
    cfg.alphas = {0.0, 0.125};
    cfg.lag_spec = LagSpec::Symmetric(8);

    CyclicCorrelator ex(cfg), ey(cfg);
    const auto fx = ex.push(x, x);
    const auto fy = ey.push(y, y);
    REQUIRE(fx.size() == fy.size());
    REQUIRE(!fx.empty());
    for (std::size_t f = 0; f < fx.size(); ++f)
        for (std::size_t i = 0; i < fx[f].values.size(); ++i)
            CHECK(std::abs(fx[f].values[i]) ==
                  doctest::Approx(std::abs(fy[f].values[i])).epsilon(1e-9));
}

TEST_CASE("CFO moves the conjugate feature by two bins per cycle of eps*N") {
    const int n = 1024;
    const double eps = 0.003;
    const auto x = gmsk_record(16 * n + 8, 0.5, 33);
    const auto y = apply_cfo(x, {eps, 0.0});

    const auto fx = conj_full_frames(x, n, {0});
    const auto fy = conj_full_frames(y, n, {0});
    REQUIRE(fx.size() == 16);
    REQUIRE(fy.size() == 16);
    const auto ax = average_frames(fx, AverageMode::Magnitude);
    const auto ay = average_frames(fy, AverageMode::Magnitude);

    const int kx = peak_bin(ax, n);
    const int ky = peak_bin(ay, n);
    const int expect_shift = static_cast<int>(std::lround(2 * eps * n)); // 6
    CHECK(((ky - kx) % n + n) % n == expect_shift);
    // Sanity: features live at beta = +-1/(2 sps), bins 64 and 960; which of
    // the two mirrors carries the global maximum depends on the realization.
    CHECK((kx == n / 16 || kx == n - n / 16));
}

TEST_CASE("estimate_cfo_ccf recovers offsets to within one bin spacing") {
    const int n = 1024;
    const int frames = 16;
    const auto x = gmsk_record(static_cast<std::size_t>(frames) * n + 8, 0.5, 77);
    const double beta = 0.0625;

    const double e0 = estimate_cfo_ccf(x, beta, n, frames);
    CHECK(std::abs(e0) <= 0.5 / n);

    for (double eps : {-0.01, 0.003, 0.02}) {
        const auto y = apply_cfo(x, {eps, 0.4});
        const double est = estimate_cfo_ccf(y, beta, n, frames);
        INFO("eps ", eps, " est ", est);
        CHECK(std::abs(est - eps) <= 1.0 / n);
    }
}

TEST_CASE("estimate_cfo_ccf refuses signals without a conjugate feature") {
    const int n = 1024;
    const auto x = gmsk_record(16 * n + 8, 0.7, 88); // proper: no feature
    CHECK_THROWS_AS(estimate_cfo_ccf(x, 0.0625, n, 16), NoFeatureError);

    const auto noise = awgn(16 * n + 8, 1.0, 9);
    CHECK_THROWS_AS(estimate_cfo_ccf(noise, 0.0625, n, 16), NoFeatureError);
}

TEST_CASE("estimate_cfo_ccf argument guards") {
    const auto x = gmsk_record(4096, 0.5, 1);
    CHECK_THROWS_AS(estimate_cfo_ccf(x, 0.0625, 1024, 0), UsageError);
    CHECK_THROWS_AS(estimate_cfo_ccf(x, 0.0625, 1024, 8), UsageError); // too short
    CHECK_THROWS_AS(estimate_cfo_ccf(x, 0.75, 1024, 4), UsageError);
}
