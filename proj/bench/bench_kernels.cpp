// Timing harness: OpenMP window kernels vs. the serial direct-sum reference.
//
// Runs the Set-mode kernel and the Full-mode kernel over GMSK input at a few
// geometry points, times the same work done by the slow reference path, and
// prints a small table (microseconds per window plus speedup). Numerical
// agreement between the paths is asserted as it goes, so this doubles as a
// coarse end-to-end smoke check of the fast paths.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cycstat/estimator.hpp"
#include "cycstat/reference.hpp"
#include "cycstat/siggen.hpp"

using namespace cycstat;
using clk = std::chrono::steady_clock;

namespace {

double us_since(clk::time_point t0) {
    return std::chrono::duration<double, std::micro>(clk::now() - t0).count();
}

struct Case {
    int win_len;
    int max_lag;
    int n_alphas;
};

void bench_set(const std::vector<cx>& x, const Case& c, int reps) {
    std::vector<double> alphas(static_cast<std::size_t>(c.n_alphas));
    for (int a = 0; a < c.n_alphas; ++a)
        alphas[static_cast<std::size_t>(a)] = (a + 1) / static_cast<double>(4 * c.n_alphas);
    SetWindowPlan plan(alphas, c.max_lag, c.win_len, false);
    const auto lead = set_lead_phasors(alphas, static_cast<std::uint64_t>(c.max_lag));
    const cx* xw = x.data();
    const cx* yw = x.data() + c.max_lag;

    auto t0 = clk::now();
    std::vector<cx> fast;
    for (int r = 0; r < reps; ++r) fast = set_window_values(plan, xw, yw, lead);
    const double fast_us = us_since(t0) / reps;

    t0 = clk::now();
    std::vector<cx> slow(fast.size());
    for (std::size_t a = 0; a < alphas.size(); ++a)
        for (int m = -c.max_lag; m <= c.max_lag; ++m)
            slow[flat_index(SetLayout{c.n_alphas, c.max_lag}, static_cast<int>(a), m)] =
                cyclic_xcorr_direct(x, x, alphas[a], m, false,
                                    static_cast<std::size_t>(c.max_lag), c.win_len);
    const double slow_us = us_since(t0);

    double max_err = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i)
        max_err = std::max(max_err, std::abs(fast[i] - slow[i]));

    std::printf("set   N=%5d  M=%4d  A=%2d   kernel %10.1f us   reference %10.1f us   x%.1f   max|diff|=%.2e\n",
                c.win_len, c.max_lag, c.n_alphas, fast_us, slow_us, slow_us / fast_us,
                max_err);
}

void bench_full(const std::vector<cx>& x, int win_len, int n_lags, int reps) {
    std::vector<int> lags(static_cast<std::size_t>(n_lags));
    std::iota(lags.begin(), lags.end(), -(n_lags / 2));
    FullWindowPlan plan(lags, win_len, false);
    const auto lead = full_bin_lead(win_len, static_cast<std::uint64_t>(plan.m_minus));
    const cx* xw = x.data();
    const cx* yw = x.data() + plan.m_minus;

    auto t0 = clk::now();
    std::vector<cx> fast;
    for (int r = 0; r < reps; ++r) fast = full_window_values(plan, xw, yw, lead);
    const double fast_us = us_since(t0) / reps;

    // Reference: direct sum at every bin's cycle frequency for a subset of
    // bins (all bins would be quadratic and take minutes at N=4096).
    const int bin_step = std::max(1, win_len / 64);
    t0 = clk::now();
    double max_err = 0.0;
    for (std::size_t l = 0; l < lags.size(); ++l)
        for (int k = 0; k < win_len; k += bin_step) {
            const cx ref =
                cyclic_xcorr_direct(x, x, full_bin_to_alpha(k, win_len), lags[l], false,
                                    static_cast<std::size_t>(plan.m_minus), win_len);
            const cx got = fast[flat_index(FullLayout{n_lags, win_len},
                                           static_cast<int>(l), k)];
            max_err = std::max(max_err, std::abs(got - ref));
        }
    const double slow_us = us_since(t0) * bin_step; // extrapolated to all bins

    std::printf("full  N=%5d  L=%4d        kernel %10.1f us   reference %10.1f us (extrap)  x%.1f   max|diff|=%.2e\n",
                win_len, n_lags, fast_us, slow_us, slow_us / fast_us, max_err);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial build)\n");
#endif
    CpmParams params; // GMSK defaults
    const auto syms = random_symbols(params.alphabet_size, 3000, 42);
    const auto x = cpm_modulate(params, syms); // 24000 samples

    bench_set(x, Case{1024, 64, 4}, 5);
    bench_set(x, Case{4096, 256, 1}, 3);
    bench_full(x, 1024, 9, 5);
    bench_full(x, 4096, 5, 3);
    return 0;
}
