#include "cycstat/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cycstat/errors.hpp"

namespace cycstat {

cx cyclic_xcorr_direct(const std::vector<cx>& x, const std::vector<cx>& y,
                       double alpha, int m, bool conj, std::size_t k0, int N) {
    if (N < 1) throw UsageError("window length must be at least 1");
    const std::ptrdiff_t first_x = static_cast<std::ptrdiff_t>(k0) + m;
    const std::ptrdiff_t last_x = first_x + N - 1;
    if (first_x < 0 || last_x >= static_cast<std::ptrdiff_t>(x.size()))
        throw UsageError("x does not cover the requested window at this lag");
    if (k0 + static_cast<std::size_t>(N) > y.size())
        throw UsageError("y does not cover the requested window");
    const double w0 = -2.0 * std::numbers::pi * alpha;
    cx acc(0.0, 0.0);
    for (int n = 0; n < N; ++n) {
        const cx xs = x[static_cast<std::size_t>(first_x) + n];
        const cx ys = y[k0 + n];
        const cx prod = conj ? xs * ys : xs * std::conj(ys);
        acc += prod * std::polar(1.0, w0 * n);
    }
    acc /= static_cast<double>(N);
    // Anchor the phase to absolute sample index 0 so windows at different
    // positions of the same cyclostationary signal agree coherently.
    return acc * std::polar(1.0, w0 * static_cast<double>(k0));
}

OracleTable gmsk_mc_oracle(const CpmParams& params,
                           const std::vector<double>& alphas,
                           const std::vector<int>& lags,
                           bool conj, int win_len, int trials,
                           std::size_t record_len, std::uint64_t seed) {
    if (alphas.empty() || lags.empty())
        throw UsageError("oracle needs at least one cycle frequency and one lag");
    if (trials < 1) throw UsageError("oracle needs at least one trial");
    if (win_len < 1) throw UsageError("window length must be at least 1");
    int m_plus = 0, m_minus = 0;
    for (int l : lags) {
        m_plus = std::max(m_plus, l);
        m_minus = std::max(m_minus, -l);
    }
    const std::size_t need =
        static_cast<std::size_t>(win_len) + m_plus + m_minus;
    if (record_len < need)
        throw UsageError("record too short for a single estimation window");
    const std::size_t wins = (record_len - m_plus - m_minus) / win_len;
    const std::size_t cells = alphas.size() * lags.size();

    // Probe-modulate one symbol to validate the modulation parameters here:
    // an exception escaping a parallel-for iteration would terminate the
    // process instead of reaching the caller.
    cpm_modulate(params, std::vector<int>{1});
    const std::size_t n_syms =
        (record_len + static_cast<std::size_t>(params.sps) - 1) /
        static_cast<std::size_t>(params.sps);

    // Per-trial partial tables, reduced sequentially by trial index below,
    // keep the result independent of the thread count.
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        const auto syms = random_symbols(params.alphabet_size, n_syms,
                                         seed + static_cast<std::uint64_t>(t));
        auto x = cpm_modulate(params, syms);
        x.resize(record_len);
        std::vector<double> acc(cells, 0.0);
        for (std::size_t j = 0; j < wins; ++j) {
            const std::size_t k0 = static_cast<std::size_t>(m_minus) + j * win_len;
            for (std::size_t a = 0; a < alphas.size(); ++a)
                for (std::size_t l = 0; l < lags.size(); ++l)
                    acc[a * lags.size() + l] += std::abs(cyclic_xcorr_direct(
                        x, x, alphas[a], lags[l], conj, k0, win_len));
        }
        partial[static_cast<std::size_t>(t)] = std::move(acc);
    }

    OracleTable table;
    table.alphas = alphas;
    table.lags = lags;
    table.trials = trials;
    table.record_len = record_len;
    table.seed = seed;
    table.mean_magnitude.assign(cells, 0.0);
    for (int t = 0; t < trials; ++t)
        for (std::size_t c = 0; c < cells; ++c)
            table.mean_magnitude[c] += partial[static_cast<std::size_t>(t)][c];
    const double norm = 1.0 / (static_cast<double>(trials) * static_cast<double>(wins));
    for (double& v : table.mean_magnitude) v *= norm;
    return table;
}

} // namespace cycstat
