#include "cycstat/types.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cycstat {

int LagSpec::m_plus() const {
    if (symmetric) return max_lag;
    int m = 0;
    for (int l : lags) m = std::max(m, l);
    return m;
}

int LagSpec::m_minus() const {
    if (symmetric) return max_lag;
    int m = 0;
    for (int l : lags) m = std::max(m, -l);
    return m;
}

std::vector<int> LagSpec::values() const {
    if (!symmetric) return lags;
    std::vector<int> v(2 * static_cast<std::size_t>(max_lag) + 1);
    std::iota(v.begin(), v.end(), -max_lag);
    return v;
}

std::vector<std::string> validate_config(const EstimatorConfig& cfg) {
    std::vector<std::string> bad;
    if (cfg.win_len < 2) bad.push_back("win_len must be at least 2");
    if (cfg.mode == Mode::Set) {
        if (cfg.alphas.empty()) bad.push_back("Set mode needs at least one cycle frequency");
        if (!cfg.lag_spec.symmetric)
            bad.push_back("Set mode requires a symmetric lag range");
        else if (cfg.lag_spec.max_lag < 0)
            bad.push_back("max_lag must be non-negative");
    } else {
        if (cfg.lag_spec.symmetric)
            bad.push_back("Full mode requires an explicit lag list");
        else if (cfg.lag_spec.lags.empty())
            bad.push_back("Full mode needs at least one lag");
    }
    if (!cfg.lag_spec.symmetric) {
        for (std::size_t i = 1; i < cfg.lag_spec.lags.size(); ++i)
            if (cfg.lag_spec.lags[i] <= cfg.lag_spec.lags[i - 1]) {
                bad.push_back("explicit lags must be strictly increasing");
                break;
            }
    }
    for (double a : cfg.alphas)
        if (!(a >= -0.5 && a < 0.5)) {
            bad.push_back("cycle frequencies must lie in [-1/2, 1/2)");
            break;
        }
    // Estimation over a window shorter than the lag span would mostly
    // correlate samples from outside the window; refuse it.
    int span = std::max(cfg.lag_spec.m_plus(), cfg.lag_spec.m_minus());
    if (cfg.win_len >= 2 && cfg.win_len <= 2 * span)
        bad.push_back("win_len must exceed twice the largest |lag|");
    return bad;
}

bool operator==(const FrameLayout& a, const FrameLayout& b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<SetLayout>(a))
        return std::get<SetLayout>(a) == std::get<SetLayout>(b);
    return std::get<FullLayout>(a) == std::get<FullLayout>(b);
}

std::size_t layout_len(const FrameLayout& layout) {
    if (std::holds_alternative<SetLayout>(layout)) {
        const auto& s = std::get<SetLayout>(layout);
        return static_cast<std::size_t>(s.num_alphas) * (2u * s.max_lag + 1u);
    }
    const auto& f = std::get<FullLayout>(layout);
    return static_cast<std::size_t>(f.num_lags) * f.win_len;
}

std::size_t flat_index(const SetLayout& layout, int alpha_idx, int lag) {
    if (alpha_idx < 0 || alpha_idx >= layout.num_alphas)
        throw std::out_of_range("cycle-frequency index out of range");
    if (lag < -layout.max_lag || lag > layout.max_lag)
        throw std::out_of_range("lag out of range");
    std::size_t row = 2u * layout.max_lag + 1u;
    return static_cast<std::size_t>(alpha_idx) * row +
           static_cast<std::size_t>(lag + layout.max_lag);
}

std::size_t flat_index(const FullLayout& layout, int lag_idx, int bin) {
    if (lag_idx < 0 || lag_idx >= layout.num_lags)
        throw std::out_of_range("lag index out of range");
    if (bin < 0 || bin >= layout.win_len)
        throw std::out_of_range("DFT bin out of range");
    return static_cast<std::size_t>(lag_idx) * layout.win_len +
           static_cast<std::size_t>(bin);
}

double full_bin_to_alpha(int k, int n) {
    if (n <= 0 || k < 0 || k >= n) throw std::out_of_range("DFT bin out of range");
    double a = static_cast<double>(k) / n;
    return (2 * k < n) ? a : a - 1.0;
}

} // namespace cycstat
