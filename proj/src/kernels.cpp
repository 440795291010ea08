#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cycstat/estimator.hpp"

namespace cycstat {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

SetWindowPlan::SetWindowPlan(std::vector<double> alphas_, int max_lag_, int win_len_,
                             bool conj_)
    : alphas(std::move(alphas_)), max_lag(max_lag_), win_len(win_len_), conj(conj_) {
    if (alphas.empty() || max_lag < 0 || win_len < 1)
        throw std::logic_error("bad Set-mode window geometry");
    twiddles.resize(alphas.size() * static_cast<std::size_t>(win_len));
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        const double w0 = -two_pi * alphas[a];
        cx* row = twiddles.data() + a * static_cast<std::size_t>(win_len);
        for (int n = 0; n < win_len; ++n)
            row[n] = std::polar(1.0, w0 * static_cast<double>(n));
    }
}

std::vector<cx> set_window_values(const SetWindowPlan& plan, const cx* xw,
                                  const cx* yw, const std::vector<cx>& lead) {
    if (lead.size() != plan.alphas.size())
        throw std::logic_error("lead phasor count does not match cycle frequencies");
    const int N = plan.win_len;
    const int M = plan.max_lag;
    const std::size_t row = 2u * static_cast<std::size_t>(M) + 1u;
    const long long total =
        static_cast<long long>(plan.alphas.size()) * static_cast<long long>(row);
    std::vector<cx> out(static_cast<std::size_t>(total));
    const double inv_n = 1.0 / static_cast<double>(N);
    const bool cj = plan.conj;
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
        const std::size_t a = static_cast<std::size_t>(idx) / row;
        const int m = static_cast<int>(static_cast<std::size_t>(idx) % row) - M;
        const cx* tw = plan.twiddles.data() + a * static_cast<std::size_t>(N);
        const cx* xs = xw + M + m;
        double re = 0.0, im = 0.0;
        for (int n = 0; n < N; ++n) {
            const double xr = xs[n].real(), xi = xs[n].imag();
            const double yr = yw[n].real(), yi = yw[n].imag();
            // q = x * y (conjugate-correlation) or x * conj(y) (correlation)
            const double qr = cj ? xr * yr - xi * yi : xr * yr + xi * yi;
            const double qi = cj ? xr * yi + xi * yr : xi * yr - xr * yi;
            const double tr = tw[n].real(), ti = tw[n].imag();
            re += qr * tr - qi * ti;
            im += qr * ti + qi * tr;
        }
        out[static_cast<std::size_t>(idx)] = cx(re, im) * lead[a] * inv_n;
    }
    return out;
}

FullWindowPlan::FullWindowPlan(std::vector<int> lags_, int win_len_, bool conj_)
    : lags(std::move(lags_)), win_len(win_len_), conj(conj_),
      fft(static_cast<std::size_t>(win_len_ > 0 ? win_len_ : 1)) {
    if (lags.empty() || win_len < 1)
        throw std::logic_error("bad Full-mode window geometry");
    for (int l : lags) {
        if (l > m_plus) m_plus = l;
        if (-l > m_minus) m_minus = -l;
    }
}

std::vector<cx> full_window_values(const FullWindowPlan& plan, const cx* xw,
                                   const cx* yw, const std::vector<cx>& bin_lead) {
    const int N = plan.win_len;
    if (bin_lead.size() != static_cast<std::size_t>(N))
        throw std::logic_error("bin lead table does not match window length");
    const long long n_lags = static_cast<long long>(plan.lags.size());
    std::vector<cx> out(static_cast<std::size_t>(n_lags) * static_cast<std::size_t>(N));
    const double inv_n = 1.0 / static_cast<double>(N);
    const bool cj = plan.conj;
#pragma omp parallel for schedule(static)
    for (long long l = 0; l < n_lags; ++l) {
        const int m = plan.lags[static_cast<std::size_t>(l)];
        const cx* xs = xw + plan.m_minus + m;
        std::vector<cx> prod(static_cast<std::size_t>(N));
        for (int n = 0; n < N; ++n)
            prod[static_cast<std::size_t>(n)] = cj ? xs[n] * yw[n] : xs[n] * std::conj(yw[n]);
        cx* dst = out.data() + static_cast<std::size_t>(l) * static_cast<std::size_t>(N);
        plan.fft.forward(prod.data(), dst);
        for (int k = 0; k < N; ++k)
            dst[k] = dst[k] * bin_lead[static_cast<std::size_t>(k)] * inv_n;
    }
    return out;
}

std::vector<cx> set_lead_phasors(const std::vector<double>& alphas, std::uint64_t k0) {
    std::vector<cx> lead(alphas.size());
    for (std::size_t a = 0; a < alphas.size(); ++a)
        lead[a] = std::polar(1.0, -two_pi * alphas[a] * static_cast<double>(k0));
    return lead;
}

std::vector<cx> full_bin_lead(int win_len, std::uint64_t k0) {
    if (win_len < 1) throw std::logic_error("bad window length");
    const std::uint64_t n = static_cast<std::uint64_t>(win_len);
    const std::uint64_t base = k0 % n;
    std::vector<cx> lead(static_cast<std::size_t>(win_len));
    for (std::uint64_t k = 0; k < n; ++k) {
        const std::uint64_t r = (k * base) % n; // exact: k*base < 2^63 for any sane N
        lead[static_cast<std::size_t>(k)] =
            std::polar(1.0, -two_pi * static_cast<double>(r) / static_cast<double>(n));
    }
    return lead;
}

std::vector<cx> compute_set_window(const std::vector<cx>& xw, const std::vector<cx>& yw,
                                   const std::vector<double>& alphas, int max_lag,
                                   bool conj, std::uint64_t k0) {
    if (yw.empty() || xw.size() != yw.size() + 2u * static_cast<std::size_t>(max_lag))
        throw std::logic_error("window lengths do not match the lag range");
    SetWindowPlan plan(alphas, max_lag, static_cast<int>(yw.size()), conj);
    return set_window_values(plan, xw.data(), yw.data(), set_lead_phasors(alphas, k0));
}

std::vector<cx> compute_full_window(const std::vector<cx>& xw, const std::vector<cx>& yw,
                                    const std::vector<int>& lags, bool conj,
                                    std::uint64_t k0) {
    if (yw.empty()) throw std::logic_error("empty estimation window");
    FullWindowPlan plan(lags, static_cast<int>(yw.size()), conj);
    if (xw.size() != yw.size() + static_cast<std::size_t>(plan.m_plus) +
                         static_cast<std::size_t>(plan.m_minus))
        throw std::logic_error("window does not cover the requested lags");
    return full_window_values(plan, xw.data(), yw.data(),
                              full_bin_lead(plan.win_len, k0));
}

} // namespace cycstat
