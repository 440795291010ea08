#include "cycstat/siggen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "cycstat/errors.hpp"

namespace cycstat {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Gaussian tail integral Q(x) = P[N(0,1) > x].
double qfunc(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

void check_params(const CpmParams& p) {
    if (!(p.h > 0.0)) throw UsageError("modulation index must be positive");
    if (p.alphabet_size < 2 || p.alphabet_size % 2 != 0)
        throw UsageError("alphabet size must be even and at least 2");
    if (p.pulse_len < 1) throw UsageError("pulse length must be at least 1 symbol");
    if (p.sps < 1) throw UsageError("samples per symbol must be at least 1");
    if (p.pulse_kind == PulseKind::GaussianGmsk && !(p.bt > 0.0))
        throw UsageError("bandwidth-time product must be positive");
}

/// Scale f so its left-to-right sum is 1/2, then retune the final sample so
/// the rounded sequential sum lands on 1/2 exactly. Truncating the pulse to
/// L symbols loses a sliver of area, and downstream code relies on the
/// half-cycle-per-symbol normalization holding bit-exactly. The final sample
/// is the one place a single assignment can do that: with the partial sum in
/// [1/4, 1], the subtraction 1/2 - partial is itself exact, so the retuned
/// total rounds to 1/2 (a center-sample nudge can oscillate by one ulp
/// forever instead).
void renormalize_half(std::vector<double>& f) {
    double s = 0.0;
    for (double v : f) s += v;
    if (!(s > 0.0) || !std::isfinite(s))
        throw DataError("frequency pulse degenerated to zero area");
    const double scale = 0.5 / s;
    for (double& v : f) v *= scale;
    // Walk in from the right until a sample can absorb the rounding debt:
    // heavily truncated pulses have tail samples smaller than the summation
    // noise, in which case they are zeroed and the debt moves one sample in.
    // With the partial sum in [1/4, 1] the subtraction below is exact, so the
    // verified total is reached after retuning at most a few tail samples.
    for (std::size_t k = f.size(); k-- > 0;) {
        double head = 0.0;
        for (std::size_t i = 0; i < k; ++i) head += f[i];
        const double r = 0.5 - head;
        if (r < 0.0) continue;
        f[k] = r;
        std::fill(f.begin() + static_cast<std::ptrdiff_t>(k) + 1, f.end(), 0.0);
        double total = head;
        for (std::size_t i = k; i < f.size(); ++i) total += f[i];
        if (total == 0.5) return;
    }
    throw DataError("frequency pulse normalization failed to converge");
}

PulseTable finish_table(std::vector<double> f) {
    renormalize_half(f);
    PulseTable t;
    t.g.resize(f.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        acc += f[i];
        t.g[i] = acc;
    }
    t.f = std::move(f);
    return t;
}

} // namespace

PulseTable gaussian_freq_pulse(double bt, int pulse_len, int sps) {
    if (!(bt > 0.0)) throw UsageError("bandwidth-time product must be positive");
    if (pulse_len < 1) throw UsageError("pulse length must be at least 1 symbol");
    if (sps < 1) throw UsageError("samples per symbol must be at least 1");
    const int len = pulse_len * sps;
    const double c = two_pi * bt / std::sqrt(std::numbers::ln2);
    const double half_span = 0.5 * pulse_len;
    std::vector<double> f(len);
    for (int i = 0; i < len; ++i) {
        // Midpoint sampling keeps f[i] == f[len-1-i] exact: paired sample
        // times sum to exactly L symbols.
        const double tau = (i + 0.5) / sps;
        f[i] = 0.5 * (qfunc(c * (tau - half_span - 0.5)) - qfunc(c * (tau - half_span + 0.5))) / sps;
    }
    return finish_table(std::move(f));
}

PulseTable rect_freq_pulse(int pulse_len, int sps) {
    if (pulse_len < 1) throw UsageError("pulse length must be at least 1 symbol");
    if (sps < 1) throw UsageError("samples per symbol must be at least 1");
    const int len = pulse_len * sps;
    std::vector<double> f(len, 0.5 / len);
    return finish_table(std::move(f));
}

PulseTable make_pulse(const CpmParams& params) {
    check_params(params);
    if (params.pulse_kind == PulseKind::Rectangular)
        return rect_freq_pulse(params.pulse_len, params.sps);
    return gaussian_freq_pulse(params.bt, params.pulse_len, params.sps);
}

std::vector<cx> cpm_modulate(const CpmParams& params, const std::vector<int>& symbols) {
    check_params(params);
    if (symbols.empty()) throw UsageError("cannot modulate an empty symbol stream");
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const int a = symbols[i];
        const int mag = std::abs(a);
        if (mag % 2 != 1 || mag > params.alphabet_size - 1)
            throw DataError("symbol " + std::to_string(a) + " at index " +
                            std::to_string(i) + " is outside the size-" +
                            std::to_string(params.alphabet_size) + " alphabet");
    }
    const PulseTable pulse = make_pulse(params);
    const int sps = params.sps;
    const std::ptrdiff_t span = params.pulse_len;
    // A completed symbol contributes a fixed 2*pi*h*(1/2) phase step; fold
    // those into a wrapped base so long records keep full phase precision.
    const double step = std::numbers::pi * params.h;
    std::vector<cx> out(symbols.size() * static_cast<std::size_t>(sps));
    double base = 0.0;
    std::ptrdiff_t completed = 0;
    for (std::size_t n = 0; n < out.size(); ++n) {
        const std::ptrdiff_t cur = static_cast<std::ptrdiff_t>(n) / sps;
        const std::ptrdiff_t first_active = cur - span + 1;
        while (completed < first_active) {
            base = std::fmod(base + step * symbols[static_cast<std::size_t>(completed)], two_pi);
            ++completed;
        }
        double phi = base;
        for (std::ptrdiff_t k = std::max<std::ptrdiff_t>(first_active, 0); k <= cur; ++k)
            phi += two_pi * params.h * symbols[static_cast<std::size_t>(k)] *
                   pulse.g[n - static_cast<std::size_t>(k) * sps];
        out[n] = std::polar(1.0, phi);
    }
    return out;
}

std::vector<int> random_symbols(int alphabet_size, std::size_t count, std::uint64_t seed) {
    if (alphabet_size < 2 || alphabet_size % 2 != 0)
        throw UsageError("alphabet size must be even and at least 2");
    std::mt19937_64 gen(seed);
    std::vector<int> out(count);
    for (auto& s : out) {
        const int idx = static_cast<int>(gen() % static_cast<std::uint64_t>(alphabet_size));
        s = 2 * idx - (alphabet_size - 1);
    }
    return out;
}

std::vector<cx> tone(double f0, double phi0, std::size_t count) {
    std::vector<cx> out(count);
    for (std::size_t n = 0; n < count; ++n) {
        // Reduce f0*n modulo 1 before scaling by 2*pi so long records do not
        // lose phase precision to a huge argument.
        const double frac = std::fmod(f0 * static_cast<double>(n), 1.0);
        out[n] = std::polar(1.0, two_pi * frac + phi0);
    }
    return out;
}

std::vector<cx> awgn(std::size_t count, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw UsageError("noise level must be non-negative");
    std::mt19937_64 gen(seed);
    const double comp = sigma / std::numbers::sqrt2;
    std::vector<cx> out(count);
    for (auto& v : out) {
        // Box-Muller on the generator's top 53 bits; u1 shifted into (0, 1]
        // so the log stays finite.
        const double u1 = (static_cast<double>(gen() >> 11) + 1.0) * 0x1p-53;
        const double u2 = static_cast<double>(gen() >> 11) * 0x1p-53;
        const double r = comp * std::sqrt(-2.0 * std::log(u1));
        v = cx(r * std::cos(two_pi * u2), r * std::sin(two_pi * u2));
    }
    return out;
}

} // namespace cycstat
