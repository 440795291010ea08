#include "cycstat/fft.hpp"

#include <cmath>
#include <numbers>

#include "cycstat/errors.hpp"

namespace cycstat {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::uint32_t bit_reverse(std::uint32_t v, int bits) {
    std::uint32_t r = 0;
    for (int i = 0; i < bits; ++i) {
        r = (r << 1) | (v & 1u);
        v >>= 1;
    }
    return r;
}

} // namespace

Fft::Fft(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
    if (n == 0) throw UsageError("transform size must be positive");
    const double w0 = -2.0 * std::numbers::pi / static_cast<double>(n);
    if (pow2_) {
        tw_.resize(n / 2);
        for (std::size_t t = 0; t < n / 2; ++t)
            tw_[t] = std::polar(1.0, w0 * static_cast<double>(t));
        int bits = 0;
        while ((std::size_t{1} << bits) < n) ++bits;
        rev_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            rev_[i] = bit_reverse(static_cast<std::uint32_t>(i), bits);
    } else {
        tw_.resize(n);
        for (std::size_t t = 0; t < n; ++t)
            tw_[t] = std::polar(1.0, w0 * static_cast<double>(t));
    }
}

void Fft::forward(const cx* in, cx* out) const {
    if (n_ == 1) {
        out[0] = in[0];
        return;
    }
    if (pow2_) {
        if (in == out) {
            // Permute in place: each swap touches i < rev_[i] exactly once.
            for (std::size_t i = 0; i < n_; ++i)
                if (i < rev_[i]) std::swap(out[i], out[rev_[i]]);
        } else {
            for (std::size_t i = 0; i < n_; ++i) out[i] = in[rev_[i]];
        }
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            const std::size_t half = len / 2;
            const std::size_t step = n_ / len;
            for (std::size_t base = 0; base < n_; base += len) {
                for (std::size_t j = 0; j < half; ++j) {
                    const cx w = tw_[j * step];
                    const cx u = out[base + j];
                    const cx v = out[base + j + half] * w;
                    out[base + j] = u + v;
                    out[base + j + half] = u - v;
                }
            }
        }
        return;
    }
    // Direct sum; running twiddle index avoids k*t overflow concerns.
    std::vector<cx> src(in, in + n_); // tolerate aliasing
    for (std::size_t k = 0; k < n_; ++k) {
        double re = 0.0, im = 0.0;
        std::size_t idx = 0;
        for (std::size_t t = 0; t < n_; ++t) {
            const cx w = tw_[idx];
            const cx s = src[t];
            re += s.real() * w.real() - s.imag() * w.imag();
            im += s.real() * w.imag() + s.imag() * w.real();
            idx += k;
            if (idx >= n_) idx -= n_;
        }
        out[k] = cx(re, im);
    }
}

std::vector<cx> Fft::forward(const std::vector<cx>& in) const {
    if (in.size() != n_)
        throw UsageError("transform input length does not match plan size");
    std::vector<cx> out(n_);
    forward(in.data(), out.data());
    return out;
}

std::vector<cx> dft(const std::vector<cx>& v) {
    if (v.empty()) throw UsageError("cannot transform an empty vector");
    return Fft(v.size()).forward(v);
}

} // namespace cycstat
