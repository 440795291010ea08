#ifndef CYCSTAT_FFT_HPP
#define CYCSTAT_FFT_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cycstat/types.hpp"

namespace cycstat {

/// Forward DFT, V[k] = sum_n v[n] e^{-j 2 pi k n / N}. No normalization.
/// Plans are cheap to build and reusable; power-of-two sizes run the
/// radix-2 path, everything else falls back to a table-driven direct sum.
class Fft {
public:
    /// @throws UsageError when n == 0.
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    /// out[0..n) <- DFT of in[0..n). in and out may alias.
    void forward(const cx* in, cx* out) const;

    /// @throws UsageError when in.size() != size().
    std::vector<cx> forward(const std::vector<cx>& in) const;

private:
    std::size_t n_ = 0;
    bool pow2_ = false;
    std::vector<cx> tw_;            ///< e^{-j 2 pi t / n}; n/2 entries radix-2, n direct
    std::vector<std::uint32_t> rev_; ///< bit-reversal permutation (radix-2 only)
};

/// One-shot convenience wrapper around Fft.
/// @throws UsageError when v is empty.
std::vector<cx> dft(const std::vector<cx>& v);

} // namespace cycstat

#endif
