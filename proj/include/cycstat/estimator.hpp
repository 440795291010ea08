#ifndef CYCSTAT_ESTIMATOR_HPP
#define CYCSTAT_ESTIMATOR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cycstat/fft.hpp"
#include "cycstat/types.hpp"

namespace cycstat {

// ---------------------------------------------------------------------------
// Window kernels. Both are pure functions of their inputs; the OpenMP builds
// parallelize across independent output elements with fixed-order inner sums,
// so results do not depend on the thread count.
// ---------------------------------------------------------------------------

/// Precomputed state for Set-mode windows: one complex-exponential row
/// e^{-j 2 pi alpha n}, n in [0, win_len), per cycle frequency.
struct SetWindowPlan {
    std::vector<double> alphas;
    int max_lag = 0;
    int win_len = 0;
    bool conj = false;
    std::vector<cx> twiddles; ///< alphas.size() rows of win_len entries

    SetWindowPlan(std::vector<double> alphas_, int max_lag_, int win_len_, bool conj_);
};

/// One Set-mode window. xw has win_len + 2*max_lag samples, xw[i] holding
/// absolute sample k0 - max_lag + i; yw has win_len samples starting at k0.
/// lead[a] carries the absolute-phase anchor e^{-j 2 pi alpha_a k0}.
/// Output layout: SetLayout{alphas.size(), max_lag}.
std::vector<cx> set_window_values(const SetWindowPlan& plan, const cx* xw,
                                  const cx* yw, const std::vector<cx>& lead);

/// Precomputed state for Full-mode windows: the DFT plan plus lag geometry.
struct FullWindowPlan {
    std::vector<int> lags;
    int win_len = 0;
    bool conj = false;
    int m_plus = 0;
    int m_minus = 0;
    Fft fft;

    FullWindowPlan(std::vector<int> lags_, int win_len_, bool conj_);
};

/// One Full-mode window. xw has win_len + m_plus + m_minus samples, xw[i]
/// holding absolute sample k0 - m_minus + i; yw has win_len samples starting
/// at k0. bin_lead[k] carries e^{-j 2 pi (k/win_len) k0}.
/// Output layout: FullLayout{lags.size(), win_len}.
std::vector<cx> full_window_values(const FullWindowPlan& plan, const cx* xw,
                                   const cx* yw, const std::vector<cx>& bin_lead);

/// e^{-j 2 pi alpha k0} for each cycle frequency.
std::vector<cx> set_lead_phasors(const std::vector<double>& alphas, std::uint64_t k0);

/// e^{-j 2 pi (k/win_len) k0} for k in [0, win_len), via exact integer
/// reduction of k*k0 mod win_len.
std::vector<cx> full_bin_lead(int win_len, std::uint64_t k0);

/// Convenience one-shot Set-mode window anchored at absolute index k0.
/// Window-length mismatches are caller bugs and throw std::logic_error.
std::vector<cx> compute_set_window(const std::vector<cx>& xw, const std::vector<cx>& yw,
                                   const std::vector<double>& alphas, int max_lag,
                                   bool conj, std::uint64_t k0);

/// Convenience one-shot Full-mode window anchored at absolute index k0.
/// xw[0] must hold absolute sample k0 - m_minus for the lag list's m_minus.
std::vector<cx> compute_full_window(const std::vector<cx>& xw, const std::vector<cx>& yw,
                                    const std::vector<int>& lags, bool conj,
                                    std::uint64_t k0);

// ---------------------------------------------------------------------------
// Streaming engine.
// ---------------------------------------------------------------------------

/// Streaming cyclic (conjugate) cross-correlation estimator. Consumes two
/// synchronized complex streams in arbitrary chunks and emits one frame per
/// win_len consumed samples once enough history is buffered; the emitted
/// frame sequence is a pure function of the concatenated input, independent
/// of chunk boundaries.
///
/// Frame values are anchored to absolute sample index 0: the value at
/// (alpha, m) of the frame starting at k0 = start_abs is
///   (1/N) * sum_{n=0}^{N-1} x[k0+n+m] * y[k0+n]^(*) * e^{-j 2 pi alpha (k0+n)}
/// with the conjugation applied iff conj == false, so frames of a
/// cyclostationary input may be averaged coherently. The per-frame leading
/// phasor comes from a unit-magnitude accumulator advanced once per frame
/// (renormalized each step), not from a large-argument recomputation.
///
/// Single-owner: not safe for concurrent mutation; distinct instances are
/// fully independent.
class CyclicCorrelator {
public:
    /// @throws ConfigError carrying validate_config's violation list.
    explicit CyclicCorrelator(const EstimatorConfig& cfg);

    /// Append a chunk pair, emit every frame that becomes computable.
    /// @throws UsageError on mismatched chunk lengths;
    /// @throws DataError naming the absolute index of a non-finite sample
    ///         (the chunk is rejected whole; state is unchanged).
    std::vector<CyclicFrame> push(const std::vector<cx>& x_chunk,
                                  const std::vector<cx>& y_chunk);

    const EstimatorConfig& config() const { return cfg_; }
    FrameLayout layout() const { return layout_; }
    /// Samples that must be pending before a window can be emitted:
    /// win_len + m_plus + m_minus (the lag span margins on both sides).
    std::size_t buffer_need() const { return need_; }
    std::uint64_t consumed() const { return consumed_; }
    std::uint64_t frames_emitted() const { return frames_; }

private:
    EstimatorConfig cfg_;
    FrameLayout layout_;
    int m_plus_ = 0;
    int m_minus_ = 0;
    std::size_t need_ = 0;
    std::uint64_t head_abs_ = 0; ///< absolute index of buf*[0]
    std::uint64_t consumed_ = 0;
    std::uint64_t frames_ = 0;
    std::vector<cx> bufx_, bufy_;

    // Set mode
    std::optional<SetWindowPlan> set_plan_;
    std::vector<cx> lead_const_; ///< e^{-j 2 pi alpha m_minus}
    std::vector<cx> acc_;        ///< unit-magnitude per-alpha frame phasor
    std::vector<cx> step_;       ///< e^{-j 2 pi alpha win_len}

    // Full mode
    std::optional<FullWindowPlan> full_plan_;
    std::vector<cx> bin_lead_; ///< e^{-j 2 pi (k/N) m_minus}, constant: hop = N
};

// ---------------------------------------------------------------------------
// Frame averaging.
// ---------------------------------------------------------------------------

enum class AverageMode { Coherent, Magnitude };

/// Element-wise average across frames sharing one layout. Coherent: complex
/// mean. Magnitude: mean of |value|, returned in the real part.
/// @throws UsageError on an empty list or mixed layouts.
std::vector<cx> average_frames(const std::vector<CyclicFrame>& frames, AverageMode mode);

} // namespace cycstat

#endif
