#ifndef CYCSTAT_TYPES_HPP
#define CYCSTAT_TYPES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace cycstat {

/// Complex baseband sample. Double precision everywhere in memory;
/// the on-disk interchange format is float32 (see io.hpp).
using cx = std::complex<double>;

inline bool is_finite(cx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// Estimator operating mode.
///  Set:  fixed list of normalized cycle frequencies, swept over lags -M..M.
///  Full: fixed list of lags, DFT sweep over all win_len cycle-frequency bins.
enum class Mode { Set, Full };

/// Lag selection. Symmetric(M) expands to -M..+M; Explicit holds a strictly
/// increasing list of integer lags (may be any mix of signs).
struct LagSpec {
    bool symmetric = true;
    int max_lag = 0;
    std::vector<int> lags;

    static LagSpec Symmetric(int m) {
        LagSpec s;
        s.symmetric = true;
        s.max_lag = m;
        return s;
    }
    static LagSpec Explicit(std::vector<int> l) {
        LagSpec s;
        s.symmetric = false;
        s.lags = std::move(l);
        return s;
    }

    /// Largest positive lag (0 if none).
    int m_plus() const;
    /// Magnitude of the most negative lag (0 if none).
    int m_minus() const;
    /// Expanded lag list in ascending order.
    std::vector<int> values() const;
};

struct EstimatorConfig {
    Mode mode = Mode::Set;
    /// false: second factor conjugated (cyclic ACF / cross-correlation).
    /// true:  no conjugation (cyclic CCF, conjugate cycle frequencies).
    bool conj = false;
    int win_len = 0; ///< window length N
    std::vector<double> alphas; ///< Set mode: normalized cycle frequencies, cycles/sample
    LagSpec lag_spec;
};

/// Returns every violated invariant as a readable string; empty means ok.
std::vector<std::string> validate_config(const EstimatorConfig& cfg);

/// Output vector layout, Set mode: alpha-major, lags ascending -M..M.
struct SetLayout {
    int num_alphas = 0;
    int max_lag = 0;
    bool operator==(const SetLayout&) const = default;
};

/// Output vector layout, Full mode: lag-major, DFT bins in natural order 0..N-1.
struct FullLayout {
    int num_lags = 0;
    int win_len = 0;
    bool operator==(const FullLayout&) const = default;
};

using FrameLayout = std::variant<SetLayout, FullLayout>;

bool operator==(const FrameLayout& a, const FrameLayout& b);
std::size_t layout_len(const FrameLayout& layout);

/// Flat position of (cycle-frequency index, lag in [-M, M]).
std::size_t flat_index(const SetLayout& layout, int alpha_idx, int lag);
/// Flat position of (lag index, DFT bin in [0, N)).
std::size_t flat_index(const FullLayout& layout, int lag_idx, int bin);

/// Presentation mapping from a natural-order DFT bin to the normalized
/// cycle frequency it estimates; result in [-1/2, 1/2).
double full_bin_to_alpha(int k, int n);

/// One estimator output window.
struct CyclicFrame {
    std::uint64_t frame_index = 0;
    /// Absolute input index of the window's n = 0 sample
    /// (= m_minus + frame_index * win_len; hop is one full window).
    std::uint64_t start_abs = 0;
    FrameLayout layout;
    std::vector<cx> values;
};

} // namespace cycstat

#endif
