#include "cycstat/estimator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cycstat/errors.hpp"

namespace cycstat {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

CyclicCorrelator::CyclicCorrelator(const EstimatorConfig& cfg) : cfg_(cfg) {
    auto violations = validate_config(cfg);
    if (!violations.empty()) throw ConfigError(std::move(violations));
    m_plus_ = cfg.lag_spec.m_plus();
    m_minus_ = cfg.lag_spec.m_minus();
    need_ = static_cast<std::size_t>(cfg.win_len) + m_plus_ + m_minus_;
    if (cfg.mode == Mode::Set) {
        set_plan_.emplace(cfg.alphas, cfg.lag_spec.max_lag, cfg.win_len, cfg.conj);
        layout_ = SetLayout{static_cast<int>(cfg.alphas.size()), cfg.lag_spec.max_lag};
        lead_const_ = set_lead_phasors(cfg.alphas, static_cast<std::uint64_t>(m_minus_));
        acc_.assign(cfg.alphas.size(), cx(1.0, 0.0));
        step_.resize(cfg.alphas.size());
        for (std::size_t a = 0; a < cfg.alphas.size(); ++a)
            step_[a] = std::polar(1.0, -two_pi * cfg.alphas[a] *
                                           static_cast<double>(cfg.win_len));
    } else {
        full_plan_.emplace(cfg.lag_spec.lags, cfg.win_len, cfg.conj);
        layout_ = FullLayout{static_cast<int>(cfg.lag_spec.lags.size()), cfg.win_len};
        // k0 = m_minus + frame * N, so e^{-j 2 pi (k/N) k0} reduces to the
        // frame-independent constant e^{-j 2 pi (k/N) m_minus}.
        bin_lead_ = full_bin_lead(cfg.win_len, static_cast<std::uint64_t>(m_minus_));
    }
}

std::vector<CyclicFrame> CyclicCorrelator::push(const std::vector<cx>& x_chunk,
                                                const std::vector<cx>& y_chunk) {
    if (x_chunk.size() != y_chunk.size())
        throw UsageError("x and y chunks must have equal length");
    // Reject the whole chunk before buffering anything so a data error
    // leaves the estimator reusable.
    for (std::size_t i = 0; i < x_chunk.size(); ++i) {
        if (!is_finite(x_chunk[i]))
            throw DataError("non-finite sample at absolute index " +
                            std::to_string(consumed_ + i) + " in x stream");
        if (!is_finite(y_chunk[i]))
            throw DataError("non-finite sample at absolute index " +
                            std::to_string(consumed_ + i) + " in y stream");
    }
    bufx_.insert(bufx_.end(), x_chunk.begin(), x_chunk.end());
    bufy_.insert(bufy_.end(), y_chunk.begin(), y_chunk.end());
    consumed_ += x_chunk.size();

    std::vector<CyclicFrame> out;
    const std::size_t n = static_cast<std::size_t>(cfg_.win_len);
    while (bufx_.size() >= need_) {
        CyclicFrame frame;
        frame.frame_index = frames_;
        frame.start_abs = head_abs_ + static_cast<std::uint64_t>(m_minus_);
        frame.layout = layout_;
        const cx* yw = bufy_.data() + m_minus_;
        if (set_plan_) {
            std::vector<cx> lead(acc_.size());
            for (std::size_t a = 0; a < acc_.size(); ++a)
                lead[a] = lead_const_[a] * acc_[a];
            frame.values = set_window_values(*set_plan_, bufx_.data(), yw, lead);
            for (std::size_t a = 0; a < acc_.size(); ++a) {
                acc_[a] *= step_[a];
                acc_[a] /= std::abs(acc_[a]);
            }
        } else {
            frame.values = full_window_values(*full_plan_, bufx_.data(), yw, bin_lead_);
        }
        out.push_back(std::move(frame));
        bufx_.erase(bufx_.begin(), bufx_.begin() + static_cast<std::ptrdiff_t>(n));
        bufy_.erase(bufy_.begin(), bufy_.begin() + static_cast<std::ptrdiff_t>(n));
        head_abs_ += n;
        ++frames_;
    }
    return out;
}

std::vector<cx> average_frames(const std::vector<CyclicFrame>& frames, AverageMode mode) {
    if (frames.empty()) throw UsageError("cannot average an empty frame list");
    for (const auto& f : frames)
        if (!(f.layout == frames.front().layout))
            throw UsageError("cannot average frames with mixed layouts");
    const std::size_t len = frames.front().values.size();
    std::vector<cx> out(len, cx(0.0, 0.0));
    for (const auto& f : frames) {
        if (f.values.size() != len)
            throw UsageError("cannot average frames with mixed layouts");
        if (mode == AverageMode::Coherent) {
            for (std::size_t i = 0; i < len; ++i) out[i] += f.values[i];
        } else {
            for (std::size_t i = 0; i < len; ++i) out[i] += std::abs(f.values[i]);
        }
    }
    const double inv = 1.0 / static_cast<double>(frames.size());
    for (auto& v : out) v *= inv;
    return out;
}

} // namespace cycstat
