#include "cycstat/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "cycstat/errors.hpp"

namespace cycstat {

namespace {

using nlohmann::json;

void put_f32_le(std::string& out, float v) {
    std::uint32_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    out.push_back(static_cast<char>(bits & 0xFFu));
    out.push_back(static_cast<char>((bits >> 8) & 0xFFu));
    out.push_back(static_cast<char>((bits >> 16) & 0xFFu));
    out.push_back(static_cast<char>((bits >> 24) & 0xFFu));
}

float get_f32_le(const unsigned char* p) {
    const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                               (static_cast<std::uint32_t>(p[1]) << 8) |
                               (static_cast<std::uint32_t>(p[2]) << 16) |
                               (static_cast<std::uint32_t>(p[3]) << 24);
    float v = 0.0f;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Cycle frequency and lag of flat element `idx` under the config's layout.
std::pair<double, int> element_coords(const EstimatorConfig& cfg, std::size_t idx) {
    if (cfg.mode == Mode::Set) {
        const std::size_t row = 2u * static_cast<std::size_t>(cfg.lag_spec.max_lag) + 1u;
        return {cfg.alphas[idx / row],
                static_cast<int>(idx % row) - cfg.lag_spec.max_lag};
    }
    const std::size_t n = static_cast<std::size_t>(cfg.win_len);
    return {full_bin_to_alpha(static_cast<int>(idx % n), cfg.win_len),
            cfg.lag_spec.lags[idx / n]};
}

std::size_t config_layout_len(const EstimatorConfig& cfg) {
    if (cfg.mode == Mode::Set)
        return cfg.alphas.size() * (2u * static_cast<std::size_t>(cfg.lag_spec.max_lag) + 1u);
    return cfg.lag_spec.lags.size() * static_cast<std::size_t>(cfg.win_len);
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write to " + path + " failed");
}

} // namespace

std::size_t write_cf32(const std::string& path, const std::vector<cx>& samples) {
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (!is_finite(samples[i]))
            throw DataError("non-finite sample at index " + std::to_string(i));
    std::string bytes;
    bytes.reserve(samples.size() * 8);
    for (const cx& s : samples) {
        put_f32_le(bytes, static_cast<float>(s.real()));
        put_f32_le(bytes, static_cast<float>(s.imag()));
    }
    auto out = open_out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    finish_out(out, path);
    return bytes.size();
}

std::vector<cx> read_cf32(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for reading");
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read from " + path + " failed");
    if (bytes.size() % 8 != 0)
        throw FormatError(path + " is truncated: length is not a multiple of 8 bytes");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    std::vector<cx> samples(bytes.size() / 8);
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = cx(get_f32_le(p + 8 * i), get_f32_le(p + 8 * i + 4));
    return samples;
}

void write_meta(const std::string& path, const RecordingMeta& meta) {
    if (!(meta.sample_rate_hz > 0.0))
        throw UsageError("sample_rate_hz must be positive");
    json j;
    j["sample_rate_hz"] = meta.sample_rate_hz;
    if (!meta.description.empty()) j["description"] = meta.description;
    if (meta.seed) j["seed"] = *meta.seed;
    if (meta.center_freq_hz) j["center_freq_hz"] = *meta.center_freq_hz;
    for (const auto& [key, raw] : meta.extra) {
        json v = json::parse(raw, nullptr, false);
        if (v.is_discarded())
            throw FormatError("extra key " + key + " holds invalid JSON");
        j[key] = std::move(v);
    }
    const std::string meta_path = path + ".meta.json";
    auto out = open_out(meta_path, std::ios::out);
    out << j.dump(2) << '\n';
    finish_out(out, meta_path);
}

RecordingMeta read_meta(const std::string& path) {
    const std::string meta_path = path + ".meta.json";
    std::ifstream in(meta_path);
    if (!in) throw IoError("cannot open " + meta_path + " for reading");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw FormatError(meta_path + " is not valid JSON");
    if (!j.is_object()) throw FormatError(meta_path + " must hold a JSON object");

    RecordingMeta meta;
    if (!j.contains("sample_rate_hz"))
        throw FormatError("missing required key sample_rate_hz");
    if (!j["sample_rate_hz"].is_number())
        throw FormatError("key sample_rate_hz must be a number");
    meta.sample_rate_hz = j["sample_rate_hz"].get<double>();
    if (!(meta.sample_rate_hz > 0.0))
        throw FormatError("key sample_rate_hz must be positive");

    for (const auto& [key, value] : j.items()) {
        if (key == "sample_rate_hz") continue;
        if (key == "description") {
            if (!value.is_string()) throw FormatError("key description must be a string");
            meta.description = value.get<std::string>();
        } else if (key == "seed") {
            if (!value.is_number_unsigned())
                throw FormatError("key seed must be a non-negative integer");
            meta.seed = value.get<std::uint64_t>();
        } else if (key == "center_freq_hz") {
            if (!value.is_number()) throw FormatError("key center_freq_hz must be a number");
            meta.center_freq_hz = value.get<double>();
        } else {
            meta.extra[key] = value.dump();
        }
    }
    return meta;
}

std::size_t export_frames_csv(const std::string& path,
                              const std::vector<CyclicFrame>& frames,
                              const EstimatorConfig& cfg) {
    if (frames.empty()) throw UsageError("no frames to export");
    const std::size_t len = config_layout_len(cfg);
    for (const auto& f : frames) {
        if (!(f.layout == frames.front().layout))
            throw UsageError("cannot export frames with mixed layouts");
        if (f.values.size() != len)
            throw UsageError("config does not match the frame layout");
    }
    auto out = open_out(path, std::ios::out);
    out << "frame_index,alpha,lag,re,im,mag\n";
    std::size_t rows = 0;
    for (const auto& f : frames) {
        for (std::size_t i = 0; i < len; ++i) {
            const auto [alpha, lag] = element_coords(cfg, i);
            const cx v = f.values[i];
            out << f.frame_index << ',' << fmt(alpha) << ',' << lag << ','
                << fmt(v.real()) << ',' << fmt(v.imag()) << ',' << fmt(std::abs(v))
                << '\n';
            ++rows;
        }
    }
    finish_out(out, path);
    return rows;
}

std::size_t export_average_csv(const std::string& path, const std::vector<cx>& avg,
                               const EstimatorConfig& cfg, AverageMode mode) {
    if (avg.empty()) throw UsageError("no averaged values to export");
    if (avg.size() != config_layout_len(cfg))
        throw UsageError("config does not match the averaged vector length");
    auto out = open_out(path, std::ios::out);
    out << (mode == AverageMode::Coherent ? "alpha,lag,mean_re,mean_im,mean_mag\n"
                                          : "alpha,lag,mean_mag\n");
    for (std::size_t i = 0; i < avg.size(); ++i) {
        const auto [alpha, lag] = element_coords(cfg, i);
        out << fmt(alpha) << ',' << lag << ',';
        if (mode == AverageMode::Coherent)
            out << fmt(avg[i].real()) << ',' << fmt(avg[i].imag()) << ','
                << fmt(std::abs(avg[i])) << '\n';
        else
            out << fmt(avg[i].real()) << '\n';
    }
    finish_out(out, path);
    return avg.size();
}

std::size_t export_oracle_csv(const std::string& path, const OracleTable& table) {
    if (table.mean_magnitude.size() != table.alphas.size() * table.lags.size())
        throw UsageError("oracle table dimensions are inconsistent");
    if (table.mean_magnitude.empty()) throw UsageError("no oracle cells to export");
    auto out = open_out(path, std::ios::out);
    out << "alpha,lag,mean_mag,trials\n";
    for (std::size_t a = 0; a < table.alphas.size(); ++a)
        for (std::size_t l = 0; l < table.lags.size(); ++l)
            out << fmt(table.alphas[a]) << ',' << table.lags[l] << ','
                << fmt(table.cell(a, l)) << ',' << table.trials << '\n';
    finish_out(out, path);
    return table.mean_magnitude.size();
}

} // namespace cycstat
