#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "cycstat/errors.hpp"
#include "cycstat/io.hpp"
#include "cycstat/reference.hpp"
#include "cycstat/siggen.hpp"

using namespace cycstat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("cycstat_io_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

std::vector<std::uint8_t> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string slurp_text(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("cf32 write: exact little-endian bytes") {
    TempDir tmp;
    const auto path = tmp / "one.cf32";
    CHECK(write_cf32(path, {cx(1.0, -0.5)}) == 8);
    const auto bytes = slurp(path);
    const std::vector<std::uint8_t> want = {0x00, 0x00, 0x80, 0x3F,
                                            0x00, 0x00, 0x00, 0xBF};
    CHECK(bytes == want);
}

TEST_CASE("cf32 roundtrip is bit-exact for float32-representable values") {
    TempDir tmp;
    const auto path = tmp / "rt.cf32";
    // Values with 12-bit mantissas (and a few power-of-two extremes) are
    // exactly representable in binary32 by construction, so the roundtrip
    // must reproduce them bit for bit.
    std::mt19937_64 gen(404);
    auto grid = [&]() {
        return (static_cast<double>(gen() % 4096) - 2048.0) * 0x1p-12;
    };
    std::vector<cx> samples(4096);
    for (auto& s : samples) s = cx(grid(), grid());
    samples[0] = cx(0.0, -0.0);
    samples[1] = cx(1.0, -1.0);
    samples[2] = cx(0x1p100, -0x1p-100);
    samples[3] = cx(0x1p-120, 3.5);

    CHECK(write_cf32(path, samples) == samples.size() * 8);
    const auto back = read_cf32(path);
    REQUIRE(back.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) CHECK(back[i] == samples[i]);
}

TEST_CASE("cf32 edge cases and errors") {
    TempDir tmp;

    const auto empty = tmp / "empty.cf32";
    CHECK(write_cf32(empty, {}) == 0);
    CHECK(read_cf32(empty).empty());

    CHECK_THROWS_AS(read_cf32(tmp / "missing.cf32"), IoError);
    CHECK_THROWS_AS(write_cf32((tmp / "no_dir") + "/x.cf32", {cx(0, 0)}), IoError);

    const auto trunc = tmp / "trunc.cf32";
    write_cf32(trunc, {cx(1, 2), cx(3, 4)});
    fs::resize_file(trunc, 13);
    CHECK_THROWS_WITH_AS(read_cf32(trunc), doctest::Contains("multiple of 8"),
                         FormatError);

    const auto bad = tmp / "bad.cf32";
    std::vector<cx> poisoned(4, cx(0, 0));
    poisoned[2] = cx(std::numeric_limits<double>::infinity(), 0);
    CHECK_THROWS_WITH_AS(write_cf32(bad, poisoned), doctest::Contains("index 2"),
                         DataError);
}

TEST_CASE("sidecar metadata roundtrip, optional and unknown keys") {
    TempDir tmp;
    const auto rec = tmp / "capture.cf32";

    RecordingMeta m;
    m.sample_rate_hz = 400000.0;
    m.description = "bench capture";
    m.seed = 123456789;
    m.center_freq_hz = 2.4e9;
    m.extra["hardware"] = "\"USRP\"";
    m.extra["gains"] = "[10, 20]";
    write_meta(rec, m);
    CHECK(fs::exists(rec + ".meta.json"));

    const auto back = read_meta(rec);
    CHECK(back.sample_rate_hz == 400000.0);
    CHECK(back.sample_period_s() == doctest::Approx(2.5e-6).epsilon(1e-15));
    CHECK(back.description == "bench capture");
    REQUIRE(back.seed.has_value());
    CHECK(*back.seed == 123456789);
    REQUIRE(back.center_freq_hz.has_value());
    CHECK(*back.center_freq_hz == 2.4e9);
    REQUIRE(back.extra.count("hardware") == 1);
    CHECK(back.extra.at("hardware") == "\"USRP\"");
    REQUIRE(back.extra.count("gains") == 1);
    CHECK(back.extra.at("gains") == "[10,20]");

    // Minimal sidecar: only the required key.
    RecordingMeta minimal;
    minimal.sample_rate_hz = 1e6;
    const auto rec2 = tmp / "minimal.cf32";
    write_meta(rec2, minimal);
    const auto back2 = read_meta(rec2);
    CHECK(back2.sample_rate_hz == 1e6);
    CHECK(back2.description.empty());
    CHECK_FALSE(back2.seed.has_value());
    CHECK_FALSE(back2.center_freq_hz.has_value());
    CHECK(back2.extra.empty());
}

TEST_CASE("sidecar metadata errors") {
    TempDir tmp;

    RecordingMeta bad_rate;
    bad_rate.sample_rate_hz = 0.0;
    CHECK_THROWS_AS(write_meta(tmp / "a.cf32", bad_rate), UsageError);

    RecordingMeta bad_extra;
    bad_extra.sample_rate_hz = 1e6;
    bad_extra.extra["broken"] = "{not json";
    CHECK_THROWS_WITH_AS(write_meta(tmp / "b.cf32", bad_extra),
                         doctest::Contains("broken"), FormatError);

    CHECK_THROWS_AS(read_meta(tmp / "absent.cf32"), IoError);

    const auto garbled = tmp / "garbled.cf32";
    std::ofstream(garbled + ".meta.json") << "not json at all";
    CHECK_THROWS_AS(read_meta(garbled), FormatError);

    const auto no_rate = tmp / "no_rate.cf32";
    std::ofstream(no_rate + ".meta.json") << "{\"description\": \"x\"}";
    CHECK_THROWS_WITH_AS(read_meta(no_rate), doctest::Contains("sample_rate_hz"),
                         FormatError);

    const auto wrong_type = tmp / "wrong_type.cf32";
    std::ofstream(wrong_type + ".meta.json")
        << "{\"sample_rate_hz\": 1000.0, \"seed\": -4}";
    CHECK_THROWS_WITH_AS(read_meta(wrong_type), doctest::Contains("seed"), FormatError);
}

TEST_CASE("frames CSV: schema, row count, 17-digit values") {
    TempDir tmp;
    EstimatorConfig cfg;
    cfg.mode = Mode::Set;
    cfg.win_len = 16;
    cfg.alphas = {0.125};
    cfg.lag_spec = LagSpec::Symmetric(1);

    CyclicFrame fr;
    fr.frame_index = 0;
    fr.start_abs = 1;
    fr.layout = SetLayout{1, 1};
    fr.values = {cx(0.0, 0.0), cx(std::sqrt(0.5), 0.0), cx(0.0, -1.0)};

    const auto path = tmp / "frames.csv";
    CHECK(export_frames_csv(path, {fr}, cfg) == 3);
    const auto text = slurp_text(path);
    CHECK(count_lines(text) == 4);
    CHECK(text.find("frame_index,alpha,lag,re,im,mag") == 0);
    // 17 significant digits: sqrt(1/2) printed in full.
    CHECK(text.find("0.70710678118654757") != std::string::npos);
    CHECK(text.find("0,0.125,0,0.70710678118654757") != std::string::npos);

    CHECK_THROWS_AS(export_frames_csv(tmp / "x.csv", {}, cfg), UsageError);
}

TEST_CASE("average CSV: magnitude and coherent schemas") {
    TempDir tmp;
    EstimatorConfig cfg;
    cfg.mode = Mode::Set;
    cfg.win_len = 64;
    cfg.alphas = {0.0, 0.125};
    cfg.lag_spec = LagSpec::Symmetric(2);

    const std::vector<cx> mag(10, cx(0.25, 0.0));
    const auto magp = tmp / "mag.csv";
    CHECK(export_average_csv(magp, mag, cfg, AverageMode::Magnitude) == 10);
    const auto mtext = slurp_text(magp);
    CHECK(mtext.find("alpha,lag,mean_mag") == 0);
    CHECK(count_lines(mtext) == 11);
    // First data row is alpha #0, lag -2.
    CHECK(mtext.find("\n0,-2,0.25") != std::string::npos);

    // 0.375^2 + 0.5^2 = 0.390625 and its square root 0.625 are all exact in
    // binary64, so every printed field is short and predictable.
    const std::vector<cx> coh(10, cx(0.375, -0.5));
    const auto cohp = tmp / "coh.csv";
    CHECK(export_average_csv(cohp, coh, cfg, AverageMode::Coherent) == 10);
    const auto ctext = slurp_text(cohp);
    CHECK(ctext.find("alpha,lag,mean_re,mean_im,mean_mag") == 0);
    CHECK(ctext.find("0.125,2,0.375,-0.5,0.625") != std::string::npos);

    const std::vector<cx> wrong(9, cx(0, 0));
    CHECK_THROWS_AS(export_average_csv(tmp / "w.csv", wrong, cfg, AverageMode::Magnitude),
                    UsageError);
}

TEST_CASE("Full-mode CSV rows map bins to cycle frequencies") {
    TempDir tmp;
    EstimatorConfig cfg;
    cfg.mode = Mode::Full;
    cfg.win_len = 8;
    cfg.lag_spec = LagSpec::Explicit({0, 2});

    CyclicFrame fr;
    fr.layout = FullLayout{2, 8};
    fr.values.assign(16, cx(1.0, 0.0));
    const auto path = tmp / "full.csv";
    CHECK(export_frames_csv(path, {fr}, cfg) == 16);
    const auto text = slurp_text(path);
    // Bin 5 of 8 presents as alpha = 5/8 - 1 = -0.375; lag column from the list.
    CHECK(text.find("0,-0.375,0,1") != std::string::npos);
    CHECK(text.find("0,-0.375,2,1") != std::string::npos);
    CHECK(text.find("0,0.25,2,1") != std::string::npos);
}

TEST_CASE("oracle CSV carries the trial count on every row") {
    TempDir tmp;
    OracleTable t;
    t.alphas = {0.125, 0.11};
    t.lags = {-1, 0, 1};
    t.mean_magnitude = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
    t.trials = 32;
    const auto path = tmp / "oracle.csv";
    CHECK(export_oracle_csv(path, t) == 6);
    const auto text = slurp_text(path);
    CHECK(text.find("alpha,lag,mean_mag,trials") == 0);
    CHECK(count_lines(text) == 7);
    CHECK(text.find("0.125,-1,0.5,32") != std::string::npos);
    CHECK(text.find("0.11,1,0.015625,32") != std::string::npos);
}

TEST_CASE("random layouts roundtrip sane row counts through frames CSV") {
    TempDir tmp;
    std::mt19937_64 gen(808);
    for (int trial = 0; trial < 5; ++trial) {
        EstimatorConfig cfg;
        const bool full = gen() % 2 == 0;
        cfg.win_len = 16 << (gen() % 3);
        std::size_t elems;
        if (full) {
            cfg.mode = Mode::Full;
            std::vector<int> lags;
            const int nl = 1 + static_cast<int>(gen() % 4);
            for (int l = 0; l < nl; ++l) lags.push_back(l * 2 - 3);
            cfg.lag_spec = LagSpec::Explicit(lags);
            elems = static_cast<std::size_t>(nl) * cfg.win_len;
        } else {
            cfg.mode = Mode::Set;
            const int na = 1 + static_cast<int>(gen() % 3);
            for (int a = 0; a < na; ++a) cfg.alphas.push_back(0.01 * (a + 1));
            const int ml = static_cast<int>(gen() % 4);
            cfg.lag_spec = LagSpec::Symmetric(ml);
            elems = static_cast<std::size_t>(na) * (2 * ml + 1);
        }

        std::vector<CyclicFrame> frames(1 + gen() % 3);
        for (std::size_t f = 0; f < frames.size(); ++f) {
            frames[f].frame_index = f;
            frames[f].layout = full
                ? FrameLayout(FullLayout{static_cast<int>(elems / cfg.win_len),
                                         cfg.win_len})
                : FrameLayout(SetLayout{static_cast<int>(cfg.alphas.size()),
                                        cfg.lag_spec.max_lag});
            frames[f].values.assign(elems, cx(0.5, 0.5));
        }
        const auto path = tmp / ("roundtrip_" + std::to_string(trial) + ".csv");
        const auto rows = export_frames_csv(path, frames, cfg);
        CHECK(rows == frames.size() * elems);
        CHECK(count_lines(slurp_text(path)) == rows + 1);
    }
}
