// cycstat: streaming cyclostationary signal-analysis CLI.
//
// Subcommands compose the library into file-based pipelines: generate test
// records (CPM/GMSK, tones, noise), impair them (CFO, additive noise),
// estimate cyclic (conjugate) cross-correlations in Set or Full mode, scan
// for conjugate-cycle features, and build Monte-Carlo reference tables.
//
// Exit codes: 0 success, 1 usage/config, 2 I/O or format, 3 numeric/data.
// All randomness flows from explicit --seed flags; identical flags and seeds
// reproduce byte-identical outputs.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cycstat/errors.hpp"
#include "cycstat/estimator.hpp"
#include "cycstat/impair.hpp"
#include "cycstat/io.hpp"
#include "cycstat/reference.hpp"
#include "cycstat/siggen.hpp"
#include "cycstat/types.hpp"

namespace {

using namespace cycstat;

PulseKind parse_pulse(const std::string& name) {
    return name == "rect" ? PulseKind::Rectangular : PulseKind::GaussianGmsk;
}

std::string describe_cpm(const CpmParams& p) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "cpm envelope: h=%g alphabet=%d pulse-len=%d bt=%g sps=%d pulse=%s",
                  p.h, p.alphabet_size, p.pulse_len, p.bt, p.sps,
                  p.pulse_kind == PulseKind::Rectangular ? "rect" : "gaussian");
    return buf;
}

void write_record(const std::string& out_path, const std::vector<cx>& samples,
                  double sample_rate, const std::string& description,
                  std::optional<std::uint64_t> seed) {
    write_cf32(out_path, samples);
    RecordingMeta meta;
    meta.sample_rate_hz = sample_rate;
    meta.description = description;
    meta.seed = seed;
    write_meta(out_path, meta);
}

void add_gen_cpm(CLI::App& app) {
    auto* sub = app.add_subcommand("gen-cpm", "Generate a CPM/GMSK record (+ sidecar)");
    auto h = std::make_shared<double>(0.5);
    auto alphabet = std::make_shared<int>(2);
    auto pulse_len = std::make_shared<int>(4);
    auto bt = std::make_shared<double>(0.25);
    auto sps = std::make_shared<int>(8);
    auto pulse = std::make_shared<std::string>("gaussian");
    auto rate = std::make_shared<double>(400000.0);
    auto symbols = std::make_shared<std::uint64_t>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<std::string>();
    sub->add_option("--h", *h, "Modulation index")->capture_default_str();
    sub->add_option("--alphabet", *alphabet, "Alphabet size M (even)")->capture_default_str();
    sub->add_option("--pulse-len", *pulse_len, "Frequency-pulse span L in symbols")->capture_default_str();
    sub->add_option("--bt", *bt, "Bandwidth-symbol-time product")->capture_default_str();
    sub->add_option("--sps", *sps, "Samples per symbol")->capture_default_str();
    sub->add_option("--pulse", *pulse, "Pulse shape")
        ->check(CLI::IsMember({"gaussian", "rect"}))->capture_default_str();
    sub->add_option("--sample-rate", *rate, "Sidecar sample rate in Hz")->capture_default_str();
    sub->add_option("--symbols", *symbols, "Number of symbols")->required();
    sub->add_option("--seed", *seed, "Symbol-draw seed")->required();
    sub->add_option("--out", *out, "Output .cf32 path")->required();
    sub->callback([=]() {
        CpmParams p;
        p.h = *h;
        p.alphabet_size = *alphabet;
        p.pulse_len = *pulse_len;
        p.bt = *bt;
        p.sps = *sps;
        p.pulse_kind = parse_pulse(*pulse);
        const auto syms = random_symbols(p.alphabet_size, *symbols, *seed);
        write_record(*out, cpm_modulate(p, syms), *rate, describe_cpm(p), *seed);
    });
}

void add_gen_tone(CLI::App& app) {
    auto* sub = app.add_subcommand("gen-tone", "Generate a complex exponential record");
    auto freq = std::make_shared<double>(0.0);
    auto phase = std::make_shared<double>(0.0);
    auto rate = std::make_shared<double>(400000.0);
    auto count = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<std::string>();
    sub->add_option("--freq", *freq, "Frequency in cycles/sample")->required();
    sub->add_option("--phase", *phase, "Initial phase in radians")->capture_default_str();
    sub->add_option("--sample-rate", *rate, "Sidecar sample rate in Hz")->capture_default_str();
    sub->add_option("--count", *count, "Sample count")->required();
    sub->add_option("--out", *out, "Output .cf32 path")->required();
    sub->callback([=]() {
        char desc[96];
        std::snprintf(desc, sizeof desc, "complex tone: f0=%.17g phi0=%.17g", *freq, *phase);
        write_record(*out, tone(*freq, *phase, *count), *rate, desc, std::nullopt);
    });
}

void add_gen_noise(CLI::App& app) {
    auto* sub = app.add_subcommand("gen-noise", "Generate white circular Gaussian noise");
    auto sigma = std::make_shared<double>(1.0);
    auto rate = std::make_shared<double>(400000.0);
    auto count = std::make_shared<std::uint64_t>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<std::string>();
    sub->add_option("--sigma", *sigma, "Total standard deviation")->required();
    sub->add_option("--sample-rate", *rate, "Sidecar sample rate in Hz")->capture_default_str();
    sub->add_option("--count", *count, "Sample count")->required();
    sub->add_option("--seed", *seed, "Noise seed")->required();
    sub->add_option("--out", *out, "Output .cf32 path")->required();
    sub->callback([=]() {
        char desc[96];
        std::snprintf(desc, sizeof desc, "white circular gaussian noise: sigma=%.17g", *sigma);
        write_record(*out, awgn(*count, *sigma, *seed), *rate, desc, *seed);
    });
}

void add_impair(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "impair", "Apply CFO and/or additive noise (CFO first when both given)");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto eps = std::make_shared<double>(0.0);
    auto phi0 = std::make_shared<double>(0.0);
    auto snr = std::make_shared<double>(0.0);
    auto seed = std::make_shared<std::uint64_t>(0);
    sub->add_option("--in", *in, "Input .cf32 path")->required();
    sub->add_option("--out", *out, "Output .cf32 path")->required();
    auto* cfo_opt = sub->add_option("--cfo", *eps, "Frequency offset in cycles/sample");
    auto* phi_opt = sub->add_option("--phi0", *phi0, "CFO initial phase in radians");
    auto* snr_opt = sub->add_option("--snr-db", *snr, "Signal-to-noise ratio in dB");
    auto* seed_opt = sub->add_option("--seed", *seed, "Noise seed");
    sub->callback([=]() {
        if (phi_opt->count() > 0 && cfo_opt->count() == 0)
            throw UsageError("--phi0 requires --cfo");
        if (snr_opt->count() > 0 && seed_opt->count() == 0)
            throw UsageError("--snr-db requires --seed");
        if (cfo_opt->count() == 0 && snr_opt->count() == 0)
            throw UsageError("nothing to do: give --cfo and/or --snr-db");
        auto x = read_cf32(*in);
        if (cfo_opt->count() > 0) x = apply_cfo(x, CfoSpec{*eps, *phi0});
        if (snr_opt->count() > 0) x = add_noise_snr(x, *snr, *seed);
        write_cf32(*out, x);
        try {
            write_meta(*out, read_meta(*in)); // carry the sidecar along if present
        } catch (const FormatError&) {
            throw;
        } catch (const IoError&) {
            // no sidecar on the input record: nothing to carry
        }
    });
}

void add_estimate(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "estimate", "Cyclic (conjugate) correlation estimate of one record");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("set");
    auto win_len = std::make_shared<int>(0);
    auto max_lag = std::make_shared<int>(0);
    auto alphas = std::make_shared<std::vector<double>>();
    auto lags = std::make_shared<std::vector<int>>();
    auto conj = std::make_shared<bool>(false);
    auto avg = std::make_shared<std::string>("magnitude");
    sub->add_option("--in", *in, "Input .cf32 path")->required();
    sub->add_option("--mode", *mode, "Cycle-frequency handling")
        ->check(CLI::IsMember({"set", "full"}))->capture_default_str();
    sub->add_option("--win-len", *win_len, "Window length N in samples")->required();
    auto* lag_opt = sub->add_option("--max-lag", *max_lag, "Symmetric lag bound (set mode)");
    auto* alpha_opt = sub->add_option("--alphas", *alphas,
                                      "Cycle frequencies in cycles/sample (set mode)")
                          ->delimiter(',');
    auto* lags_opt = sub->add_option("--lags", *lags, "Explicit lag list (full mode)")
                         ->delimiter(',');
    sub->add_flag("--conj", *conj, "Conjugate correlation (no conjugation of y)");
    sub->add_option("--avg", *avg, "Frame handling: average or raw frames")
        ->check(CLI::IsMember({"coherent", "magnitude", "none"}))->capture_default_str();
    sub->add_option("--out", *out, "Output CSV path")->required();
    sub->callback([=]() {
        EstimatorConfig cfg;
        cfg.conj = *conj;
        cfg.win_len = *win_len;
        if (*mode == "set") {
            if (lags_opt->count() > 0)
                throw UsageError("--lags conflicts with --mode set; use --max-lag and --alphas");
            if (alpha_opt->count() == 0) throw UsageError("--mode set requires --alphas");
            if (lag_opt->count() == 0) throw UsageError("--mode set requires --max-lag");
            cfg.mode = Mode::Set;
            cfg.alphas = *alphas;
            cfg.lag_spec = LagSpec::Symmetric(*max_lag);
        } else {
            if (alpha_opt->count() > 0)
                throw UsageError("--alphas conflicts with --mode full; use --lags");
            if (lag_opt->count() > 0)
                throw UsageError("--max-lag conflicts with --mode full; use --lags");
            if (lags_opt->count() == 0) throw UsageError("--mode full requires --lags");
            cfg.mode = Mode::Full;
            cfg.lag_spec = LagSpec::Explicit(*lags);
        }
        CyclicCorrelator est(cfg);
        const auto x = read_cf32(*in);
        const auto frames = est.push(x, x);
        if (frames.empty())
            throw UsageError("input record is too short for a single estimation window");
        if (*avg == "none") {
            export_frames_csv(*out, frames, cfg);
        } else {
            const auto m = *avg == "coherent" ? AverageMode::Coherent : AverageMode::Magnitude;
            export_average_csv(*out, average_frames(frames, m), cfg, m);
        }
    });
}

void add_scan(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "scan", "Magnitude-averaged full cycle-frequency sweep at fixed lags");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto win_len = std::make_shared<int>(0);
    auto lags = std::make_shared<std::vector<int>>();
    auto conj = std::make_shared<bool>(false);
    auto frames_wanted = std::make_shared<int>(0);
    sub->add_option("--in", *in, "Input .cf32 path")->required();
    sub->add_option("--win-len", *win_len, "Window length N in samples")->required();
    sub->add_option("--lags", *lags, "Explicit lag list")->delimiter(',')->required();
    sub->add_flag("--conj", *conj, "Conjugate correlation (no conjugation of y)");
    sub->add_option("--frames", *frames_wanted, "Number of windows to average")->required();
    sub->add_option("--out", *out, "Output CSV path")->required();
    sub->callback([=]() {
        if (*frames_wanted < 1) throw UsageError("--frames must be at least 1");
        EstimatorConfig cfg;
        cfg.mode = Mode::Full;
        cfg.conj = *conj;
        cfg.win_len = *win_len;
        cfg.lag_spec = LagSpec::Explicit(*lags);
        CyclicCorrelator est(cfg);
        const auto x = read_cf32(*in);
        auto frames = est.push(x, x);
        if (frames.size() < static_cast<std::size_t>(*frames_wanted))
            throw UsageError("input provides only " + std::to_string(frames.size()) +
                             " windows; --frames " + std::to_string(*frames_wanted) +
                             " requested");
        frames.resize(static_cast<std::size_t>(*frames_wanted));
        export_average_csv(*out, average_frames(frames, AverageMode::Magnitude), cfg,
                           AverageMode::Magnitude);
    });
}

void add_cfo_est(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "cfo-est", "Estimate CFO from the conjugate-cycle feature; prints eps_hat");
    auto in = std::make_shared<std::string>();
    auto beta = std::make_shared<double>(0.0);
    auto win_len = std::make_shared<int>(0);
    auto frames_wanted = std::make_shared<int>(0);
    sub->add_option("--in", *in, "Input .cf32 path")->required();
    sub->add_option("--expected-beta", *beta,
                    "Nominal conjugate cycle frequency in cycles/sample")->required();
    sub->add_option("--win-len", *win_len, "Window length N in samples")->required();
    sub->add_option("--frames", *frames_wanted, "Number of windows to average")->required();
    sub->callback([=]() {
        const auto x = read_cf32(*in);
        const double eps = estimate_cfo_ccf(x, *beta, *win_len, *frames_wanted);
        std::printf("%.17g\n", eps);
    });
}

void add_oracle_gmsk(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "oracle-gmsk", "Monte-Carlo cyclic-magnitude reference table to CSV");
    auto h = std::make_shared<double>(0.5);
    auto alphabet = std::make_shared<int>(2);
    auto pulse_len = std::make_shared<int>(4);
    auto bt = std::make_shared<double>(0.25);
    auto sps = std::make_shared<int>(8);
    auto pulse = std::make_shared<std::string>("gaussian");
    auto conj = std::make_shared<bool>(false);
    auto win_len = std::make_shared<int>(0);
    auto alphas = std::make_shared<std::vector<double>>();
    auto lags = std::make_shared<std::vector<int>>();
    auto trials = std::make_shared<int>(0);
    auto record_len = std::make_shared<std::uint64_t>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out = std::make_shared<std::string>();
    sub->add_option("--h", *h, "Modulation index")->capture_default_str();
    sub->add_option("--alphabet", *alphabet, "Alphabet size M (even)")->capture_default_str();
    sub->add_option("--pulse-len", *pulse_len, "Frequency-pulse span L in symbols")->capture_default_str();
    sub->add_option("--bt", *bt, "Bandwidth-symbol-time product")->capture_default_str();
    sub->add_option("--sps", *sps, "Samples per symbol")->capture_default_str();
    sub->add_option("--pulse", *pulse, "Pulse shape")
        ->check(CLI::IsMember({"gaussian", "rect"}))->capture_default_str();
    sub->add_flag("--conj", *conj, "Conjugate correlation (no conjugation of y)");
    sub->add_option("--win-len", *win_len, "Window length N in samples")->required();
    sub->add_option("--alphas", *alphas, "Cycle frequencies in cycles/sample")
        ->delimiter(',')->required();
    sub->add_option("--lags", *lags, "Lag list in samples")->delimiter(',')->required();
    sub->add_option("--trials", *trials, "Monte-Carlo trials")->required();
    sub->add_option("--record-len", *record_len, "Per-trial record length in samples")->required();
    sub->add_option("--seed", *seed, "Base seed (trial t uses seed + t)")->required();
    sub->add_option("--out", *out, "Output CSV path")->required();
    sub->callback([=]() {
        CpmParams p;
        p.h = *h;
        p.alphabet_size = *alphabet;
        p.pulse_len = *pulse_len;
        p.bt = *bt;
        p.sps = *sps;
        p.pulse_kind = parse_pulse(*pulse);
        const auto table =
            gmsk_mc_oracle(p, *alphas, *lags, *conj, *win_len, *trials, *record_len, *seed);
        export_oracle_csv(*out, table);
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming cyclostationary correlation toolkit"};
    app.require_subcommand(1);
    // Help is --help only: gen-cpm and oracle-gmsk expose the modulation
    // index as --h, which CLI11 would reject next to a -h short flag.
    app.set_help_flag("--help", "Print this help message and exit");
    add_gen_cpm(app);
    add_gen_tone(app);
    add_gen_noise(app);
    add_impair(app);
    add_estimate(app);
    add_scan(app);
    add_cfo_est(app);
    add_oracle_gmsk(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << app.help();
        return 1;
    } catch (const UsageError& e) { // covers ConfigError
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) { // covers NoFeatureError
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
