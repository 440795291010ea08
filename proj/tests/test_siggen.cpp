#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "cycstat/errors.hpp"
#include "cycstat/siggen.hpp"

using namespace cycstat;

namespace {

void check_pulse_invariants(const PulseTable& t, int pulse_len, int sps) {
    const std::size_t len = static_cast<std::size_t>(pulse_len) * sps;
    REQUIRE(t.f.size() == len);
    REQUIRE(t.g.size() == len);
    double sum = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        CHECK(t.f[i] >= 0.0);
        CHECK(std::abs(t.f[i] - t.f[len - 1 - i]) <= 1e-9);
        sum += t.f[i];
        CHECK(t.g[i] == sum); // prefix-sum construction, same accumulation order
        if (i > 0) CHECK(t.g[i] >= t.g[i - 1]);
    }
    CHECK(sum == 0.5); // exact after renormalization
    CHECK(t.g.front() == t.f.front());
    CHECK(t.g.back() == 0.5);
}

} // namespace

TEST_CASE("pulse invariants hold over the parameter grid") {
    for (double bt : {0.1, 0.25, 0.5})
        for (int L = 1; L <= 6; ++L)
            for (int sps : {2, 4, 8}) {
                CAPTURE(bt);
                CAPTURE(L);
                CAPTURE(sps);
                check_pulse_invariants(gaussian_freq_pulse(bt, L, sps), L, sps);
                check_pulse_invariants(rect_freq_pulse(L, sps), L, sps);
            }
}

TEST_CASE("reference Gaussian pulse values (bt=0.25, L=4, sps=8)") {
    // Frozen from an independent evaluation of the tail-integral difference.
    const auto t = gaussian_freq_pulse(0.25, 4, 8);
    CHECK(t.f[0] == doctest::Approx(0.00020891176802551603).epsilon(1e-12));
    CHECK(t.f[5] == doctest::Approx(0.0038983666435154101).epsilon(1e-12));
    CHECK(t.f[15] == doctest::Approx(0.040726298977137601).epsilon(1e-12));
    CHECK(t.f[16] == doctest::Approx(0.040726298977137601).epsilon(1e-12));
    CHECK(t.g[15] == doctest::Approx(0.25).epsilon(1e-12)); // half the area by symmetry
    // Unimodal center dominates the edge.
    CHECK(t.f[16] > t.f[0]);
}

TEST_CASE("rectangular pulse is flat") {
    const auto t = rect_freq_pulse(2, 4);
    for (double v : t.f) CHECK(v == doctest::Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("pulse parameter guards") {
    CHECK_THROWS_AS(gaussian_freq_pulse(0.0, 4, 8), UsageError);
    CHECK_THROWS_AS(gaussian_freq_pulse(-0.25, 4, 8), UsageError);
    CHECK_THROWS_AS(gaussian_freq_pulse(0.25, 0, 8), UsageError);
    CHECK_THROWS_AS(gaussian_freq_pulse(0.25, 4, 0), UsageError);
    CHECK_THROWS_AS(rect_freq_pulse(0, 8), UsageError);
}

TEST_CASE("modulated envelope has constant modulus") {
    CpmParams p;
    const auto syms = random_symbols(2, 200, 5);
    const auto x = cpm_modulate(p, syms);
    REQUIRE(x.size() == 1600);
    for (const auto& s : x) CHECK(std::abs(std::abs(s) - 1.0) <= 1e-12);
}

TEST_CASE("steady-state phase increment is pi/2 per symbol at h=1/2") {
    CpmParams p; // h=0.5, L=4, sps=8
    const std::vector<int> syms(32, +1);
    const auto x = cpm_modulate(p, syms);
    for (int k = p.pulse_len; k + 1 < 32; ++k) {
        const cx ratio = x[static_cast<std::size_t>((k + 1) * p.sps)] *
                         std::conj(x[static_cast<std::size_t>(k * p.sps)]);
        CHECK(std::abs(std::arg(ratio) - std::numbers::pi / 2) <= 1e-9);
    }
}

TEST_CASE("opposite symbol streams produce conjugate envelopes") {
    CpmParams p;
    std::vector<int> up(40, +1), down(40, -1);
    const auto xu = cpm_modulate(p, up);
    const auto xd = cpm_modulate(p, down);
    for (std::size_t n = 0; n < xu.size(); ++n)
        CHECK(std::abs(xu[n] - std::conj(xd[n])) <= 1e-12);
}

TEST_CASE("modulator rejects bad input") {
    CpmParams p;
    CHECK_THROWS_AS(cpm_modulate(p, {}), UsageError);
    CHECK_THROWS_WITH_AS(cpm_modulate(p, {1, 3}), doctest::Contains("index 1"), DataError);
    CHECK_THROWS_AS(cpm_modulate(p, {2}), DataError); // even value is never in the alphabet
    auto bad = p;
    bad.h = 0.0;
    CHECK_THROWS_AS(cpm_modulate(bad, {1}), UsageError);
    bad = p;
    bad.alphabet_size = 3;
    CHECK_THROWS_AS(cpm_modulate(bad, {1}), UsageError);
}

TEST_CASE("quaternary symbols work") {
    CpmParams p;
    p.alphabet_size = 4;
    const auto x = cpm_modulate(p, {3, -3, 1, -1, 3});
    CHECK(x.size() == 40);
    for (const auto& s : x) CHECK(std::abs(std::abs(s) - 1.0) <= 1e-12);
}

TEST_CASE("random_symbols: determinism, support, uniformity") {
    CHECK(random_symbols(2, 0, 9).empty());
    CHECK(random_symbols(2, 4, 123) == random_symbols(2, 4, 123));
    CHECK(random_symbols(2, 64, 123) != random_symbols(2, 64, 124));
    for (int s : random_symbols(2, 100, 7)) CHECK((s == -1 || s == +1));

    const auto quad = random_symbols(4, 100000, 21);
    std::map<int, int> counts;
    for (int s : quad) {
        REQUIRE((s == -3 || s == -1 || s == 1 || s == 3));
        ++counts[s];
    }
    for (const auto& [sym, n] : counts)
        CHECK(std::abs(n / 100000.0 - 0.25) <= 0.01);

    CHECK_THROWS_AS(random_symbols(3, 4, 0), UsageError);
    CHECK_THROWS_AS(random_symbols(0, 4, 0), UsageError);
}

TEST_CASE("tone hits exact quarter- and half-cycle points") {
    const auto flat = tone(0.0, 0.0, 3);
    for (const auto& s : flat) CHECK(std::abs(s - cx(1, 0)) <= 1e-12);

    const auto quarter = tone(0.25, 0.0, 4);
    CHECK(std::abs(quarter[0] - cx(1, 0)) <= 1e-12);
    CHECK(std::abs(quarter[1] - cx(0, 1)) <= 1e-12);
    CHECK(std::abs(quarter[2] - cx(-1, 0)) <= 1e-12);
    CHECK(std::abs(quarter[3] - cx(0, -1)) <= 1e-12);

    CHECK(std::abs(tone(0.125, 0.0, 16)[4] - cx(-1, 0)) <= 1e-12);

    const auto shifted = tone(0.1, 0.7, 5);
    for (std::size_t n = 0; n < 5; ++n)
        CHECK(std::abs(shifted[n] -
                       std::polar(1.0, 2 * std::numbers::pi * 0.1 * n + 0.7)) <= 1e-12);
}

TEST_CASE("awgn: power, determinism, zero level") {
    for (const auto& s : awgn(100, 0.0, 3)) CHECK(s == cx(0, 0));
    CHECK(awgn(256, 1.0, 5) == awgn(256, 1.0, 5));
    CHECK(awgn(256, 1.0, 5) != awgn(256, 1.0, 6));

    const auto w = awgn(1000000, 1.0, 11);
    double p = 0.0;
    for (const auto& s : w) p += std::norm(s);
    p /= static_cast<double>(w.size());
    CHECK(std::abs(p - 1.0) <= 0.01);

    CHECK_THROWS_AS(awgn(4, -1.0, 0), UsageError);
}
