#include <doctest.h>

#include <array>
#include <cstdint>
#include <vector>

#include "helpers.hpp"
#include "qtrng/sampler.hpp"

using namespace qtrng;

TEST_CASE("philox4x64-10 known-answer vectors") {
    // Cross-checked against an independent philox4x64 implementation.
    const std::array<std::uint64_t, 4> a =
        philox4x64({1, 0, 0, 0}, {0, 0});
    CHECK(a == std::array<std::uint64_t, 4>{0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL,
                                            0x1c8667a55d902e79ULL, 0x907d7a052fd5b4dcULL});

    const std::array<std::uint64_t, 4> b =
        philox4x64({2, 0, 0, 0}, {0, 0});
    CHECK(b == std::array<std::uint64_t, 4>{0x809bf322883987c3ULL, 0x471128b9e807f7ddULL,
                                            0xf250ba0dbec065b7ULL, 0xfc6ed66767a457bcULL});

    const std::array<std::uint64_t, 4> c =
        philox4x64({1, 0, 0, 0}, {0xdeadbeefULL, 0xcafef00dULL});
    CHECK(c == std::array<std::uint64_t, 4>{0x2efbea9056208111ULL, 0x32bb8ca912a6bd47ULL,
                                            0x78cd0b669d6a23fbULL, 0x4a9a089e67c68c3aULL});

    const std::array<std::uint64_t, 4> d = philox4x64(
        {0xa4093822299f31d1ULL, 0x082efa98ec4e6c89ULL, 0x452821e638d01377ULL,
         0xbe5466cf34e90c6cULL},
        {0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL});
    CHECK(d == std::array<std::uint64_t, 4>{0x0a473ca49faada34ULL, 0x8e53fac743d060b6ULL,
                                            0xd2a707d646ca3d3bULL, 0x19b894d5ba1f96baULL});

    const std::array<std::uint64_t, 4> e =
        philox4x64({0, 0, 0, 0}, {0xffffffffffffffffULL, 0xffffffffffffffffULL});
    CHECK(e == std::array<std::uint64_t, 4>{0x44b7493d1acfc229ULL, 0x6636af8e997921ddULL,
                                            0x3f73e132b5b3780eULL, 0x605644dde03b01b1ULL});
}

TEST_CASE("streams are reproducible and substreams are stable") {
    RandomStream a(12345);
    RandomStream b(12345);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RandomStream c(12345);
    RandomStream d(54321);
    bool all_equal = true;
    for (int i = 0; i < 16; ++i) all_equal &= (c.next_u64() == d.next_u64());
    CHECK_FALSE(all_equal);

    // Consuming from one substream never changes another.
    const RandomStream root(99);
    RandomStream first = root.substream("source");
    std::vector<std::uint64_t> expected;
    for (int i = 0; i < 32; ++i) expected.push_back(first.next_u64());

    RandomStream noisy = root.substream("check-selection");
    for (int i = 0; i < 1000; ++i) noisy.next_u64();
    RandomStream again = root.substream("source");
    for (int i = 0; i < 32; ++i)
        CHECK(again.next_u64() == expected[static_cast<std::size_t>(i)]);

    // Distinct labels and distinct block lanes give distinct sequences.
    RandomStream s1 = root.substream("source");
    RandomStream s2 = root.substream("measurement");
    CHECK(s1.next_u64() != s2.next_u64());
    RandomStream lane0 = root.substream("source").block(0);
    RandomStream lane1 = root.substream("source").block(1);
    CHECK(lane0.next_u64() == expected[0]);  // lane 0 is the stream itself
    CHECK(lane1.next_u64() != expected[0]);

    // Chained substreams depend on the order of labels.
    RandomStream ab = root.substream("a").substream("b");
    RandomStream ba = root.substream("b").substream("a");
    CHECK(ab.next_u64() != ba.next_u64());
}

TEST_CASE("uniform draws have the advertised ranges") {
    RandomStream rng(2024);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    std::array<int, 3> counts{0, 0, 0};
    for (int i = 0; i < 30000; ++i) {
        const int t = rng.next_trit();
        REQUIRE(t >= 0);
        REQUIRE(t <= 2);
        ++counts[static_cast<std::size_t>(t)];
    }
    // 5 sigma around 10000 with sigma = sqrt(30000 * (1/3)(2/3)) ~ 81.6.
    for (const int c : counts) CHECK(std::abs(c - 10000) < 410);
}

TEST_CASE("draw_state honors the source model") {
    RandomStream rng(404);
    const SourceModel ideal = SourceModel::ideal();
    for (int i = 0; i < 10; ++i)
        CHECK(states_equal(draw_state(ideal, rng), unbiased_state(0)));

    const SourceModel fixed = SourceModel::fixed(make_state(0, 1, 0));
    const SourceModel single =
        SourceModel::ensemble({{1.0, make_state(0, 1, 0)}});
    for (int i = 0; i < 10; ++i) {
        CHECK(states_equal(draw_state(fixed, rng), make_state(0, 1, 0)));
        CHECK(states_equal(draw_state(single, rng), make_state(0, 1, 0)));
    }

    // 50/50 ensemble: component frequencies 0.5 +- 0.01 over 1e5 draws.
    const SourceModel mix = SourceModel::ensemble(
        {{0.5, unbiased_state(0)}, {0.5, make_state(0, 1, 0)}});
    RandomStream draws = RandomStream(777).substream("source");
    int first = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
        if (states_equal(draw_state(mix, draws), unbiased_state(0))) ++first;
    CHECK(std::abs(first / static_cast<double>(n) - 0.5) < 0.01);
}

TEST_CASE("source model validation") {
    CHECK_THROWS_AS(SourceModel::ensemble({}), std::invalid_argument);
    CHECK_THROWS_AS(SourceModel::ensemble({{0.5, unbiased_state(0)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        SourceModel::ensemble({{0.7, unbiased_state(0)}, {-0.3, unbiased_state(1)}}),
        std::invalid_argument);
    CHECK(SourceModel::ideal().mixture_fidelity() == doctest::Approx(1.0).epsilon(1e-12));
    const SourceModel mix = SourceModel::ensemble(
        {{0.8, unbiased_state(0)}, {0.2, make_state(0, 1, 0)}});
    CHECK(mix.mixture_fidelity() == doctest::Approx(0.8 + 0.2 / 3.0).epsilon(1e-12));
}

TEST_CASE("measure: eigenstates are deterministic, records are reproducible") {
    RandomStream rng(505);
    const QutritState zero = make_state(0, 1, 0);
    for (int i = 0; i < 20; ++i) {
        const MeasurementRecord rec = measure(zero, spin_basic(BasisLabel::Z), rng);
        CHECK(rec.outcome == 1);
        CHECK(rec.basis == BasisLabel::Z);
        CHECK(rec.probability_used == doctest::Approx(1.0).epsilon(1e-12));
    }

    RandomStream r1(606);
    RandomStream r2(606);
    for (int i = 0; i < 100; ++i) {
        const MeasurementRecord a = measure(unbiased_state(0), spin_basic(BasisLabel::X), r1);
        const MeasurementRecord b = measure(unbiased_state(0), spin_basic(BasisLabel::X), r2);
        CHECK(a.outcome == b.outcome);
        CHECK(a.probability_used == b.probability_used);
    }
}

TEST_CASE("sample_outcome uses the fixed cumulative order") {
    const OutcomeDistribution d{0.2, 0.3, 0.5};
    CHECK(sample_outcome(d, 0.0) == Outcome::Plus);
    CHECK(sample_outcome(d, 0.19) == Outcome::Plus);
    CHECK(sample_outcome(d, 0.2) == Outcome::Zero);
    CHECK(sample_outcome(d, 0.49) == Outcome::Zero);
    CHECK(sample_outcome(d, 0.5) == Outcome::Minus);
    CHECK(sample_outcome(d, 0.999) == Outcome::Minus);
}

TEST_CASE("empirical frequencies converge to Born probabilities") {
    // Unbiased state under S_Z: each trit at 1/3 +- 0.01 over 9e4 draws.
    {
        RandomStream rng = RandomStream(808).substream("measurement");
        std::array<int, 3> counts{0, 0, 0};
        const int n = 90000;
        for (int i = 0; i < n; ++i) {
            const MeasurementRecord rec =
                measure(unbiased_state(0), spin_basic(BasisLabel::Z), rng);
            ++counts[static_cast<std::size_t>(rec.outcome)];
        }
        for (const int c : counts)
            CHECK(std::abs(c / static_cast<double>(n) - 1.0 / 3.0) < 0.01);
    }

    // 5-sigma envelope for a non-uniform distribution: |+> under S_X.
    {
        RandomStream rng = RandomStream(909).substream("measurement");
        const QutritState plus = make_state(1, 0, 0);
        const OutcomeDistribution want = born(plus, spin_basic(BasisLabel::X));
        std::array<int, 3> counts{0, 0, 0};
        const int n = 100000;
        for (int i = 0; i < n; ++i)
            ++counts[static_cast<std::size_t>(
                measure(plus, spin_basic(BasisLabel::X), rng).outcome)];
        const std::array<double, 3> probs{want.p_plus, want.p_zero, want.p_minus};
        for (int v = 0; v < 3; ++v) {
            const double p = probs[static_cast<std::size_t>(v)];
            const double limit = 5.0 * std::sqrt(p * (1.0 - p) / n);
            CHECK(std::abs(counts[static_cast<std::size_t>(v)] / static_cast<double>(n) - p) <=
                  limit);
        }
    }
}
