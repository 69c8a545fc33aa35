#include <doctest.h>

#include <limits>
#include <numbers>

#include "helpers.hpp"
#include "qtrng/qutrit.hpp"

using namespace qtrng;
using test_helpers::random_state;

namespace {
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
const double kInvSqrt3 = 1.0 / std::numbers::sqrt3;
const double kThird = 1.0 / 3.0;
}  // namespace

TEST_CASE("make_state normalizes and flags drift") {
    const QutritState plus = make_state(1, 0, 0);
    CHECK(plus.alpha() == Complex(1.0));
    CHECK_FALSE(plus.renormalized);

    const QutritState scaled = make_state(2, 0, 0);
    CHECK(scaled.alpha().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(scaled.renormalized);

    CHECK_THROWS_AS(make_state(0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_state(std::numeric_limits<double>::infinity(), 0, 0),
                    std::invalid_argument);
}

TEST_CASE("unbiased states match their closed forms") {
    const QutritState& u0 = unbiased_state(0);
    CHECK(std::abs(u0.alpha() - kInvSqrt3 * kZeta) <= kIdentityTol);
    CHECK(std::abs(u0.beta() - Complex(kInvSqrt3)) <= kIdentityTol);
    CHECK(std::abs(u0.gamma() - kInvSqrt3 * kZeta3) <= kIdentityTol);

    const QutritState& u1 = unbiased_state(1);
    CHECK(std::abs(u1.beta() + Complex(kInvSqrt3)) <= kIdentityTol);
    CHECK(std::abs(u1.alpha() - u0.alpha()) <= kIdentityTol);

    const QutritState& u2 = unbiased_state(2);
    CHECK(std::abs(u2.alpha() - kInvSqrt3 * kZeta3) <= kIdentityTol);
    CHECK(std::abs(u2.gamma() - kInvSqrt3 * kZeta) <= kIdentityTol);

    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(concurrence(unbiased_state(k)) - 1.0) <= kIdentityTol);

    CHECK_THROWS_AS(unbiased_state(4), std::out_of_range);
    CHECK_THROWS_AS(unbiased_state(-1), std::out_of_range);

    // make_state reproduces u0 from raw amplitudes.
    const QutritState direct = make_state(kZeta, 1.0, kZeta3);
    CHECK(states_equal(direct, u0));
    CHECK(direct.renormalized);  // norm was sqrt3
}

TEST_CASE("basic spin observables match the cited matrices and spectra") {
    const SpinObservable& sz = spin_basic(BasisLabel::Z);
    Mat3 z_want;
    z_want(0, 0) = 1;
    z_want(2, 2) = -1;
    CHECK(max_abs_diff(sz.matrix, z_want) == 0.0);
    CHECK(max_abs_diff(sz.eigenvector(Outcome::Plus), Vec3{{1, 0, 0}}) == 0.0);
    CHECK(max_abs_diff(sz.eigenvector(Outcome::Zero), Vec3{{0, 1, 0}}) == 0.0);
    CHECK(max_abs_diff(sz.eigenvector(Outcome::Minus), Vec3{{0, 0, 1}}) == 0.0);

    const SpinObservable& sx = spin_basic(BasisLabel::X);
    Mat3 x_want;
    x_want(0, 1) = x_want(1, 0) = x_want(1, 2) = x_want(2, 1) = kInvSqrt2;
    CHECK(max_abs_diff(sx.matrix, x_want) == 0.0);
    CHECK(max_abs_diff(sx.eigenvector(Outcome::Zero), Vec3{{kInvSqrt2, 0, -kInvSqrt2}}) ==
          0.0);
    CHECK(max_abs_diff(sx.eigenvector(Outcome::Plus), Vec3{{0.5, kInvSqrt2, 0.5}}) == 0.0);

    const SpinObservable& sy = spin_basic(BasisLabel::Y);
    CHECK(max_abs_diff(sy.eigenvector(Outcome::Plus),
                       Vec3{{0.5, Complex(0, kInvSqrt2), -0.5}}) == 0.0);
    CHECK(max_abs_diff(sy.eigenvector(Outcome::Zero), Vec3{{kInvSqrt2, 0, kInvSqrt2}}) ==
          0.0);
    CHECK(is_hermitian(sy.matrix));
}

TEST_CASE("spectral reconstruction for basic and random directions") {
    auto reconstructs = [](const SpinObservable& s) {
        Mat3 sum;
        for (const Outcome v : {Outcome::Plus, Outcome::Zero, Outcome::Minus})
            sum = sum + Complex(outcome_eigenvalue(v)) * outer(s.eigenvector(v));
        return max_abs_diff(sum, s.matrix);
    };
    for (const BasisLabel axis : {BasisLabel::Z, BasisLabel::X, BasisLabel::Y})
        CHECK(reconstructs(spin_basic(axis)) <= kIdentityTol);

    RandomStream rng(23);
    for (int t = 0; t < 100; ++t) {
        const double chi = std::numbers::pi * (2 * rng.next_unit() - 1);
        const double phi = std::numbers::pi * (2 * rng.next_unit() - 1);
        CHECK(reconstructs(spin_general(SpinDirection::from_angles(chi, phi))) <=
              kIdentityTol);
    }
}

TEST_CASE("spin_general reduces to the basic axes") {
    const SpinObservable sz = spin_general(SpinDirection::from_angles(0.0, 0.0));
    CHECK(max_abs_diff(sz.matrix, spin_basic(BasisLabel::Z).matrix) <= kIdentityTol);

    const SpinObservable sx =
        spin_general(SpinDirection::from_angles(std::numbers::pi / 2, 0.0));
    CHECK(max_abs_diff(sx.matrix, spin_basic(BasisLabel::X).matrix) <= kIdentityTol);

    const SpinObservable sy = spin_general(
        SpinDirection::from_angles(std::numbers::pi / 2, std::numbers::pi / 2));
    CHECK(max_abs_diff(sy.matrix, spin_basic(BasisLabel::Y).matrix) <= kIdentityTol);
}

TEST_CASE("degenerate direction s = 0 is c*S_Z for any theta") {
    const SpinDirection up = SpinDirection::from_components(1.0, 0.0, kZeta3);
    CHECK(max_abs_diff(spin_general(up).matrix, spin_basic(BasisLabel::Z).matrix) <=
          kIdentityTol);
    const SpinDirection down = SpinDirection::from_components(-1.0, 0.0, Complex(0, 1));
    CHECK(max_abs_diff(spin_general(down).matrix,
                       Complex(-1.0) * spin_basic(BasisLabel::Z).matrix) <= kIdentityTol);
    CHECK_THROWS_AS(SpinDirection::from_components(0.9, 0.9, Complex(1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(SpinDirection::from_components(1.0, 0.0, Complex(2)),
                    std::invalid_argument);
}

TEST_CASE("check observable matches its closed form") {
    const SpinObservable& s = check_observable();
    const double is3 = kInvSqrt3;
    Mat3 want;
    want(0, 0) = is3;
    want(0, 1) = -is3 * kZeta;
    want(1, 0) = -is3 * std::conj(kZeta);
    want(1, 2) = -is3 * kZeta;
    want(2, 1) = -is3 * std::conj(kZeta);
    want(2, 2) = -is3;
    CHECK(max_abs_diff(s.matrix, want) <= kIdentityTol);

    // Its 0-eigenvector is the unbiased target, up to global phase.
    CHECK(std::abs(std::abs(inner(s.eigenvector(Outcome::Zero), unbiased_state(0).amp)) -
                   1.0) <= kIdentityTol);

    // S^2 closed form.
    Mat3 sq;
    sq(0, 0) = sq(1, 1) = sq(2, 2) = 2.0 / 3.0;
    sq(0, 1) = -kZeta / 3.0;
    sq(1, 0) = -std::conj(kZeta) / 3.0;
    sq(0, 2) = kZeta * kZeta / 3.0;
    sq(2, 0) = std::conj(kZeta) * std::conj(kZeta) / 3.0;
    sq(1, 2) = kZeta / 3.0;
    sq(2, 1) = std::conj(kZeta) / 3.0;
    CHECK(max_abs_diff(check_observable_squared(), sq) <= kIdentityTol);
}

TEST_CASE("born: eigenstates, plus state under S_X, unbiased states") {
    const OutcomeDistribution zero_z = born(make_state(0, 1, 0), spin_basic(BasisLabel::Z));
    CHECK(zero_z.p_zero == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(zero_z.p_plus == 0.0);
    CHECK(zero_z.p_minus == 0.0);

    const OutcomeDistribution plus_x = born(make_state(1, 0, 0), spin_basic(BasisLabel::X));
    CHECK(plus_x.p_plus == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(plus_x.p_zero == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(plus_x.p_minus == doctest::Approx(0.25).epsilon(1e-12));

    for (int k = 0; k < 4; ++k)
        for (const BasisLabel axis : {BasisLabel::Z, BasisLabel::X, BasisLabel::Y}) {
            const OutcomeDistribution d = born(unbiased_state(k), spin_basic(axis));
            CHECK(std::abs(d.p_plus - kThird) <= kIdentityTol);
            CHECK(std::abs(d.p_zero - kThird) <= kIdentityTol);
            CHECK(std::abs(d.p_minus - kThird) <= kIdentityTol);
        }
}

TEST_CASE("born from spectra matches the closed forms on random states") {
    RandomStream rng(29);
    const double s2 = std::numbers::sqrt2;
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const QutritState st = random_state(rng);
        const Complex a = st.alpha(), b = st.beta(), g = st.gamma();

        const OutcomeDistribution dz = born(st, spin_basic(BasisLabel::Z));
        worst = std::max(worst, std::abs(dz.p_plus - std::norm(a)));
        worst = std::max(worst, std::abs(dz.p_zero - std::norm(b)));
        worst = std::max(worst, std::abs(dz.p_minus - std::norm(g)));

        const OutcomeDistribution dx = born(st, spin_basic(BasisLabel::X));
        worst = std::max(worst, std::abs(dx.p_zero - 0.5 * std::norm(a - g)));
        worst = std::max(worst, std::abs(dx.p_plus - 0.25 * std::norm(a + s2 * b + g)));
        worst = std::max(worst, std::abs(dx.p_minus - 0.25 * std::norm(a - s2 * b + g)));

        const OutcomeDistribution dy = born(st, spin_basic(BasisLabel::Y));
        worst = std::max(worst, std::abs(dy.p_zero - 0.5 * std::norm(a + g)));
        worst = std::max(worst,
                         std::abs(dy.p_plus - 0.25 * std::norm(a - Complex(0, s2) * b - g)));
        worst = std::max(worst,
                         std::abs(dy.p_minus - 0.25 * std::norm(a + Complex(0, s2) * b - g)));

        const double total = dz.p_plus + dz.p_zero + dz.p_minus;
        worst = std::max(worst, std::abs(total - 1.0));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("concurrence values") {
    CHECK(concurrence(make_state(1, 0, 0)) == 0.0);
    // |beta^2 - 2 alpha gamma| = |0 - 2 * 1/2| = 1.
    CHECK(std::abs(concurrence(make_state(kInvSqrt2, 0, kInvSqrt2)) - 1.0) <= kIdentityTol);
}

TEST_CASE("expectation values and hermiticity guard") {
    CHECK(std::abs(expectation(unbiased_state(0), check_observable_squared())) <=
          kIdentityTol);
    CHECK(std::abs(expectation(make_state(0, 1, 0), spin_basic(BasisLabel::Z).matrix)) <=
          kIdentityTol);
    // Top-left entry of the squared check observable.
    CHECK(expectation(make_state(1, 0, 0), check_observable_squared()) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    Mat3 skew;
    skew(0, 1) = Complex(0, 1);
    skew(1, 0) = Complex(0, 1);
    CHECK_THROWS_AS(expectation(make_state(1, 0, 0), skew), std::invalid_argument);
}

TEST_CASE("fidelity closed form against the overlap definition") {
    CHECK(fidelity_to_unbiased(unbiased_state(0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity_to_unbiased(make_state(0, 1, 0)) ==
          doctest::Approx(kThird).epsilon(1e-12));
    CHECK(fidelity_to_unbiased(make_state(1, 0, 0)) ==
          doctest::Approx(kThird).epsilon(1e-12));

    RandomStream rng(31);
    for (int t = 0; t < 500; ++t) {
        const QutritState st = random_state(rng);
        const double f = fidelity_to_unbiased(st);
        CHECK(std::abs(f - std::norm(inner(unbiased_state(0).amp, st.amp))) <= kIdentityTol);
        // F = 1 iff the check expectation vanishes; they are complements.
        CHECK(std::abs(expectation(st, check_observable_squared()) - (1.0 - f)) <= 1e-10);
    }
}

TEST_CASE("general-direction eigenvector entanglement") {
    RandomStream rng(37);
    for (int t = 0; t < 100; ++t) {
        const double chi = std::numbers::pi * (2 * rng.next_unit() - 1);
        const double phi = std::numbers::pi * (2 * rng.next_unit() - 1);
        const SpinObservable s = spin_general(SpinDirection::from_angles(chi, phi));
        CHECK(std::abs(concurrence(make_state(s.eigenvector(Outcome::Zero))) - 1.0) <= 1e-10);
        CHECK(concurrence(make_state(s.eigenvector(Outcome::Plus))) <= 1e-10);
        CHECK(concurrence(make_state(s.eigenvector(Outcome::Minus))) <= 1e-10);
    }
}

TEST_CASE("Casimir invariant for the basic triple and general triples") {
    const Mat3 two_i = Complex(2.0) * identity<3>();
    const Mat3& z = spin_basic(BasisLabel::Z).matrix;
    const Mat3& x = spin_basic(BasisLabel::X).matrix;
    const Mat3& y = spin_basic(BasisLabel::Y).matrix;
    CHECK(max_abs_diff(z * z + x * x + y * y, two_i) <= kIdentityTol);

    RandomStream rng(41);
    for (int t = 0; t < 50; ++t) {
        const double chi = std::numbers::pi * (2 * rng.next_unit() - 1);
        const double phi = std::numbers::pi * (2 * rng.next_unit() - 1);
        const Mat3 u = spin_general(SpinDirection::from_angles(chi, phi)).matrix;
        const Mat3 v =
            spin_general(SpinDirection::from_angles(chi + std::numbers::pi / 2, phi)).matrix;
        const Mat3 w = spin_general(SpinDirection::from_angles(std::numbers::pi / 2,
                                                               phi + std::numbers::pi / 2))
                           .matrix;
        CHECK(max_abs_diff(u * u + v * v + w * w, two_i) <= kIdentityTol);
    }
}

TEST_CASE("SpinObservable constructor rejects inconsistent spectral data") {
    const SpinObservable& sy = spin_basic(BasisLabel::Y);
    CHECK_THROWS_AS(SpinObservable(Complex(-1.0) * sy.matrix, sy.eigvec, BasisLabel::Y),
                    std::invalid_argument);
}

TEST_CASE("search_unbiased at smoke resolution finds the four states") {
    const UnbiasedSearchResult res = search_unbiased(16);
    REQUIRE(res.ok);
    CHECK(res.cluster_count == 4);
    CHECK_FALSE(res.states.empty());
    for (int k = 0; k < 4; ++k) {
        CHECK(res.best_fidelity[static_cast<std::size_t>(k)] >= 1.0 - 2.0 / 16);
        CHECK(res.cluster_of_unbiased[static_cast<std::size_t>(k)] >= 0);
    }
    for (const QutritState& st : res.states)
        CHECK(std::abs(concurrence(st) - 1.0) <= 10.0 / 16);

    CHECK_THROWS_AS(search_unbiased(15), std::invalid_argument);
}

TEST_CASE("cluster assessment rejects degenerate outcomes") {
    // Empty cell set.
    UnbiasedSearchResult empty;
    assess_clusters(empty, 64);
    CHECK_FALSE(empty.ok);
    CHECK(empty.failure.find("no grid cell") != std::string::npos);

    // One blob far away from every unbiased state: one cluster, no match.
    UnbiasedSearchResult blob;
    blob.cells = {GridCell{1, 1, 0, 0}, GridCell{1, 1, 0, 1}, GridCell{1, 1, 1, 0}};
    assess_clusters(blob, 64);
    CHECK_FALSE(blob.ok);

    // Five isolated cells: five clusters.
    UnbiasedSearchResult five;
    for (int i = 0; i < 5; ++i) five.cells.push_back(GridCell{i * 10, 1, 0, 0});
    assess_clusters(five, 64);
    CHECK_FALSE(five.ok);
    CHECK(five.failure.find("expected 4 clusters") != std::string::npos);

    // Phase wrap-around: cells at ka = 0 and ka = R-1 join one cluster.
    UnbiasedSearchResult wrap;
    wrap.cells = {GridCell{5, 5, 0, 0}, GridCell{5, 5, 63, 0}};
    assess_clusters(wrap, 64);
    CHECK(wrap.cluster_count == 1);
}
