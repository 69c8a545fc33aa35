#pragma once

// The analytic identity suite behind the `verify` command: every closed-form
// identity the library is built on, run against explicit spectral data so a
// corrupted build (wrong matrix, wrong eigenvector) is caught and named.

#include <cstdint>
#include <string>
#include <vector>

#include "qtrng/biphoton.hpp"
#include "qtrng/qutrit.hpp"
#include "qtrng/random.hpp"

namespace qtrng {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Raw spectral data for the three basic spin observables. The standard
// fixture mirrors spin_basic(); corrupted variants exist so tests can prove
// the suite fails loudly on a broken build.
struct ObservableFixture {
    Mat3 z, x, y;
    std::array<Vec3, 3> z_vecs, x_vecs, y_vecs;  // indexed by Outcome

    static ObservableFixture standard();
    // y matrix negated while its spectrum is kept: a sign-flipped build.
    static ObservableFixture corrupted_y_sign();
};

struct VerifyOptions {
    int resolution = 64;
    std::uint64_t seed = 0x5EEDBA5E;
    ObservableFixture fixture = ObservableFixture::standard();
    bool run_search = true;
};

std::vector<CheckResult> run_verification(const VerifyOptions& opt);

bool all_passed(const std::vector<CheckResult>& results);

// Largest expectation of a Hermitian 3x3 over unit vectors (power iteration
// with a deterministic seeded start).
double max_expectation3(const Mat3& m, std::uint64_t seed);

// Seeded generators for property checks: entries uniform on [-1, 1].
Mat2 random_matrix2(RandomStream& rng);
Mat2 random_hermitian2(RandomStream& rng);
// Sign of the spectrum of a random Hermitian matrix: a +-1-valued observable.
QubitObservable random_observable2(RandomStream& rng);
QutritState random_qutrit(RandomStream& rng);

}  // namespace qtrng
