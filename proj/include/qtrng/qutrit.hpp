#pragma once

// Qutrit states over the basis |+>, |0>, |->, spin-1 observables along
// arbitrary directions with closed-form spectral decompositions, Born
// probabilities, concurrence, fidelity to the unbiased target state, and
// the exhaustive grid search certifying that exactly four unbiased states
// exist.

#include <array>
#include <string>
#include <vector>

#include "qtrng/linalg.hpp"

namespace qtrng {

// zeta = exp(i*pi/4), the primitive eighth root of unity.
inline const Complex kZeta{std::sqrt(0.5), std::sqrt(0.5)};
inline const Complex kZeta3{-std::sqrt(0.5), std::sqrt(0.5)};

// Measurement issues in fixed order; the trit encoding is +1 -> 0, 0 -> 1,
// -1 -> 2 and must stay bit-exact across CLI runs.
enum class Outcome : int { Plus = 0, Zero = 1, Minus = 2 };

inline int outcome_trit(Outcome v) { return static_cast<int>(v); }
inline int outcome_eigenvalue(Outcome v) { return 1 - static_cast<int>(v); }

struct QutritState {
    Vec3 amp;                  // amplitudes on |+>, |0>, |->
    bool renormalized = false; // input norm drifted from 1 by more than 1e-9

    Complex alpha() const { return amp[0]; }
    Complex beta() const { return amp[1]; }
    Complex gamma() const { return amp[2]; }
};

// Normalizes (alpha, beta, gamma); throws std::invalid_argument on the zero
// vector or non-finite input. `renormalized` records a norm drift > 1e-9.
QutritState make_state(Complex alpha, Complex beta, Complex gamma);
QutritState make_state(const Vec3& amplitudes);

// The four states whose nine basic-measurement probabilities all equal 1/3:
//   k=0: (zeta, 1, zeta^3)/sqrt3      k=1: (zeta, -1, zeta^3)/sqrt3
//   k=2: (zeta^3, 1, zeta)/sqrt3      k=3: (zeta^3, -1, zeta)/sqrt3
const QutritState& unbiased_state(int k);

// Physical states are rays: equal iff |<a|b>| = 1 within tol.
bool states_equal(const QutritState& a, const QutritState& b, double tol = 1e-9);

// Measurement direction. The authoritative parameters are (c, s, theta) with
// S = c*S_Z + s*S_theta; chi and phi are the angles they derive from
// (c = cos chi, s = sin chi, theta = exp(i phi)).
struct SpinDirection {
    double chi = 0.0;
    double phi = 0.0;
    double c = 1.0;
    double s = 0.0;
    Complex theta{1.0, 0.0};

    static SpinDirection from_angles(double chi, double phi);
    // Exact components; requires c^2 + s^2 = 1 and |theta| = 1 within 1e-12.
    static SpinDirection from_components(double c, double s, Complex theta);
};

enum class BasisLabel { Z, X, Y, Check };

std::string_view basis_name(BasisLabel b);

// A spin-1 observable carried together with its spectral decomposition,
// eigenvectors indexed by Outcome (+1, 0, -1). Construction validates
// hermiticity, the eigen-equations and orthonormality at 1e-12.
struct SpinObservable {
    Mat3 matrix;
    std::array<Vec3, 3> eigvec;
    BasisLabel label;

    SpinObservable(Mat3 m, std::array<Vec3, 3> vecs, BasisLabel label);

    const Vec3& eigenvector(Outcome v) const { return eigvec[static_cast<int>(v)]; }
};

// S_Z, S_X or S_Y with the closed-form spectra.
const SpinObservable& spin_basic(BasisLabel axis);

// S_{c,theta} = c*S_Z + s*S_theta for a general direction, with the
// closed-form spectrum:
//   0:  -s(theta*/sqrt2)|+> + c|0> + s(theta/sqrt2)|->
//   +-1: ((1+-c)theta*|+> +- s*sqrt2|0> + (1-+c)theta|->)/2
// The degenerate direction s=0 reduces to c*S_Z; theta is then irrelevant.
SpinObservable spin_general(const SpinDirection& d, BasisLabel label = BasisLabel::Check);

// The state-testing observable S at c = 1/sqrt3, theta = zeta^3, whose
// 0-eigenvector is unbiased_state(0), and its square.
const SpinObservable& check_observable();
const Mat3& check_observable_squared();

struct OutcomeDistribution {
    double p_plus = 0.0;
    double p_zero = 0.0;
    double p_minus = 0.0;

    double at(Outcome v) const {
        switch (v) {
            case Outcome::Plus: return p_plus;
            case Outcome::Zero: return p_zero;
            default: return p_minus;
        }
    }
};

// Born rule from the spectral decomposition: p_v = |<eigvec_v|state>|^2.
OutcomeDistribution born(const QutritState& state, const SpinObservable& obs);

// Entanglement of the state seen as a symmetric qubit pair: |beta^2 - 2*alpha*gamma|.
double concurrence(const QutritState& state);

// <state|m|state> for Hermitian m; throws on non-Hermitian input.
double expectation(const QutritState& state, const Mat3& m);

// Squared overlap with unbiased_state(0): |alpha*zeta^* + beta - gamma*zeta|^2 / 3.
double fidelity_to_unbiased(const QutritState& state);

// --- exhaustive unbiased-state search -------------------------------------

// Grid cell in the scan parameterization: |alpha| = ia/R, |beta| = ib/R,
// |gamma| determined, phases of alpha and gamma relative to beta at
// 2*pi*k/R; beta real >= 0 fixes the global phase.
struct GridCell {
    int ia = 0;
    int ib = 0;
    int ka = 0;
    int kg = 0;
};

QutritState grid_cell_state(const GridCell& cell, int resolution);

struct UnbiasedSearchResult {
    std::vector<QutritState> states;   // all accepted states
    std::vector<GridCell> cells;       // their grid coordinates
    std::size_t cluster_count = 0;
    // Cluster id holding the best match for unbiased_state(k), or -1.
    std::array<int, 4> cluster_of_unbiased{-1, -1, -1, -1};
    std::array<double, 4> best_fidelity{0.0, 0.0, 0.0, 0.0};
    bool ok = false;
    std::string failure;  // diagnostic when !ok
};

// Brute-force scan accepting cells with max |p - 1/3| < 2/resolution over
// the nine basic-measurement probabilities. Passes iff the accepted cells
// form exactly 4 clusters, each containing exactly one unbiased_state(k).
// Failure is reported in the result, never silently accepted.
UnbiasedSearchResult search_unbiased(int grid_resolution);

// Clustering/assessment helpers, separated so the verdict logic is testable
// on synthetic cell sets.
std::vector<std::vector<GridCell>> cluster_cells(const std::vector<GridCell>& cells,
                                                 int resolution);
void assess_clusters(UnbiasedSearchResult& result, int resolution);

}  // namespace qtrng
