#include "qtrng/qutrit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

namespace qtrng {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
const double kInvSqrt3 = 1.0 / std::numbers::sqrt3;

}  // namespace

QutritState make_state(Complex alpha, Complex beta, Complex gamma) {
    return make_state(Vec3{{alpha, beta, gamma}});
}

QutritState make_state(const Vec3& amplitudes) {
    require_finite(amplitudes, "make_state");
    const double n2 = norm_sq(amplitudes);
    if (n2 <= 0.0) throw std::invalid_argument("make_state: zero amplitude vector");
    QutritState st;
    st.renormalized = std::abs(std::sqrt(n2) - 1.0) > 1e-9;
    st.amp = Complex(1.0 / std::sqrt(n2), 0.0) * amplitudes;
    return st;
}

const QutritState& unbiased_state(int k) {
    static const std::array<QutritState, 4> states = {
        make_state(kInvSqrt3 * kZeta, Complex(kInvSqrt3), kInvSqrt3 * kZeta3),
        make_state(kInvSqrt3 * kZeta, Complex(-kInvSqrt3), kInvSqrt3 * kZeta3),
        make_state(kInvSqrt3 * kZeta3, Complex(kInvSqrt3), kInvSqrt3 * kZeta),
        make_state(kInvSqrt3 * kZeta3, Complex(-kInvSqrt3), kInvSqrt3 * kZeta)};
    if (k < 0 || k > 3) throw std::out_of_range("unbiased_state: index must be in 0..3");
    return states[static_cast<std::size_t>(k)];
}

bool states_equal(const QutritState& a, const QutritState& b, double tol) {
    return std::abs(std::abs(inner(a.amp, b.amp)) - 1.0) <= tol;
}

SpinDirection SpinDirection::from_angles(double chi, double phi) {
    SpinDirection d;
    d.chi = chi;
    d.phi = phi;
    d.c = std::cos(chi);
    d.s = std::sin(chi);
    d.theta = std::polar(1.0, phi);
    return d;
}

SpinDirection SpinDirection::from_components(double c, double s, Complex theta) {
    if (!std::isfinite(c) || !std::isfinite(s) || !is_finite(theta))
        throw std::invalid_argument("SpinDirection: non-finite component");
    if (std::abs(c * c + s * s - 1.0) > kIdentityTol)
        throw std::invalid_argument("SpinDirection: c^2 + s^2 != 1");
    if (std::abs(std::abs(theta) - 1.0) > kIdentityTol)
        throw std::invalid_argument("SpinDirection: |theta| != 1");
    SpinDirection d;
    d.c = c;
    d.s = s;
    d.theta = theta;
    d.chi = std::atan2(s, c);
    d.phi = std::arg(theta);
    return d;
}

std::string_view basis_name(BasisLabel b) {
    switch (b) {
        case BasisLabel::Z: return "Z";
        case BasisLabel::X: return "X";
        case BasisLabel::Y: return "Y";
        default: return "CHECK";
    }
}

SpinObservable::SpinObservable(Mat3 m, std::array<Vec3, 3> vecs, BasisLabel lbl)
    : matrix(m), eigvec(vecs), label(lbl) {
    require_finite(matrix, "SpinObservable");
    if (!is_hermitian(matrix)) throw std::invalid_argument("SpinObservable: matrix not Hermitian");
    for (int i = 0; i < 3; ++i) {
        const Vec3& v = eigvec[static_cast<std::size_t>(i)];
        const double ev = outcome_eigenvalue(static_cast<Outcome>(i));
        if (max_abs_diff(matrix * v, Complex(ev) * v) > kIdentityTol)
            throw std::invalid_argument("SpinObservable: eigen-equation violated");
        for (int j = 0; j < 3; ++j) {
            const Complex ip = inner(v, eigvec[static_cast<std::size_t>(j)]);
            const Complex want = (i == j) ? Complex(1.0) : Complex(0.0);
            if (std::abs(ip - want) > kIdentityTol)
                throw std::invalid_argument("SpinObservable: eigenvectors not orthonormal");
        }
    }
}

const SpinObservable& spin_basic(BasisLabel axis) {
    static const SpinObservable sz(
        Mat3{{1, 0, 0,
              0, 0, 0,
              0, 0, -1}},
        {Vec3{{1, 0, 0}}, Vec3{{0, 1, 0}}, Vec3{{0, 0, 1}}}, BasisLabel::Z);
    static const SpinObservable sx(
        Mat3{{0, kInvSqrt2, 0,
              kInvSqrt2, 0, kInvSqrt2,
              0, kInvSqrt2, 0}},
        {Vec3{{0.5, kInvSqrt2, 0.5}},
         Vec3{{kInvSqrt2, 0, -kInvSqrt2}},
         Vec3{{0.5, -kInvSqrt2, 0.5}}},
        BasisLabel::X);
    static const SpinObservable sy(
        Mat3{{0, Complex(0, -kInvSqrt2), 0,
              Complex(0, kInvSqrt2), 0, Complex(0, -kInvSqrt2),
              0, Complex(0, kInvSqrt2), 0}},
        {Vec3{{0.5, Complex(0, kInvSqrt2), -0.5}},
         Vec3{{kInvSqrt2, 0, kInvSqrt2}},
         Vec3{{0.5, Complex(0, -kInvSqrt2), -0.5}}},
        BasisLabel::Y);
    switch (axis) {
        case BasisLabel::Z: return sz;
        case BasisLabel::X: return sx;
        case BasisLabel::Y: return sy;
        default: throw std::invalid_argument("spin_basic: axis must be Z, X or Y");
    }
}

SpinObservable spin_general(const SpinDirection& d, BasisLabel label) {
    const double c = d.c;
    const double s = d.s;
    const Complex th = d.theta;
    const Complex thc = std::conj(th);

    Mat3 m;
    m(0, 0) = c;
    m(0, 1) = s * thc * kInvSqrt2;
    m(1, 0) = s * th * kInvSqrt2;
    m(1, 2) = s * thc * kInvSqrt2;
    m(2, 1) = s * th * kInvSqrt2;
    m(2, 2) = -c;

    const Vec3 vzero{{-s * thc * kInvSqrt2, c, s * th * kInvSqrt2}};
    const Vec3 vplus{{0.5 * (1 + c) * thc, 0.5 * s * std::numbers::sqrt2, 0.5 * (1 - c) * th}};
    const Vec3 vminus{{0.5 * (1 - c) * thc, -0.5 * s * std::numbers::sqrt2, 0.5 * (1 + c) * th}};
    return SpinObservable(m, {vplus, vzero, vminus}, label);
}

const SpinObservable& check_observable() {
    static const SpinObservable s = spin_general(
        SpinDirection::from_components(kInvSqrt3, std::sqrt(2.0 / 3.0), kZeta3),
        BasisLabel::Check);
    return s;
}

const Mat3& check_observable_squared() {
    static const Mat3 sq = check_observable().matrix * check_observable().matrix;
    return sq;
}

OutcomeDistribution born(const QutritState& state, const SpinObservable& obs) {
    OutcomeDistribution d;
    d.p_plus = std::norm(inner(obs.eigenvector(Outcome::Plus), state.amp));
    d.p_zero = std::norm(inner(obs.eigenvector(Outcome::Zero), state.amp));
    d.p_minus = std::norm(inner(obs.eigenvector(Outcome::Minus), state.amp));
    return d;
}

double concurrence(const QutritState& state) {
    return std::abs(state.beta() * state.beta() - 2.0 * state.alpha() * state.gamma());
}

double expectation(const QutritState& state, const Mat3& m) {
    if (!is_hermitian(m)) throw std::invalid_argument("expectation: matrix not Hermitian");
    const Complex e = sandwich(state.amp, m);
    // Hermitian m on a unit vector: the imaginary part is pure rounding.
    return e.real();
}

double fidelity_to_unbiased(const QutritState& state) {
    const Complex z = state.alpha() * std::conj(kZeta) + state.beta() - state.gamma() * kZeta;
    return std::norm(z) / 3.0;
}

QutritState grid_cell_state(const GridCell& cell, int resolution) {
    const double r = static_cast<double>(resolution);
    const double a = cell.ia / r;
    const double b = cell.ib / r;
    const double gg = std::max(0.0, 1.0 - a * a - b * b);
    const double pa = 2.0 * std::numbers::pi * cell.ka / r;
    const double pg = 2.0 * std::numbers::pi * cell.kg / r;
    return make_state(std::polar(a, pa), Complex(b), std::polar(std::sqrt(gg), pg));
}

std::vector<std::vector<GridCell>> cluster_cells(const std::vector<GridCell>& cells,
                                                 int resolution) {
    const int r = resolution;
    auto key = [r](int ia, int ib, int ka, int kg) {
        return ((static_cast<std::int64_t>(ia) * (r + 1) + ib) * r + ka) * r + kg;
    };
    std::set<std::int64_t> todo;
    for (const GridCell& c : cells) todo.insert(key(c.ia, c.ib, c.ka, c.kg));

    std::vector<std::vector<GridCell>> clusters;
    while (!todo.empty()) {
        std::vector<GridCell> comp;
        std::queue<std::int64_t> q;
        const std::int64_t start = *todo.begin();
        todo.erase(todo.begin());
        q.push(start);
        while (!q.empty()) {
            const std::int64_t k = q.front();
            q.pop();
            GridCell c;
            c.kg = static_cast<int>(k % r);
            c.ka = static_cast<int>((k / r) % r);
            c.ib = static_cast<int>((k / r / r) % (r + 1));
            c.ia = static_cast<int>(k / r / r / (r + 1));
            comp.push_back(c);
            for (int dia = -1; dia <= 1; ++dia)
                for (int dib = -1; dib <= 1; ++dib)
                    for (int dka = -1; dka <= 1; ++dka)
                        for (int dkg = -1; dkg <= 1; ++dkg) {
                            const int nia = c.ia + dia;
                            const int nib = c.ib + dib;
                            if (nia < 0 || nib < 0 || nia > r || nib > r) continue;
                            const std::int64_t nk = key(nia, nib, ((c.ka + dka) % r + r) % r,
                                                        ((c.kg + dkg) % r + r) % r);
                            auto it = todo.find(nk);
                            if (it != todo.end()) {
                                todo.erase(it);
                                q.push(nk);
                            }
                        }
        }
        clusters.push_back(std::move(comp));
    }
    return clusters;
}

void assess_clusters(UnbiasedSearchResult& result, int resolution) {
    const double tol = 2.0 / resolution;
    const auto clusters = cluster_cells(result.cells, resolution);
    result.cluster_count = clusters.size();
    result.cluster_of_unbiased = {-1, -1, -1, -1};
    result.best_fidelity = {0.0, 0.0, 0.0, 0.0};

    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
        for (const GridCell& cell : clusters[ci]) {
            const QutritState st = grid_cell_state(cell, resolution);
            for (int k = 0; k < 4; ++k) {
                const double f = std::norm(inner(unbiased_state(k).amp, st.amp));
                if (f > result.best_fidelity[static_cast<std::size_t>(k)]) {
                    result.best_fidelity[static_cast<std::size_t>(k)] = f;
                    result.cluster_of_unbiased[static_cast<std::size_t>(k)] =
                        static_cast<int>(ci);
                }
            }
        }
    }

    std::ostringstream why;
    if (result.cells.empty()) {
        why << "no grid cell satisfies the probability bound";
    } else if (clusters.size() != 4) {
        why << "expected 4 clusters, found " << clusters.size();
    } else {
        std::set<int> ids;
        for (int k = 0; k < 4; ++k) {
            if (result.best_fidelity[static_cast<std::size_t>(k)] < 1.0 - tol) {
                why << "unbiased state " << k << " not matched within grid tolerance";
                break;
            }
            ids.insert(result.cluster_of_unbiased[static_cast<std::size_t>(k)]);
        }
        if (why.str().empty() && ids.size() != 4)
            why << "two unbiased states matched by the same cluster";
    }
    result.failure = why.str();
    result.ok = result.failure.empty();
}

UnbiasedSearchResult search_unbiased(int grid_resolution) {
    if (grid_resolution < 16)
        throw std::invalid_argument("search_unbiased: resolution must be >= 16");

    const int r = grid_resolution;
    const double tol = 2.0 / r;
    const double third = 1.0 / 3.0;
    const double s2 = std::numbers::sqrt2;

    UnbiasedSearchResult result;

    // Precomputed phase table.
    std::vector<Complex> phase(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k)
        phase[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / r);

    for (int ia = 0; ia <= r; ++ia) {
        const double a = static_cast<double>(ia) / r;
        const double pa = a * a;
        if (std::abs(pa - third) >= tol) continue;  // S_Z issue +1
        for (int ib = 0; ib <= r; ++ib) {
            const double b = static_cast<double>(ib) / r;
            const double pb = b * b;
            if (std::abs(pb - third) >= tol) continue;  // S_Z issue 0
            const double pg = 1.0 - pa - pb;
            if (pg < 0.0 || std::abs(pg - third) >= tol) continue;  // S_Z issue -1
            const double g = std::sqrt(pg);
            for (int ka = 0; ka < r; ++ka) {
                const Complex alpha = a * phase[static_cast<std::size_t>(ka)];
                for (int kg = 0; kg < r; ++kg) {
                    const Complex gamma = g * phase[static_cast<std::size_t>(kg)];
                    // Closed-form S_X and S_Y probabilities.
                    const Complex diff = alpha - gamma;
                    const Complex sum = alpha + gamma;
                    const double px0 = 0.5 * std::norm(diff);
                    if (std::abs(px0 - third) >= tol) continue;
                    const double pxp = 0.25 * std::norm(sum + s2 * b);
                    if (std::abs(pxp - third) >= tol) continue;
                    const double pxm = 0.25 * std::norm(sum - s2 * b);
                    if (std::abs(pxm - third) >= tol) continue;
                    const double py0 = 0.5 * std::norm(sum);
                    if (std::abs(py0 - third) >= tol) continue;
                    const double pyp = 0.25 * std::norm(diff - Complex(0, s2 * b));
                    if (std::abs(pyp - third) >= tol) continue;
                    const double pym = 0.25 * std::norm(diff + Complex(0, s2 * b));
                    if (std::abs(pym - third) >= tol) continue;
                    result.cells.push_back(GridCell{ia, ib, ka, kg});
                }
            }
        }
    }

    result.states.reserve(result.cells.size());
    for (const GridCell& c : result.cells) result.states.push_back(grid_cell_state(c, r));
    assess_clusters(result, r);
    return result;
}

}  // namespace qtrng
