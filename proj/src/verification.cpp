#include "qtrng/verification.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qtrng {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
const double kTwoSqrt2 = 2.0 * std::numbers::sqrt2;

double uniform_pm1(RandomStream& rng) { return 2.0 * rng.next_unit() - 1.0; }

// Born probability from raw spectral data.
double born_raw(const Vec3& eigvec, const Vec3& state) {
    return std::norm(inner(eigvec, state));
}

struct Checker {
    std::vector<CheckResult> results;

    void add(const std::string& name, double worst, double tol) {
        std::ostringstream detail;
        detail << "max deviation " << worst << " (tolerance " << tol << ")";
        results.push_back({name, worst <= tol, detail.str()});
    }

    void add_flag(const std::string& name, bool pass, const std::string& detail) {
        results.push_back({name, pass, detail});
    }
};

}  // namespace

ObservableFixture ObservableFixture::standard() {
    ObservableFixture f;
    const SpinObservable& z = spin_basic(BasisLabel::Z);
    const SpinObservable& x = spin_basic(BasisLabel::X);
    const SpinObservable& y = spin_basic(BasisLabel::Y);
    f.z = z.matrix;
    f.x = x.matrix;
    f.y = y.matrix;
    f.z_vecs = z.eigvec;
    f.x_vecs = x.eigvec;
    f.y_vecs = y.eigvec;
    return f;
}

ObservableFixture ObservableFixture::corrupted_y_sign() {
    ObservableFixture f = standard();
    f.y = Complex(-1.0) * f.y;
    return f;
}

double max_expectation3(const Mat3& m, std::uint64_t seed) {
    RandomStream rng = RandomStream(seed).substream("power-iteration");
    Vec3 v;
    for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(i)] = {uniform_pm1(rng), uniform_pm1(rng)};
    v = normalized(v);
    // Shift makes the target the dominant eigenvalue; spectra here are O(1).
    const Mat3 shifted = m + Complex(4.0) * identity<3>();
    for (int it = 0; it < 300; ++it) v = normalized(shifted * v);
    return sandwich(v, m).real();
}

Mat2 random_matrix2(RandomStream& rng) {
    Mat2 m;
    for (std::size_t i = 0; i < 4; ++i) m.e[i] = {uniform_pm1(rng), uniform_pm1(rng)};
    return m;
}

Mat2 random_hermitian2(RandomStream& rng) {
    const Mat2 m = random_matrix2(rng);
    return Complex(0.5) * (m + adjoint(m));
}

QubitObservable random_observable2(RandomStream& rng) {
    for (;;) {
        const Mat2 h = random_hermitian2(rng);
        // Closed-form 2x2 spectrum: lambda = mean +- radius.
        const double mean = 0.5 * trace(h).real();
        const Mat2 traceless = h - Complex(mean) * identity<2>();
        const double radius = std::sqrt(std::max(0.0, 0.5 * (std::norm(traceless.e[0]) +
                                                             std::norm(traceless.e[1]) +
                                                             std::norm(traceless.e[2]) +
                                                             std::norm(traceless.e[3]))));
        if (radius < 1e-6) continue;  // nearly scalar; sign(h) would be +-I
        if (mean + radius > 0.0 && mean - radius < 0.0) {
            // Mixed signs: sign(h) = traceless part / radius.
            return QubitObservable(Complex(1.0 / radius) * traceless);
        }
        // Same-sign spectrum gives sign(h) = +-I; degenerate, redraw.
    }
}

QutritState random_qutrit(RandomStream& rng) {
    for (;;) {
        Vec3 v;
        for (int i = 0; i < 3; ++i)
            v[static_cast<std::size_t>(i)] = {uniform_pm1(rng), uniform_pm1(rng)};
        if (norm_sq(v) > 1e-4) return make_state(v);
    }
}

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
    Checker ck;
    const ObservableFixture& fx = opt.fixture;
    const std::array<const Mat3*, 3> mats{&fx.z, &fx.x, &fx.y};
    const std::array<const std::array<Vec3, 3>*, 3> specs{&fx.z_vecs, &fx.x_vecs, &fx.y_vecs};
    const Mat3 two_i = Complex(2.0) * identity<3>();

    // Spectral data: hermiticity, eigen-equations, orthonormality, and
    // reconstruction sum_v lambda_v |v><v| = M.
    {
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) {
            const Mat3& m = *mats[static_cast<std::size_t>(k)];
            worst = std::max(worst, max_abs_diff(m, adjoint(m)));
            Mat3 rebuilt;
            for (int o = 0; o < 3; ++o) {
                const Vec3& v = (*specs[static_cast<std::size_t>(k)])[static_cast<std::size_t>(o)];
                const double ev = outcome_eigenvalue(static_cast<Outcome>(o));
                worst = std::max(worst, max_abs_diff(m * v, Complex(ev) * v));
                rebuilt = rebuilt + Complex(ev) * outer(v);
                for (int o2 = 0; o2 < 3; ++o2) {
                    const Complex ip =
                        inner(v, (*specs[static_cast<std::size_t>(k)])[static_cast<std::size_t>(o2)]);
                    worst = std::max(worst, std::abs(ip - (o == o2 ? Complex(1) : Complex(0))));
                }
            }
            worst = std::max(worst, max_abs_diff(rebuilt, m));
        }
        ck.add("spin observables: spectra reconstruct the matrices", worst, kIdentityTol);
    }

    // Cyclic commutators [S_a, S_b] = i S_c.
    {
        double worst = 0.0;
        worst = std::max(worst, max_abs_diff(commutator(fx.x, fx.y), Complex(0, 1) * fx.z));
        worst = std::max(worst, max_abs_diff(commutator(fx.y, fx.z), Complex(0, 1) * fx.x));
        worst = std::max(worst, max_abs_diff(commutator(fx.z, fx.x), Complex(0, 1) * fx.y));
        ck.add("spin commutators cyclic", worst, kIdentityTol);
    }

    // Casimir invariant for the basic triple and for random orthogonal
    // triples (chi, phi), (chi + pi/2, phi), (pi/2, phi + pi/2).
    {
        double worst =
            max_abs_diff(fx.z * fx.z + fx.x * fx.x + fx.y * fx.y, two_i);
        RandomStream rng = RandomStream(opt.seed).substream("casimir");
        for (int t = 0; t < 100; ++t) {
            const double chi = std::numbers::pi * uniform_pm1(rng);
            const double phi = std::numbers::pi * uniform_pm1(rng);
            const Mat3 u = spin_general(SpinDirection::from_angles(chi, phi)).matrix;
            const Mat3 v =
                spin_general(SpinDirection::from_angles(chi + std::numbers::pi / 2, phi)).matrix;
            const Mat3 w = spin_general(SpinDirection::from_angles(
                               std::numbers::pi / 2, phi + std::numbers::pi / 2))
                               .matrix;
            worst = std::max(worst, max_abs_diff(u * u + v * v + w * w, two_i));
        }
        ck.add("Casimir = 2I", worst, kIdentityTol);
    }

    // The four unbiased states: nine probabilities 1/3, concurrence 1.
    {
        double worst = 0.0;
        for (int k = 0; k < 4; ++k) {
            const QutritState& st = unbiased_state(k);
            for (int a = 0; a < 3; ++a)
                for (int o = 0; o < 3; ++o)
                    worst = std::max(
                        worst,
                        std::abs(born_raw((*specs[static_cast<std::size_t>(a)])[static_cast<std::size_t>(o)],
                                          st.amp) -
                                 1.0 / 3.0));
        }
        ck.add("nine probabilities = 1/3", worst, kIdentityTol);

        double cworst = 0.0;
        for (int k = 0; k < 4; ++k)
            cworst = std::max(cworst, std::abs(concurrence(unbiased_state(k)) - 1.0));
        ck.add("unbiased states maximally entangled", cworst, kIdentityTol);
    }

    // State-testing observable: matrix and square against their closed
    // forms, 0-eigenvector = unbiased state, expectation zero there.
    {
        const Complex z = kZeta;
        const Complex zc = std::conj(kZeta);
        const double is3 = 1.0 / std::numbers::sqrt3;
        Mat3 want;
        want(0, 0) = is3;
        want(0, 1) = -is3 * z;
        want(1, 0) = -is3 * zc;
        want(1, 2) = -is3 * z;
        want(2, 1) = -is3 * zc;
        want(2, 2) = -is3;
        Mat3 want_sq;
        want_sq(0, 0) = 2.0 / 3.0;
        want_sq(0, 1) = -z / 3.0;
        want_sq(0, 2) = z * z / 3.0;
        want_sq(1, 0) = -zc / 3.0;
        want_sq(1, 1) = 2.0 / 3.0;
        want_sq(1, 2) = z / 3.0;
        want_sq(2, 0) = zc * zc / 3.0;
        want_sq(2, 1) = zc / 3.0;
        want_sq(2, 2) = 2.0 / 3.0;
        double worst = max_abs_diff(check_observable().matrix, want);
        worst = std::max(worst, max_abs_diff(check_observable_squared(), want_sq));
        const Vec3& v0 = check_observable().eigenvector(Outcome::Zero);
        worst = std::max(worst, std::abs(std::abs(inner(v0, unbiased_state(0).amp)) - 1.0));
        worst = std::max(worst,
                         std::abs(expectation(unbiased_state(0), check_observable_squared())));
        ck.add("state-testing observable closed form", worst, kIdentityTol);
    }

    // General-direction spectra: eigen-equations hold, the 0-eigenvector is
    // maximally entangled, the +-1-eigenvectors are product states.
    {
        RandomStream rng = RandomStream(opt.seed).substream("directions");
        double worst = 0.0;
        for (int t = 0; t < 100; ++t) {
            const double chi = std::numbers::pi * uniform_pm1(rng);
            const double phi = std::numbers::pi * uniform_pm1(rng);
            const SpinDirection d = SpinDirection::from_angles(chi, phi);
            const SpinObservable s = spin_general(d);
            // Independent route to the matrix: c S_Z + s (cos phi S_X + sin phi S_Y).
            const Mat3 direct = Complex(d.c) * fx.z +
                                Complex(d.s * std::cos(phi)) * fx.x +
                                Complex(d.s * std::sin(phi)) * fx.y;
            worst = std::max(worst, max_abs_diff(s.matrix, direct));
            worst = std::max(
                worst, std::abs(concurrence(make_state(s.eigenvector(Outcome::Zero))) - 1.0));
            worst = std::max(
                worst, std::abs(concurrence(make_state(s.eigenvector(Outcome::Plus)))));
            worst = std::max(
                worst, std::abs(concurrence(make_state(s.eigenvector(Outcome::Minus)))));
        }
        ck.add("general spin spectra and eigenvector entanglement", worst, 1e-10);
    }

    // Born probabilities from spectra match the closed-form expressions.
    {
        RandomStream rng = RandomStream(opt.seed).substream("born");
        const double s2 = std::numbers::sqrt2;
        double worst = 0.0;
        for (int t = 0; t < 1000; ++t) {
            const QutritState st = random_qutrit(rng);
            const Complex a = st.alpha(), b = st.beta(), g = st.gamma();
            const std::array<std::array<double, 3>, 3> closed{{
                {std::norm(a), std::norm(b), std::norm(g)},
                {0.25 * std::norm(a + s2 * b + g), 0.5 * std::norm(a - g),
                 0.25 * std::norm(a - s2 * b + g)},
                {0.25 * std::norm(a - Complex(0, s2) * b - g), 0.5 * std::norm(a + g),
                 0.25 * std::norm(a + Complex(0, s2) * b - g)},
            }};
            for (int ax = 0; ax < 3; ++ax)
                for (int o = 0; o < 3; ++o)
                    worst = std::max(worst,
                                     std::abs(born_raw((*specs[static_cast<std::size_t>(ax)])
                                                           [static_cast<std::size_t>(o)],
                                                       st.amp) -
                                              closed[static_cast<std::size_t>(ax)]
                                                    [static_cast<std::size_t>(o)]));
            // General direction closed forms.
            const double chi = std::numbers::pi * uniform_pm1(rng);
            const double phi = std::numbers::pi * uniform_pm1(rng);
            const SpinDirection d = SpinDirection::from_angles(chi, phi);
            const SpinObservable s = spin_general(d);
            const Complex th = d.theta;
            const Complex thc = std::conj(th);
            const OutcomeDistribution bd = born(st, s);
            worst = std::max(worst, std::abs(bd.p_zero - 0.5 * std::norm(-d.s * th * a +
                                                                         s2 * d.c * b +
                                                                         d.s * thc * g)));
            worst = std::max(
                worst, std::abs(bd.p_plus - 0.25 * std::norm((1 + d.c) * th * a +
                                                             d.s * s2 * b + (1 - d.c) * thc * g)));
            worst = std::max(
                worst, std::abs(bd.p_minus - 0.25 * std::norm((1 - d.c) * th * a -
                                                              d.s * s2 * b + (1 + d.c) * thc * g)));
        }
        ck.add("Born probabilities match closed forms", worst, 1e-10);
    }

    // Symmetrization map algebra on random (not necessarily Hermitian) pairs.
    {
        RandomStream rng = RandomStream(opt.seed).substream("gamma");
        double worst_prod = 0.0;
        double worst_comm = 0.0;
        for (int t = 0; t < 100; ++t) {
            const Mat2 u = random_matrix2(rng);
            const Mat2 v = random_matrix2(rng);
            const Mat4 lhs = gamma_map(u * v);
            const Mat4 rhs = Complex(2.0) * (gamma_map(u) * gamma_map(v)) -
                             Complex(0.5) * (tensor(u, v) + tensor(v, u));
            worst_prod = std::max(worst_prod, max_abs_diff(lhs, rhs));
            worst_comm = std::max(
                worst_comm, max_abs_diff(gamma_map(commutator(u, v)),
                                         Complex(2.0) * commutator(gamma_map(u), gamma_map(v))));
        }
        ck.add("Gamma product rule", worst_prod, kIdentityTol);
        ck.add("Gamma commutator rule", worst_comm, kIdentityTol);
    }

    // Gamma images commute exactly when the originals do.
    {
        RandomStream rng = RandomStream(opt.seed).substream("gamma-commute");
        bool pass = true;
        std::string detail = "commuting and non-commuting pairs classified correctly";
        for (int t = 0; t < 50 && pass; ++t) {
            const Mat2 u = random_hermitian2(rng);
            const Mat2 poly = u * u + Complex(0.5) * u;  // commutes with u
            if (max_abs(commutator(gamma_map(u), gamma_map(poly))) > kIdentityTol) {
                pass = false;
                detail = "commuting pair mapped to non-commuting images";
            }
            const Mat2 v = random_hermitian2(rng);
            const double orig = max_abs(commutator(u, v));
            const double image = max_abs(commutator(gamma_map(u), gamma_map(v)));
            // Gamma([U,V]) = 2[Gamma(U),Gamma(V)] makes the norms comparable.
            if (orig > 1e-6 && image <= kIdentityTol) {
                pass = false;
                detail = "non-commuting pair mapped to commuting images";
            }
        }
        ck.add_flag("Gamma commutes iff originals do", pass, detail);
    }

    // Gamma(A1) and Gamma(A2) restrict to S_Z and S_X.
    {
        double worst = max_abs_diff(sym_restrict(gamma_map(chsh_a1().matrix)), fx.z);
        worst = std::max(worst, max_abs_diff(sym_restrict(gamma_map(chsh_a2().matrix)), fx.x));
        ck.add("Gamma(A1) = S_Z and Gamma(A2) = S_X", worst, kIdentityTol);
    }

    // B observables are the stated combinations of A observables.
    {
        const Mat2 b1 = Complex(kInvSqrt2) * (chsh_a1().matrix + chsh_a2().matrix);
        const Mat2 b2 = Complex(kInvSqrt2) * (chsh_a1().matrix - chsh_a2().matrix);
        double worst = max_abs_diff(b1, chsh_b1().matrix);
        worst = std::max(worst, max_abs_diff(b2, chsh_b2().matrix));
        ck.add("B observables derived from A observables", worst, 1e-15);
    }

    // Tsirelson value on the maximizing states, both forms.
    {
        const Mat4 op = chsh_operator(chsh_a1(), chsh_a2(), chsh_b1(), chsh_b2());
        const Vec4 bell{{kInvSqrt2, 0, 0, kInvSqrt2}};
        double worst = std::abs(expectation4(bell, op) - kTwoSqrt2);
        const Mat4 sym = chsh_symmetrized(chsh_a1(), chsh_a2(), chsh_b1(), chsh_b2());
        const Vec4 embedded = sym_embed(make_state(kInvSqrt2, 0.0, kInvSqrt2));
        worst = std::max(worst, std::abs(expectation4(embedded, sym) - kTwoSqrt2));
        ck.add("CHSH Tsirelson value 2*sqrt2", worst, kIdentityTol);
    }

    // The symmetrized form never exceeds the bound and attains it.
    {
        const Mat4 sym = chsh_symmetrized(chsh_a1(), chsh_a2(), chsh_b1(), chsh_b2());
        const Mat3 restricted = sym_restrict(sym);
        RandomStream rng = RandomStream(opt.seed).substream("chsh-max");
        double sample_max = 0.0;
        for (int t = 0; t < 10000; ++t) {
            const QutritState st = random_qutrit(rng);
            sample_max = std::max(sample_max, expectation(st, restricted));
        }
        const double iterated = max_expectation3(restricted, opt.seed);
        const bool pass =
            sample_max <= kTwoSqrt2 + 1e-9 && std::abs(iterated - kTwoSqrt2) <= 1e-6;
        std::ostringstream detail;
        detail << "sampled max " << sample_max << ", iterated max " << iterated;
        ck.add_flag("CHSH symmetrized max = 2*sqrt2", pass, detail.str());
    }

    // CHSH(U,V) collapses to sqrt2 (U^2 + V^2).
    {
        const Complex s2(std::numbers::sqrt2);
        double worst = max_abs_diff(chsh_spin(fx.z, fx.x), s2 * (fx.z * fx.z + fx.x * fx.x));
        worst = std::max(worst,
                         max_abs_diff(chsh_spin(fx.z, fx.x), s2 * (two_i - fx.y * fx.y)));
        worst = std::max(
            worst, std::abs(expectation(make_state(kInvSqrt2, 0.0, kInvSqrt2),
                                        chsh_spin(fx.z, fx.x)) -
                            kTwoSqrt2));
        RandomStream rng = RandomStream(opt.seed).substream("chsh-spin");
        for (int t = 0; t < 100; ++t) {
            Mat3 u, v;
            for (std::size_t i = 0; i < 9; ++i) {
                u.e[i] = {uniform_pm1(rng), uniform_pm1(rng)};
                v.e[i] = {uniform_pm1(rng), uniform_pm1(rng)};
            }
            u = Complex(0.5) * (u + adjoint(u));
            v = Complex(0.5) * (v + adjoint(v));
            worst = std::max(worst, max_abs_diff(chsh_spin(u, v), s2 * (u * u + v * v)));
        }
        ck.add("CHSH(U,V) = sqrt2 (U^2 + V^2)", worst, kIdentityTol);
    }

    // Product eigenvectors of Gamma(u).
    {
        RandomStream rng = RandomStream(opt.seed).substream("gamma-eigen");
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            const QubitObservable u = random_observable2(rng);
            const Mat4 g = gamma_map(u.matrix);
            for (const auto& [ev, vec] : gamma_eigenpairs(u)) {
                worst = std::max(worst, max_abs_diff(g * vec, Complex(ev) * vec));
                worst = std::max(worst, std::abs(norm(vec) - 1.0));
            }
        }
        // Symmetric combination of the two 0-eigenvectors of Gamma(A2)
        // restricts to the S_X 0-eigenvector.
        const auto pairs = gamma_eigenpairs(chsh_a2());
        const Vec4 symmetric = normalized(pairs[1].vector + pairs[2].vector);
        Vec3 restricted;
        const auto& basis = symmetric_basis();
        for (std::size_t i = 0; i < 3; ++i) restricted[i] = inner(basis[i], symmetric);
        worst = std::max(worst,
                         std::abs(std::abs(inner(restricted, fx.x_vecs[1])) - 1.0));
        ck.add("Gamma product eigenvectors", worst, kIdentityTol);
    }

    // Fidelity: closed form vs the overlap definition, and the equivalence
    // F = 1 <-> <S^2> = 0 through <S^2> = 1 - F.
    {
        RandomStream rng = RandomStream(opt.seed).substream("fidelity");
        double worst = 0.0;
        double worst_s2 = 0.0;
        for (int t = 0; t < 1000; ++t) {
            const QutritState st = random_qutrit(rng);
            const double f = fidelity_to_unbiased(st);
            worst = std::max(
                worst, std::abs(f - std::norm(inner(unbiased_state(0).amp, st.amp))));
            worst_s2 = std::max(
                worst_s2, std::abs(expectation(st, check_observable_squared()) - (1.0 - f)));
        }
        worst = std::max(worst, std::abs(fidelity_to_unbiased(unbiased_state(0)) - 1.0));
        ck.add("fidelity formula matches overlap", worst, kIdentityTol);
        ck.add("check expectation = 1 - fidelity", worst_s2, 1e-10);
    }

    // Positivity of the state test away from the target.
    {
        RandomStream rng = RandomStream(opt.seed).substream("positivity");
        bool pass = std::abs(expectation(unbiased_state(0), check_observable_squared())) <=
                    kIdentityTol;
        std::string detail = "target state at zero, others strictly positive";
        for (int t = 0; t < 10000 && pass; ++t) {
            const QutritState st = random_qutrit(rng);
            const double e = expectation(st, check_observable_squared());
            if (e <= kIdentityTol && fidelity_to_unbiased(st) <= 1.0 - 1e-9) {
                pass = false;
                detail = "found a low-fidelity state with vanishing check expectation";
            }
        }
        ck.add_flag("state test strictly positive off target", pass, detail);
    }

    // Exhaustive grid search for the unbiased states.
    if (opt.run_search) {
        const UnbiasedSearchResult res = search_unbiased(opt.resolution);
        std::ostringstream detail;
        detail << res.cells.size() << " cells in " << res.cluster_count << " clusters";
        if (!res.ok) detail << "; " << res.failure;
        double cworst = 0.0;
        for (const QutritState& st : res.states)
            cworst = std::max(cworst, std::abs(concurrence(st) - 1.0));
        const bool conc_ok = cworst <= 10.0 / opt.resolution;
        if (!conc_ok) detail << "; returned state concurrence off by " << cworst;
        ck.add_flag("unbiased states unique (4 clusters)", res.ok && conc_ok, detail.str());
    }

    return ck.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace qtrng
