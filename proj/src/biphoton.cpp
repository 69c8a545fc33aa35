#include "qtrng/biphoton.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtrng {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

}  // namespace

QubitObservable::QubitObservable(Mat2 m) : matrix(m) {
    require_finite(matrix, "QubitObservable");
    if (!is_hermitian(matrix))
        throw std::invalid_argument("QubitObservable: matrix not Hermitian");
    if (max_abs_diff(matrix * matrix, identity<2>()) > kIdentityTol)
        throw std::invalid_argument("QubitObservable: matrix does not square to identity");
}

const QubitObservable& chsh_a1() {
    static const QubitObservable a1(Mat2{{1, 0, 0, -1}});
    return a1;
}

const QubitObservable& chsh_a2() {
    static const QubitObservable a2(Mat2{{0, 1, 1, 0}});
    return a2;
}

const QubitObservable& chsh_b1() {
    static const QubitObservable b1(
        Mat2{{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2}});
    return b1;
}

const QubitObservable& chsh_b2() {
    static const QubitObservable b2(
        Mat2{{kInvSqrt2, -kInvSqrt2, -kInvSqrt2, -kInvSqrt2}});
    return b2;
}

Mat4 gamma_map(const Mat2& u) {
    const Mat2 i2 = identity<2>();
    return Complex(0.5) * (tensor(u, i2) + tensor(i2, u));
}

const Mat4& swap_operator() {
    static const Mat4 s = [] {
        Mat4 m;
        m(0, 0) = 1;
        m(1, 2) = 1;
        m(2, 1) = 1;
        m(3, 3) = 1;
        return m;
    }();
    return s;
}

const Vec4& singlet_state() {
    static const Vec4 s{{0, kInvSqrt2, -kInvSqrt2, 0}};
    return s;
}

const std::array<Vec4, 3>& symmetric_basis() {
    static const std::array<Vec4, 3> basis = {
        Vec4{{1, 0, 0, 0}},
        Vec4{{0, kInvSqrt2, kInvSqrt2, 0}},
        Vec4{{0, 0, 0, 1}}};
    return basis;
}

Vec4 sym_embed(const QutritState& q) { return sym_embed(q.amp); }

Vec4 sym_embed(const Vec3& amplitudes) {
    const auto& basis = symmetric_basis();
    Vec4 r;
    for (int i = 0; i < 3; ++i)
        r = r + amplitudes[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(i)];
    return r;
}

Mat3 sym_restrict(const Mat4& op) {
    if (max_abs(commutator(op, swap_operator())) > kIdentityTol)
        throw std::domain_error("sym_restrict: operator mixes singlet and symmetric subspace");
    const auto& basis = symmetric_basis();
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i) {
        const Vec4 col = op * basis[i];
        for (std::size_t j = 0; j < 3; ++j) r(j, i) = inner(basis[j], col);
    }
    return r;
}

Mat4 chsh_operator(const QubitObservable& a1, const QubitObservable& a2,
                   const QubitObservable& b1, const QubitObservable& b2) {
    return tensor(a1.matrix, b1.matrix) + tensor(a1.matrix, b2.matrix) +
           tensor(a2.matrix, b1.matrix) - tensor(a2.matrix, b2.matrix);
}

Mat4 chsh_symmetrized(const QubitObservable& a1, const QubitObservable& a2,
                      const QubitObservable& b1, const QubitObservable& b2) {
    const Mat4 ga1 = gamma_map(a1.matrix);
    const Mat4 ga2 = gamma_map(a2.matrix);
    const Mat4 gb1 = gamma_map(b1.matrix);
    const Mat4 gb2 = gamma_map(b2.matrix);
    return ga1 * gb1 + ga1 * gb2 + ga2 * gb1 - ga2 * gb2;
}

Mat3 chsh_spin(const Mat3& u, const Mat3& v) {
    if (!is_hermitian(u) || !is_hermitian(v))
        throw std::invalid_argument("chsh_spin: inputs must be Hermitian");
    const Complex inv(kInvSqrt2);
    const Mat3 sum = inv * (u + v);
    const Mat3 diff = inv * (u - v);
    return u * sum + u * diff + v * sum - v * diff;
}

std::array<GammaEigenpair, 4> gamma_eigenpairs(const QubitObservable& u) {
    const Mat2& m = u.matrix;
    const Mat2 i2 = identity<2>();

    Vec2 vplus, vminus;
    if (max_abs_diff(m, i2) <= kIdentityTol) {
        vplus = Vec2{{1, 0}};
        vminus = Vec2{{0, 1}};
        // Degenerate +identity: both columns are +1-eigenvectors.
        const Vec4 p00 = tensor(vplus, vplus);
        const Vec4 p01 = tensor(vplus, vminus);
        const Vec4 p10 = tensor(vminus, vplus);
        const Vec4 p11 = tensor(vminus, vminus);
        return {GammaEigenpair{1.0, p00}, GammaEigenpair{1.0, p01},
                GammaEigenpair{1.0, p10}, GammaEigenpair{1.0, p11}};
    }
    if (max_abs_diff(m, Complex(-1.0) * i2) <= kIdentityTol) {
        vplus = Vec2{{1, 0}};
        vminus = Vec2{{0, 1}};
        const Vec4 p00 = tensor(vplus, vplus);
        const Vec4 p01 = tensor(vplus, vminus);
        const Vec4 p10 = tensor(vminus, vplus);
        const Vec4 p11 = tensor(vminus, vminus);
        return {GammaEigenpair{-1.0, p00}, GammaEigenpair{-1.0, p01},
                GammaEigenpair{-1.0, p10}, GammaEigenpair{-1.0, p11}};
    }

    // Non-degenerate: spectrum is {+1, -1}. (M + I)/2 and (M - I)/2 project
    // onto the +-1 eigenspaces; take the larger column of each.
    const Mat2 pplus = Complex(0.5) * (m + i2);
    const Mat2 pminus = Complex(0.5) * (m - i2);
    auto biggest_column = [](const Mat2& p) {
        const Vec2 c0{{p(0, 0), p(1, 0)}};
        const Vec2 c1{{p(0, 1), p(1, 1)}};
        return normalized(norm_sq(c0) >= norm_sq(c1) ? c0 : c1);
    };
    vplus = biggest_column(pplus);
    vminus = biggest_column(pminus);

    return {GammaEigenpair{1.0, tensor(vplus, vplus)},
            GammaEigenpair{0.0, tensor(vplus, vminus)},
            GammaEigenpair{0.0, tensor(vminus, vplus)},
            GammaEigenpair{-1.0, tensor(vminus, vminus)}};
}

double expectation4(const Vec4& psi, const Mat4& op) {
    if (!is_hermitian(op)) throw std::invalid_argument("expectation4: matrix not Hermitian");
    return sandwich(psi, op).real();
}

}  // namespace qtrng
