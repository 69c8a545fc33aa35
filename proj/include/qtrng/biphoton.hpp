#pragma once

// Symmetric two-qubit (biphoton) representation of qutrits: the
// symmetrization map U -> (U x I + I x U)/2, the embedding of qutrits into
// the symmetric subspace, and the CHSH machinery in its tensor, symmetrized
// and spin forms. Two-qubit basis order is |00>, |01>, |10>, |11> throughout.

#include <array>

#include "qtrng/linalg.hpp"
#include "qtrng/qutrit.hpp"

namespace qtrng {

// A +-1-valued qubit observable: Hermitian with M^2 = I (both at 1e-12).
struct QubitObservable {
    Mat2 matrix;

    explicit QubitObservable(Mat2 m);
};

// The standard CHSH measurement set:
//   A1 = diag(1,-1), A2 = offdiag(1,1), B1 = (A1+A2)/sqrt2, B2 = (A1-A2)/sqrt2.
const QubitObservable& chsh_a1();
const QubitObservable& chsh_a2();
const QubitObservable& chsh_b1();
const QubitObservable& chsh_b2();

// (U x I + I x U)/2; commutes with the qubit swap for every U.
Mat4 gamma_map(const Mat2& u);

// Permutation of the two qubits.
const Mat4& swap_operator();

// The antisymmetric state (|01> - |10>)/sqrt2.
const Vec4& singlet_state();

// Columns of the symmetric-subspace isometry: |00>, (|01>+|10>)/sqrt2, |11>,
// identified with |+>, |0>, |->.
const std::array<Vec4, 3>& symmetric_basis();

// Isometry applied to a qutrit state / its amplitude vector.
Vec4 sym_embed(const QutritState& q);
Vec4 sym_embed(const Vec3& amplitudes);

// isometry^dagger * op * isometry. Requires op to commute with the qubit
// swap (checked at 1e-12); throws std::domain_error otherwise.
Mat3 sym_restrict(const Mat4& op);

// A1 x B1 + A1 x B2 + A2 x B1 - A2 x B2.
Mat4 chsh_operator(const QubitObservable& a1, const QubitObservable& a2,
                   const QubitObservable& b1, const QubitObservable& b2);

// Gamma(A1)Gamma(B1) + Gamma(A1)Gamma(B2) + Gamma(A2)Gamma(B1) - Gamma(A2)Gamma(B2);
// operator products, not tensor products, exactly as the symmetric form reads.
Mat4 chsh_symmetrized(const QubitObservable& a1, const QubitObservable& a2,
                      const QubitObservable& b1, const QubitObservable& b2);

// U(U+V)/sqrt2 + U(U-V)/sqrt2 + V(U+V)/sqrt2 - V(U-V)/sqrt2, which collapses
// to sqrt2*(U^2 + V^2); the left-hand combination is what gets evaluated.
Mat3 chsh_spin(const Mat3& u, const Mat3& v);

struct GammaEigenpair {
    double eigenvalue;  // (eps + eta)/2 for product vectors v_eps x v_eta
    Vec4 vector;
};

// The four product eigenvectors of gamma_map(u) for a +-1-valued observable
// u, ordered by eigenvalue (+1, 0, 0, -1 in the non-degenerate case).
std::array<GammaEigenpair, 4> gamma_eigenpairs(const QubitObservable& u);

// <psi|op|psi> for Hermitian op; throws on non-Hermitian input.
double expectation4(const Vec4& psi, const Mat4& op);

}  // namespace qtrng
