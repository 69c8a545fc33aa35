#pragma once

#include <string>

#include "qtrng/linalg.hpp"
#include "qtrng/qutrit.hpp"
#include "qtrng/random.hpp"

namespace test_helpers {

using qtrng::Complex;

// Random state/matrix generators for property tests: entries uniform on [-1,1].
inline double pm1(qtrng::RandomStream& rng) { return 2.0 * rng.next_unit() - 1.0; }

template <std::size_t N>
qtrng::Mat<N> random_matrix(qtrng::RandomStream& rng) {
    qtrng::Mat<N> m;
    for (std::size_t i = 0; i < N * N; ++i) m.e[i] = {pm1(rng), pm1(rng)};
    return m;
}

template <std::size_t N>
qtrng::Mat<N> random_hermitian(qtrng::RandomStream& rng) {
    const auto m = random_matrix<N>(rng);
    return Complex(0.5) * (m + qtrng::adjoint(m));
}

template <std::size_t N>
qtrng::Vec<N> random_vector(qtrng::RandomStream& rng) {
    qtrng::Vec<N> v;
    for (std::size_t i = 0; i < N; ++i) v[i] = {pm1(rng), pm1(rng)};
    return v;
}

inline qtrng::QutritState random_state(qtrng::RandomStream& rng) {
    for (;;) {
        const auto v = random_vector<3>(rng);
        if (qtrng::norm_sq(v) > 1e-4) return qtrng::make_state(v);
    }
}

}  // namespace test_helpers
