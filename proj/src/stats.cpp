#include "qtrng/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qtrng {

StreamStats analyze(const TritStream& stream) {
    if (stream.trits.empty()) throw std::invalid_argument("analyze: empty stream");
    StreamStats st;
    st.n = stream.trits.size();
    for (const std::uint8_t t : stream.trits) {
        if (t > 2) throw std::invalid_argument("analyze: trit out of range");
        ++st.counts[t];
    }
    const double n = static_cast<double>(st.n);
    const double expected = n / 3.0;
    for (int i = 0; i < 3; ++i) {
        const double c = static_cast<double>(st.counts[static_cast<std::size_t>(i)]);
        st.frequencies[static_cast<std::size_t>(i)] = c / n;
        if (c > 0.0) st.entropy_bits -= (c / n) * std::log2(c / n);
        const double d = c - expected;
        st.chi2 += d * d / expected;
    }
    st.uniformity_pass = st.chi2 < kChi2Critical;
    return st;
}

double validate_estimator(double fidelity, double epsilon, double delta,
                          std::uint64_t trials, const RandomStream& rng) {
    if (fidelity < 0.0 || fidelity > 1.0)
        throw std::invalid_argument("validate_estimator: fidelity must be in [0, 1]");
    if (trials < 100) throw std::invalid_argument("validate_estimator: trials must be >= 100");
    const std::uint64_t checks = required_check_count(epsilon, delta);
    const RandomStream campaigns = rng.substream("trial");
    std::uint64_t failures = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RandomStream draw = campaigns.block(t);
        std::uint64_t zeros = 0;
        for (std::uint64_t i = 0; i < checks; ++i)
            if (draw.next_unit() < fidelity) ++zeros;
        const double y = static_cast<double>(zeros) / static_cast<double>(checks);
        if (std::abs(y - fidelity) > epsilon) ++failures;
    }
    return static_cast<double>(failures) / static_cast<double>(trials);
}

}  // namespace qtrng
