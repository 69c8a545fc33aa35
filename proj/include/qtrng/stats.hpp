#pragma once

// Statistical analysis of trit streams and of check outcomes: symbol
// frequencies, plug-in Shannon entropy, chi-square uniformity at fixed
// significance, and a Monte-Carlo harness for the fidelity estimator.

#include <array>
#include <cstdint>

#include "qtrng/generator.hpp"

namespace qtrng {

// Chi-square critical value, 2 degrees of freedom, 1% significance.
inline constexpr double kChi2Critical = 9.21;

struct StreamStats {
    std::uint64_t n = 0;
    std::array<std::uint64_t, 3> counts{0, 0, 0};
    std::array<double, 3> frequencies{0.0, 0.0, 0.0};
    double entropy_bits = 0.0;  // plug-in Shannon entropy, bits per trit
    double chi2 = 0.0;          // sum (c_i - n/3)^2 / (n/3)
    bool uniformity_pass = false;
};

// Throws std::invalid_argument on an empty stream.
StreamStats analyze(const TritStream& stream);

// Runs `trials` independent campaigns of required_check_count(epsilon, delta)
// Bernoulli(fidelity) checks each (one substream per trial) and returns the
// fraction whose estimate Y missed fidelity by more than epsilon.
double validate_estimator(double fidelity, double epsilon, double delta,
                          std::uint64_t trials, const RandomStream& rng);

}  // namespace qtrng
