#pragma once

// The generation protocol: consume public trits, interleave basic-direction
// generation measurements with fidelity checks on the state-testing
// observable, and produce an output trit stream plus a Chebyshev-certified
// session report.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qtrng/sampler.hpp"

namespace qtrng {

struct TritStream {
    std::vector<std::uint8_t> trits;  // values in {0, 1, 2}

    std::size_t size() const { return trits.size(); }
};

// Checks all values are in range; throws std::invalid_argument otherwise.
void validate_trits(const TritStream& s);

struct GeneratorConfig {
    double epsilon = 0.05;          // estimation precision, in (0, 0.5]
    double delta = 0.1;             // failure probability, in (0, 1)
    double check_rate = 0.1;        // fraction of emissions diverted to checks, in [0, 1)
    std::uint64_t target_output = 0;
    double fidelity_threshold = 1.0;  // in (0, 1]; accept iff Y >= threshold - epsilon

    void validate() const;  // throws std::invalid_argument on out-of-range fields
};

enum class Verdict { Accept, Reject, Inconclusive };

std::string_view verdict_name(Verdict v);

struct SessionReport {
    std::uint64_t emitted = 0;           // output trits produced
    std::uint64_t checks = 0;            // fidelity checks performed
    std::uint64_t check_zero_count = 0;  // checks that issued 0
    std::uint64_t required_checks = 0;   // ceil(1/(4 eps^2 delta))
    double fidelity_estimate = 0.0;      // Y = check_zero_count / checks
    Verdict verdict = Verdict::Inconclusive;
    GeneratorConfig config;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> public_seed;  // set when public trits were seeded
};

struct SessionResult {
    TritStream output;
    SessionReport report;
};

// ceil(1/(4 epsilon^2 delta)) checks suffice for |Y - F| < epsilon with
// failure probability at most delta. Requires epsilon in (0, 0.5] and
// delta in (0, 1]; delta = 1 is the degenerate no-guarantee boundary.
std::uint64_t required_check_count(double epsilon, double delta);

// Chebyshev bound min(1, F(1-F)/(checks * epsilon^2)) on prob{|Y-F| >= eps}.
double chebyshev_failure_bound(double fidelity, std::uint64_t checks, double epsilon);

// Runs one session. Each emission is diverted to a fidelity check with
// probability check_rate (dedicated substream); generation emissions consume
// the next public trit r and measure S_Z/S_X/S_Y for r = 0/1/2; checks
// measure the state-testing direction and consume no public trit. The
// session ends when target_output trits are emitted and checks >=
// required_checks, or when the public stream is exhausted. Verdict:
// Inconclusive iff checks < required_checks, else Accept iff
// Y >= fidelity_threshold - epsilon.
//
// Randomness is consumed from block substreams ("check-selection", "source",
// "measurement", one lane per 8192 emissions), so results are bit-identical
// for any `jobs`; jobs > 1 measures blocks in parallel and merges by block
// index.
SessionResult run_session(const SourceModel& src, const TritStream& public_trits,
                          const GeneratorConfig& cfg, const RandomStream& rng,
                          unsigned jobs = 1);

}  // namespace qtrng
