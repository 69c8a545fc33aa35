#include "qtrng/generator.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace qtrng {

namespace {

constexpr std::uint64_t kEmissionBlock = 8192;

enum class Role : std::uint8_t { Check, Generate, Discard };

struct BlockOutcome {
    std::vector<std::uint8_t> output;
    std::uint64_t checks = 0;
    std::uint64_t check_zeros = 0;
};

struct SourceTables {
    // Born distributions per component, for S_Z, S_X, S_Y and the check
    // observable (indexed 0..3 with 3 = check).
    std::vector<std::array<OutcomeDistribution, 4>> dist;
    std::vector<double> weights;
    bool sample_component;
};

SourceTables precompute(const SourceModel& src) {
    SourceTables t;
    t.sample_component = src.consumes_randomness();
    for (const auto& [w, st] : src.components()) {
        t.weights.push_back(w);
        t.dist.push_back({born(st, spin_basic(BasisLabel::Z)),
                          born(st, spin_basic(BasisLabel::X)),
                          born(st, spin_basic(BasisLabel::Y)),
                          born(st, check_observable())});
    }
    return t;
}

// Must consume randomness exactly like draw_state().
std::size_t sample_component(const SourceTables& t, RandomStream& rng) {
    if (!t.sample_component) return 0;
    const double u = rng.next_unit();
    double cum = 0.0;
    for (std::size_t j = 0; j < t.weights.size(); ++j) {
        cum += t.weights[j];
        if (u < cum) return j;
    }
    return t.weights.size() - 1;
}

BlockOutcome measure_block(const SourceTables& tables, const RandomStream& rng,
                           std::uint64_t block_index, const Role* roles, std::size_t count,
                           const TritStream& public_trits, std::uint64_t public_offset) {
    RandomStream source = rng.substream("source").block(block_index);
    RandomStream meas = rng.substream("measurement").block(block_index);
    BlockOutcome out;
    std::uint64_t next_public = public_offset;
    for (std::size_t i = 0; i < count; ++i) {
        if (roles[i] == Role::Discard) continue;
        const std::size_t comp = sample_component(tables, source);
        const double u = meas.next_unit();
        if (roles[i] == Role::Check) {
            const Outcome v = sample_outcome(tables.dist[comp][3], u);
            ++out.checks;
            if (v == Outcome::Zero) ++out.check_zeros;
        } else {
            const int r = public_trits.trits[next_public++];
            const Outcome v = sample_outcome(tables.dist[comp][static_cast<std::size_t>(r)], u);
            out.output.push_back(static_cast<std::uint8_t>(outcome_trit(v)));
        }
    }
    return out;
}

}  // namespace

void validate_trits(const TritStream& s) {
    for (const std::uint8_t t : s.trits)
        if (t > 2) throw std::invalid_argument("TritStream: value out of range");
}

void GeneratorConfig::validate() const {
    if (!(epsilon > 0.0) || epsilon > 0.5)
        throw std::invalid_argument("GeneratorConfig: epsilon must be in (0, 0.5]");
    if (!(delta > 0.0) || delta >= 1.0)
        throw std::invalid_argument("GeneratorConfig: delta must be in (0, 1)");
    if (!(check_rate >= 0.0) || check_rate >= 1.0)
        throw std::invalid_argument("GeneratorConfig: check_rate must be in [0, 1)");
    if (!(fidelity_threshold > 0.0) || fidelity_threshold > 1.0)
        throw std::invalid_argument("GeneratorConfig: fidelity_threshold must be in (0, 1]");
}

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Accept: return "Accept";
        case Verdict::Reject: return "Reject";
        default: return "Inconclusive";
    }
}

std::uint64_t required_check_count(double epsilon, double delta) {
    if (!(epsilon > 0.0) || epsilon > 0.5)
        throw std::invalid_argument("required_check_count: epsilon must be in (0, 0.5]");
    if (!(delta > 0.0) || delta > 1.0)
        throw std::invalid_argument("required_check_count: delta must be in (0, 1]");
    return static_cast<std::uint64_t>(std::ceil(1.0 / (4.0 * epsilon * epsilon * delta)));
}

double chebyshev_failure_bound(double fidelity, std::uint64_t checks, double epsilon) {
    if (fidelity < 0.0 || fidelity > 1.0)
        throw std::invalid_argument("chebyshev_failure_bound: fidelity must be in [0, 1]");
    if (checks < 1) throw std::invalid_argument("chebyshev_failure_bound: checks must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("chebyshev_failure_bound: epsilon must be > 0");
    const double bound =
        fidelity * (1.0 - fidelity) / (static_cast<double>(checks) * epsilon * epsilon);
    return std::min(1.0, bound);
}

SessionResult run_session(const SourceModel& src, const TritStream& public_trits,
                          const GeneratorConfig& cfg, const RandomStream& rng,
                          unsigned jobs) {
    cfg.validate();
    validate_trits(public_trits);
    if (jobs == 0) jobs = 1;

    const std::uint64_t required = required_check_count(cfg.epsilon, cfg.delta);

    // Pass 1: role decisions. Depends only on the check-selection substream
    // and on the running generation count, so output prefixes are stable
    // under any extension of the session.
    std::vector<std::vector<Role>> roles;      // per block
    std::vector<std::uint64_t> block_public;   // public offset per block
    std::uint64_t generated = 0;
    std::uint64_t checks = 0;
    bool done = false;
    const RandomStream selector = rng.substream("check-selection");
    for (std::uint64_t b = 0; !done; ++b) {
        RandomStream sel = selector.block(b);
        roles.emplace_back();
        roles.back().reserve(kEmissionBlock);
        block_public.push_back(generated);
        for (std::uint64_t i = 0; i < kEmissionBlock; ++i) {
            const bool is_check = sel.next_unit() < cfg.check_rate;
            if (is_check) {
                roles.back().push_back(Role::Check);
                ++checks;
            } else if (generated < cfg.target_output) {
                if (generated >= public_trits.size()) {
                    done = true;  // public stream exhausted; no setting available
                    break;
                }
                roles.back().push_back(Role::Generate);
                ++generated;
            } else {
                roles.back().push_back(Role::Discard);
            }
            if (generated == cfg.target_output) {
                if (checks >= required) {
                    done = true;
                    break;
                }
                if (cfg.check_rate == 0.0) {
                    done = true;  // checks can never accumulate
                    break;
                }
            }
        }
    }

    // Pass 2: measurements, independent per block given the roles.
    const SourceTables tables = precompute(src);
    std::vector<BlockOutcome> outcomes(roles.size());
    if (jobs <= 1) {
        for (std::size_t b = 0; b < roles.size(); ++b)
            outcomes[b] = measure_block(tables, rng, b, roles[b].data(), roles[b].size(),
                                        public_trits, block_public[b]);
    } else {
        std::vector<std::future<BlockOutcome>> futures;
        for (std::size_t b = 0; b < roles.size(); ++b) {
            futures.push_back(std::async(std::launch::async, [&, b] {
                return measure_block(tables, rng, b, roles[b].data(), roles[b].size(),
                                     public_trits, block_public[b]);
            }));
            if (futures.size() == jobs || b + 1 == roles.size()) {
                for (std::size_t f = 0; f < futures.size(); ++f)
                    outcomes[b + 1 - futures.size() + f] = futures[f].get();
                futures.clear();
            }
        }
    }

    SessionResult result;
    result.report.config = cfg;
    result.report.required_checks = required;
    result.report.seed = rng.seed();
    for (const BlockOutcome& o : outcomes) {
        result.output.trits.insert(result.output.trits.end(), o.output.begin(), o.output.end());
        result.report.checks += o.checks;
        result.report.check_zero_count += o.check_zeros;
    }
    result.report.emitted = result.output.size();
    if (result.report.checks > 0)
        result.report.fidelity_estimate = static_cast<double>(result.report.check_zero_count) /
                                          static_cast<double>(result.report.checks);
    if (result.report.checks < required)
        result.report.verdict = Verdict::Inconclusive;
    else
        result.report.verdict =
            result.report.fidelity_estimate >= cfg.fidelity_threshold - cfg.epsilon
                ? Verdict::Accept
                : Verdict::Reject;
    return result;
}

}  // namespace qtrng
