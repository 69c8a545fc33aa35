#pragma once

// Born-rule measurement sampling with deterministic seeded randomness and
// the qutrit source models (ideal / fixed perturbed state / weighted
// ensemble of pure states).

#include <utility>
#include <vector>

#include "qtrng/qutrit.hpp"
#include "qtrng/random.hpp"

namespace qtrng {

class SourceModel {
  public:
    // Emits unbiased_state(0) every time.
    static SourceModel ideal();
    static SourceModel fixed(QutritState state);
    // Weights must be non-negative and sum to 1 within 1e-12.
    static SourceModel ensemble(std::vector<std::pair<double, QutritState>> components);

    const std::vector<std::pair<double, QutritState>>& components() const {
        return components_;
    }

    // Single-component sources consume no randomness when drawn from.
    bool consumes_randomness() const { return components_.size() > 1; }

    // Sum of w_j * fidelity_to_unbiased(psi_j).
    double mixture_fidelity() const;

  private:
    explicit SourceModel(std::vector<std::pair<double, QutritState>> components);

    std::vector<std::pair<double, QutritState>> components_;
};

QutritState draw_state(const SourceModel& src, RandomStream& rng);

struct MeasurementRecord {
    int outcome = 0;  // trit: +1 -> 0, 0 -> 1, -1 -> 2
    BasisLabel basis = BasisLabel::Z;
    double probability_used = 0.0;
};

// One uniform draw, cumulative comparison in fixed order (+1, 0, -1).
Outcome sample_outcome(const OutcomeDistribution& dist, double u);

MeasurementRecord measure(const QutritState& state, const SpinObservable& obs,
                          RandomStream& rng);

}  // namespace qtrng
