#include "qtrng/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace qtrng {

SourceModel::SourceModel(std::vector<std::pair<double, QutritState>> components)
    : components_(std::move(components)) {
    if (components_.empty())
        throw std::invalid_argument("SourceModel: at least one component required");
    double total = 0.0;
    for (const auto& [w, st] : components_) {
        if (!std::isfinite(w) || w < 0.0)
            throw std::invalid_argument("SourceModel: weights must be non-negative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("SourceModel: weights must sum to 1");
}

SourceModel SourceModel::ideal() { return fixed(unbiased_state(0)); }

SourceModel SourceModel::fixed(QutritState state) {
    return SourceModel({{1.0, std::move(state)}});
}

SourceModel SourceModel::ensemble(std::vector<std::pair<double, QutritState>> components) {
    return SourceModel(std::move(components));
}

double SourceModel::mixture_fidelity() const {
    double f = 0.0;
    for (const auto& [w, st] : components_) f += w * fidelity_to_unbiased(st);
    return f;
}

QutritState draw_state(const SourceModel& src, RandomStream& rng) {
    const auto& comps = src.components();
    if (comps.size() == 1) return comps.front().second;
    const double u = rng.next_unit();
    double cum = 0.0;
    for (const auto& [w, st] : comps) {
        cum += w;
        if (u < cum) return st;
    }
    return comps.back().second;  // u landed in the 1e-12 rounding slack
}

Outcome sample_outcome(const OutcomeDistribution& dist, double u) {
    if (u < dist.p_plus) return Outcome::Plus;
    if (u < dist.p_plus + dist.p_zero) return Outcome::Zero;
    return Outcome::Minus;
}

MeasurementRecord measure(const QutritState& state, const SpinObservable& obs,
                          RandomStream& rng) {
    const OutcomeDistribution dist = born(state, obs);
    const Outcome v = sample_outcome(dist, rng.next_unit());
    MeasurementRecord rec;
    rec.outcome = outcome_trit(v);
    rec.basis = obs.label;
    rec.probability_used = dist.at(v);
    return rec;
}

}  // namespace qtrng
