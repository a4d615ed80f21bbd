#include "infoprice/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infoprice/error.hpp"

namespace infoprice {

Belief::Belief(double p0) : p0_(p0) {
    if (!(p0 >= 0.0 && p0 <= 1.0)) {
        throw DomainError("belief must lie in [0, 1], got " + std::to_string(p0));
    }
}

GameConfig::GameConfig(double tau, Belief seller_belief) : tau_(tau), seller_belief_(seller_belief) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw DomainError("competition intensity tau must be finite and >= 0, got " + std::to_string(tau));
    }
}

double utility(Action self, Action other, State x, double tau) noexcept {
    const double own = to_int(self) == to_int(x) ? 1.0 : 0.0;
    const double rival = to_int(other) == to_int(x) ? 1.0 : 0.0;
    return own - tau * rival;
}

Belief posterior_update(Belief prior, double lik0, double lik1) {
    if (!(lik0 >= 0.0 && lik0 <= 1.0 && lik1 >= 0.0 && lik1 <= 1.0)) {
        throw DomainError("likelihoods must lie in [0, 1]");
    }
    const double joint0 = lik0 * prior.p0();
    const double norm = joint0 + lik1 * prior.p1();
    if (norm <= 0.0) {
        throw ZeroEvidenceError("evidence has zero probability under the prior");
    }
    // Clamp guards the last ulp; the ratio is in [0, 1] mathematically.
    return Belief(std::clamp(joint0 / norm, 0.0, 1.0));
}

Action strategy(Belief z) noexcept { return z.p0() < 0.5 ? Action::one : Action::zero; }

double no_info_value(Belief z) noexcept { return std::max(z.p0(), z.p1()); }

}  // namespace infoprice
