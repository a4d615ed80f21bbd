#include "infoprice/rules.hpp"

#include <algorithm>
#include <string>

#include "infoprice/error.hpp"

namespace infoprice {

Informativeness::Informativeness(double value) : value_(value) {
    if (!(value >= -1.0 && value <= 1.0)) {
        throw DomainError("informativeness must lie in [-1, 1], got " + std::to_string(value));
    }
}

DirectRule::DirectRule(double i0, double i1) : i0_(i0), i1_(i1), informativeness_(i0 - i1) {
    if (!(i0 >= 0.0 && i0 <= 1.0 && i1 >= 0.0 && i1 <= 1.0)) {
        throw DomainError("rule likelihoods must lie in [0, 1]");
    }
    if (i0 + i1 < 1.0) {
        throw DomainError("direct rule requires i0 + i1 >= 1");
    }
}

double DirectRule::likelihood(Message m, State x) const noexcept {
    if (x == State::zero) {
        return m == Message::m0 ? i0_ : 1.0 - i0_;
    }
    return m == Message::m1 ? i1_ : 1.0 - i1_;
}

DirectRule concentrate(Informativeness I) noexcept {
    const double v = I.value();
    if (v >= 0.0) {
        return {1.0, 1.0 - v, v};
    }
    return {1.0 + v, 1.0, v};
}

Informativeness informativeness(const DirectRule& rule) { return Informativeness(rule.informativeness_); }

MessageMarginal message_marginal(const DirectRule& rule, Belief belief) noexcept {
    const double m1 = belief.p0() * (1.0 - rule.i0()) + belief.p1() * rule.i1();
    return {1.0 - m1, m1};
}

Belief message_posterior(const DirectRule& rule, Belief belief, Message m) {
    return posterior_update(belief, rule.likelihood(m, State::zero), rule.likelihood(m, State::one));
}

FeasibleBand feasible_band(Belief v_b) noexcept {
    const double v = v_b.p0();
    if (v <= 0.5) {
        return {-1.0, v / (1.0 - v)};
    }
    return {-(1.0 - v) / v, 1.0};
}

double gain(Informativeness I, Belief v_b) noexcept {
    const double i = I.value();
    const double revealed = i >= 0.0 ? 1.0 : 0.0;
    return 1.0 - no_info_value(v_b) - i * (revealed - v_b.p0());
}

double externality_cost(Informativeness I, const GameConfig& cfg) noexcept {
    const double v_s = cfg.v_s();
    const auto marginal = message_marginal(concentrate(I), cfg.seller_belief());
    return cfg.tau() * (v_s * marginal.m0 + (1.0 - v_s) * marginal.m1);
}

bool obedience_check(const DirectRule& rule, Belief v_b) noexcept {
    const double v = v_b.p0();
    // Unnormalized posteriors; both sides share the message's marginal.
    const bool m0_obeyed = rule.i0() * v >= (1.0 - rule.i1()) * (1.0 - v);
    const bool m1_obeyed = (1.0 - rule.i0()) * v <= rule.i1() * (1.0 - v);
    return m0_obeyed && m1_obeyed;
}

}  // namespace infoprice
