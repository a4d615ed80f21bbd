#pragma once

#include <cstdint>

namespace infoprice {

/// A probability of the state X = 0. Buyer types, the seller's belief, and
/// message posteriors all share this representation.
class Belief {
public:
    /// Throws DomainError unless 0 <= p0 <= 1.
    explicit Belief(double p0);

    [[nodiscard]] double p0() const noexcept { return p0_; }
    [[nodiscard]] double p1() const noexcept { return 1.0 - p0_; }

    /// The same belief with the state labels swapped.
    [[nodiscard]] Belief reflected() const noexcept { return Belief(1.0 - p0_); }

    friend bool operator==(Belief, Belief) = default;

private:
    double p0_;
};

enum class Action : std::uint8_t { zero = 0, one = 1 };
enum class State : std::uint8_t { zero = 0, one = 1 };

constexpr int to_int(Action a) noexcept { return static_cast<int>(a); }
constexpr int to_int(State x) noexcept { return static_cast<int>(x); }

/// Competition intensity and the seller's own belief. Every cost and menu
/// computation is parameterized by one of these.
class GameConfig {
public:
    /// Throws DomainError unless tau >= 0 (finite).
    GameConfig(double tau, Belief seller_belief);

    [[nodiscard]] double tau() const noexcept { return tau_; }
    [[nodiscard]] Belief seller_belief() const noexcept { return seller_belief_; }
    [[nodiscard]] double v_s() const noexcept { return seller_belief_.p0(); }

    [[nodiscard]] GameConfig with_tau(double tau) const { return {tau, seller_belief_}; }
    [[nodiscard]] GameConfig with_seller_belief(Belief v) const { return {tau_, v}; }

private:
    double tau_;
    Belief seller_belief_;
};

/// Ex-post payoff 1{a_self = x} - tau * 1{a_other = x}.
[[nodiscard]] double utility(Action self, Action other, State x, double tau) noexcept;

/// Bayes update of P(X=0) after evidence with likelihoods P(e|X=0)=lik0 and
/// P(e|X=1)=lik1. Throws ZeroEvidenceError when the evidence has zero
/// probability under the prior.
[[nodiscard]] Belief posterior_update(Belief prior, double lik0, double lik1);

/// Dominant strategy: play 1 iff P(X=0) < 1/2. A tie plays 0.
[[nodiscard]] Action strategy(Belief z) noexcept;

/// Expected own-action payoff when acting on z alone: max(z, 1-z).
[[nodiscard]] double no_info_value(Belief z) noexcept;

}  // namespace infoprice
