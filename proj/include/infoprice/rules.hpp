#pragma once

#include <cstdint>

#include "infoprice/game.hpp"

namespace infoprice {

/// Scalar I = P(m0|X=0) - P(m1|X=1) in [-1, 1] characterizing a concentrated
/// direct rule. I = 0 reveals the state; I = +-1 reveals nothing.
class Informativeness {
public:
    /// Throws DomainError unless -1 <= value <= 1.
    explicit Informativeness(double value);

    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] Informativeness reflected() const noexcept { return Informativeness(-value_); }

    friend bool operator==(Informativeness, Informativeness) = default;

private:
    double value_;
};

enum class Message : std::uint8_t { m0 = 0, m1 = 1 };

/// Two-message likelihood table. m0 recommends action 0, m1 recommends action 1.
///
///            m0        m1
///   X = 0    i0        1 - i0
///   X = 1    1 - i1    i1
class DirectRule {
public:
    /// Throws DomainError unless i0, i1 in [0, 1] and i0 + i1 >= 1.
    DirectRule(double i0, double i1);

    [[nodiscard]] double i0() const noexcept { return i0_; }
    [[nodiscard]] double i1() const noexcept { return i1_; }

    /// P(m | X = x).
    [[nodiscard]] double likelihood(Message m, State x) const noexcept;

private:
    friend DirectRule concentrate(Informativeness I) noexcept;
    friend Informativeness informativeness(const DirectRule& rule);

    // Keeps the exact I a concentrated rule was built from; 1 - (1 - I)
    // does not round-trip in floating point.
    DirectRule(double i0, double i1, double I) noexcept : i0_(i0), i1_(i1), informativeness_(I) {}

    double i0_;
    double i1_;
    double informativeness_;
};

struct MessageMarginal {
    double m0;
    double m1;
};

/// Allocations a type can accept with nonnegative gain.
struct FeasibleBand {
    double lo;
    double hi;

    [[nodiscard]] bool contains(double I, double slack = 0.0) const noexcept {
        return I >= lo - slack && I <= hi + slack;
    }
};

/// The rule on the ceiling of the feasible region with informativeness I:
/// I >= 0 reveals X=0 with certainty (i0 = 1), I < 0 reveals X=1 (i1 = 1).
[[nodiscard]] DirectRule concentrate(Informativeness I) noexcept;

[[nodiscard]] Informativeness informativeness(const DirectRule& rule);

[[nodiscard]] MessageMarginal message_marginal(const DirectRule& rule, Belief belief) noexcept;

/// Posterior P(X=0 | m). Throws ZeroEvidenceError if m has zero probability.
[[nodiscard]] Belief message_posterior(const DirectRule& rule, Belief belief, Message m);

/// [-1, v/(1-v)] for v <= 1/2 and [-(1-v)/v, 1] above.
[[nodiscard]] FeasibleBand feasible_band(Belief v_b) noexcept;

/// Buyer's gain 1 - max(v, 1-v) - I (1{I >= 0} - v). Defined on all of
/// [-1, 1]; negative outside feasible_band(v_b).
[[nodiscard]] double gain(Informativeness I, Belief v_b) noexcept;

/// Seller's expected externality tau [v_s P(m0; v_s) + (1-v_s) P(m1; v_s)]
/// for the concentrated rule with informativeness I, where the message
/// marginal is taken under the seller's belief.
[[nodiscard]] double externality_cost(Informativeness I, const GameConfig& cfg) noexcept;

/// True iff m0 weakly recommends action 0 and m1 weakly recommends action 1
/// for a buyer holding v_b. Messages with zero probability impose nothing.
[[nodiscard]] bool obedience_check(const DirectRule& rule, Belief v_b) noexcept;

}  // namespace infoprice
