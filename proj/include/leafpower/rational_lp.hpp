#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

namespace leafpower {

/// Exact rational; always kept in canonical (reduced, positive-denominator)
/// form by GMP.
using Rational = mpq_class;

enum class Sense { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
    std::vector<std::pair<int, Rational>> terms;  // (variable, coefficient)
    Sense sense = Sense::LessEqual;
    Rational rhs;
};

/// Feasibility of { x >= 0 : every constraint holds } over the rationals.
class FeasibilityProblem {
public:
    explicit FeasibilityProblem(int variables) : variables_(variables) {}

    int variables() const { return variables_; }
    const std::vector<LinearConstraint>& constraints() const { return constraints_; }

    void add(LinearConstraint c);
    void add(std::vector<std::pair<int, Rational>> terms, Sense sense, Rational rhs) {
        add(LinearConstraint{std::move(terms), sense, std::move(rhs)});
    }

    /// True when x >= 0 and every constraint holds exactly.
    bool satisfied_by(const std::vector<Rational>& x) const;

private:
    int variables_;
    std::vector<LinearConstraint> constraints_;
};

/// Phase-1 simplex on a dense rational tableau with Bland's rule (lowest
/// index enters; ratio ties leave by lowest basic index). Returns a basic
/// feasible point or nullopt when the system is infeasible.
std::optional<std::vector<Rational>> find_feasible_point(const FeasibilityProblem& problem);

} // namespace leafpower
