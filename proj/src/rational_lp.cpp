#include "leafpower/rational_lp.hpp"

#include <stdexcept>

namespace leafpower {

void FeasibilityProblem::add(LinearConstraint c) {
    for (const auto& [var, coef] : c.terms)
        if (var < 0 || var >= variables_) throw std::out_of_range("constraint references unknown variable");
    constraints_.push_back(std::move(c));
}

bool FeasibilityProblem::satisfied_by(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != variables_) return false;
    for (const auto& v : x)
        if (sgn(v) < 0) return false;
    for (const auto& c : constraints_) {
        Rational lhs = 0;
        for (const auto& [var, coef] : c.terms) lhs += coef * x[static_cast<std::size_t>(var)];
        switch (c.sense) {
        case Sense::LessEqual:
            if (lhs > c.rhs) return false;
            break;
        case Sense::GreaterEqual:
            if (lhs < c.rhs) return false;
            break;
        case Sense::Equal:
            if (lhs != c.rhs) return false;
            break;
        }
    }
    return true;
}

namespace {

struct Tableau {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<Rational> cost;  // reduced costs of the phase-1 objective
    Rational objective;          // current sum of artificials
    std::vector<int> basis;

    void pivot(std::size_t r, std::size_t col) {
        auto& prow = rows[r];
        const Rational inv = 1 / prow[col];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < prow.size(); ++j)
            if (sgn(prow[j]) != 0) {
                prow[j] *= inv;
                nz.push_back(j);
            }
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][col]) == 0) continue;
            const Rational f = rows[i][col];
            for (auto j : nz) rows[i][j] -= f * prow[j];
            rhs[i] -= f * rhs[r];
        }
        if (sgn(cost[col]) != 0) {
            const Rational f = cost[col];
            for (auto j : nz) cost[j] -= f * prow[j];
            objective += f * rhs[r];  // the objective row carries -w in its rhs slot
        }
        basis[r] = static_cast<int>(col);
    }
};

} // namespace

std::optional<std::vector<Rational>> find_feasible_point(const FeasibilityProblem& problem) {
    const auto n = static_cast<std::size_t>(problem.variables());
    const auto& cons = problem.constraints();
    const std::size_t m = cons.size();

    // Column layout: originals | one slack/surplus per inequality | artificials.
    std::size_t slack_cols = 0;
    std::size_t artificial_cols = 0;
    std::vector<Sense> sense(m);
    std::vector<int> flip(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        sense[i] = cons[i].sense;
        if (sgn(cons[i].rhs) < 0) {
            flip[i] = -1;
            if (sense[i] == Sense::LessEqual)
                sense[i] = Sense::GreaterEqual;
            else if (sense[i] == Sense::GreaterEqual)
                sense[i] = Sense::LessEqual;
        }
        if (sense[i] != Sense::Equal) ++slack_cols;
        if (sense[i] != Sense::LessEqual) ++artificial_cols;
    }
    const std::size_t cols = n + slack_cols + artificial_cols;

    Tableau t;
    t.rows.assign(m, std::vector<Rational>(cols, 0));
    t.rhs.resize(m);
    t.cost.assign(cols, 0);
    t.basis.assign(m, -1);
    t.objective = 0;

    std::size_t next_slack = n;
    std::size_t next_art = n + slack_cols;
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& [var, coef] : cons[i].terms) t.rows[i][static_cast<std::size_t>(var)] += flip[i] * coef;
        t.rhs[i] = flip[i] * cons[i].rhs;
        if (sense[i] == Sense::LessEqual) {
            t.rows[i][next_slack] = 1;
            t.basis[i] = static_cast<int>(next_slack++);
        } else {
            if (sense[i] == Sense::GreaterEqual) t.rows[i][next_slack++] = -1;
            t.rows[i][next_art] = 1;
            t.cost[next_art] = 1;
            t.basis[i] = static_cast<int>(next_art++);
        }
    }
    // Price out the basic artificials.
    for (std::size_t i = 0; i < m; ++i) {
        if (static_cast<std::size_t>(t.basis[i]) < n + slack_cols) continue;
        for (std::size_t j = 0; j < cols; ++j) t.cost[j] -= t.rows[i][j];
        t.objective += t.rhs[i];
    }

    while (sgn(t.objective) > 0) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (sgn(t.cost[j]) < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;  // optimal with positive artificial mass

        std::size_t leave = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (sgn(t.rows[i][enter]) <= 0) continue;
            Rational ratio = t.rhs[i] / t.rows[i][enter];
            if (leave == m || ratio < best_ratio || (ratio == best_ratio && t.basis[i] < t.basis[leave])) {
                leave = i;
                best_ratio = std::move(ratio);
            }
        }
        if (leave == m) throw std::logic_error("phase-1 objective unbounded");
        t.pivot(leave, enter);
    }
    if (sgn(t.objective) > 0) return std::nullopt;

    std::vector<Rational> x(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (static_cast<std::size_t>(t.basis[i]) < n) x[static_cast<std::size_t>(t.basis[i])] = t.rhs[i];
    if (!problem.satisfied_by(x)) throw std::logic_error("simplex produced a point that violates the system");
    return x;
}

} // namespace leafpower
