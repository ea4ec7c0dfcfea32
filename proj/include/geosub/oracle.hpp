#pragma once

#include "geosub/sysmodel.hpp"
#include "geosub/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace geosub {

/// Strongly reachable subspace by the classical recursion
/// R_0 = {0}, R_{i+1} = [A B] ((R_i x R^m) intersect ker [C D]),
/// iterated to a fixpoint. Always terminates; works for any shape.
SubspaceBasis recursive_fast_space(const StateSpaceSystem& sys, double tol = kDefaultTol);

/// Weakly unobservable subspace by the largest-output-nulling recursion
/// V_0 = R^n, V_{i+1} = { x : exists u with A x + B u in V_i and C x + D u = 0 }.
SubspaceBasis recursive_weakly_unobservable(const StateSpaceSystem& sys,
                                            double tol = kDefaultTol);

/// One comparison between a closed-form quantity and its oracle. `agree` is
/// empty when the comparison is not applicable for this system.
struct CheckEntry {
    std::string quantity;
    std::string closed_form;
    std::string oracle;
    std::optional<bool> agree;
};

struct CrossCheckReport {
    std::vector<CheckEntry> entries;

    Index comparisons() const {
        Index c = 0;
        for (const auto& e : entries) c += e.agree.has_value() ? 1 : 0;
        return c;
    }
    bool all_agree() const {
        for (const auto& e : entries) {
            if (e.agree.has_value() && !*e.agree) return false;
        }
        return true;
    }
};

/// Runs every applicable closed-form computation against its recursive or
/// transfer-matrix counterpart. Disagreements become report entries, never
/// exceptions.
CrossCheckReport cross_check(const StateSpaceSystem& sys, double tol = kDefaultTol);

}  // namespace geosub
