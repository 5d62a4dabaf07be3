#pragma once

#include "boundmon/geometry.hpp"

namespace boundmon
{

struct FeasibilityResult
{
    bool feasible = false;
    //! Infinity-norm residual |A y - b| of the best point found in the cube.
    double residual = 0.0;
    //! Certified lower bound on the residual of every point in the cube,
    //! from the phase-1 dual. Non-positive when no certificate exists.
    double separation = 0.0;
    //! Absolute tolerance the verdict was taken against.
    double tolerance = 0.0;
    int pivots = 0;
};

/*!
 * Decide whether A y = b has a solution with every y_j in [-1, 1].
 *
 * Bounded-variable phase-1 simplex (Bland's rule) over the artificial
 * residuals, followed by a refactorisation of the final basis. The answer is
 * "feasible" when the recovered point has residual <= eps * scale, and
 * "infeasible" only when the dual gives a separation > eps * scale, where
 * scale = max(1, |b|_inf, max row |A|_1). Anything in between is reported
 * feasible. Throws LpError when primal and dual disagree beyond round-off.
 */
FeasibilityResult cube_feasibility(const Matrix& a, const Vector& b, double eps);

}  // namespace boundmon
