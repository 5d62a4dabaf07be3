#include "boundmon/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace boundmon
{
namespace
{
enum class At : unsigned char
{
    lower,
    upper,
    basic
};

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kReducedCostTol = 1e-11;
constexpr double kPivotTol = 1e-11;

}  // namespace

FeasibilityResult cube_feasibility(const Matrix& a, const Vector& b, double eps)
{
    require_same_dim(a.rows(), b.size(), "feasibility right-hand side");

    Index const rows = a.rows();
    Index const n_struct = a.cols();

    double scale = std::max(1.0, rows > 0 ? b.lpNorm<Eigen::Infinity>() : 0.0);
    if (rows > 0 && n_struct > 0)
    {
        scale = std::max(scale, a.cwiseAbs().rowwise().sum().maxCoeff());
    }

    FeasibilityResult result;
    result.tolerance = eps * scale;

    if (rows == 0)
    {
        result.feasible = true;
        return result;
    }
    if (n_struct == 0)
    {
        result.residual = b.lpNorm<Eigen::Infinity>();
        result.separation = result.residual;
        result.feasible = result.residual <= result.tolerance;
        return result;
    }

    // Columns: structural y (bounds [-1, 1]), then a positive and a negative
    // artificial per row (bounds [0, inf)). Minimising the artificials
    // computes min |A y - b|_1 over the cube; the dual is bounded by 1.
    Index const total = n_struct + 2 * rows;
    auto is_struct = [n_struct](Index j) { return j < n_struct; };

    Vector const residual0 = b + a * Vector::Ones(n_struct);
    Vector sigma(rows);
    for (Index i = 0; i < rows; ++i)
    {
        sigma[i] = residual0[i] >= 0 ? 1.0 : -1.0;
    }

    Matrix tab(rows, total);
    tab.leftCols(n_struct) = sigma.asDiagonal() * a;
    tab.middleCols(n_struct, rows) = sigma.asDiagonal() * Matrix::Identity(rows, rows);
    tab.rightCols(rows) = -(sigma.asDiagonal() * Matrix::Identity(rows, rows));

    Vector xb = residual0.cwiseAbs();
    std::vector<Index> basis(rows);
    std::vector<At> state(total, At::lower);
    for (Index i = 0; i < rows; ++i)
    {
        Index const j = sigma[i] > 0 ? n_struct + i : n_struct + rows + i;
        basis[i] = j;
        state[j] = At::basic;
    }

    auto lower = [&](Index j) { return is_struct(j) ? -1.0 : 0.0; };
    auto upper = [&](Index j) { return is_struct(j) ? 1.0 : kInf; };
    auto cost = [&](Index j) { return is_struct(j) ? 0.0 : 1.0; };

    Vector cb(rows);
    int const max_pivots = static_cast<int>(100 * total + 1000);
    int pivots = 0;
    while (true)
    {
        for (Index i = 0; i < rows; ++i)
        {
            cb[i] = cost(basis[i]);
        }
        Eigen::RowVectorXd const z = cb.transpose() * tab;

        // Bland: lowest eligible index enters.
        Index enter = -1;
        double dir = 0.0;
        for (Index j = 0; j < total; ++j)
        {
            if (state[j] == At::basic)
                continue;
            double const d = cost(j) - z[j];
            if (state[j] == At::lower && d < -kReducedCostTol)
            {
                enter = j;
                dir = 1.0;
                break;
            }
            if (state[j] == At::upper && d > kReducedCostTol)
            {
                enter = j;
                dir = -1.0;
                break;
            }
        }
        if (enter < 0)
            break;

        double theta = upper(enter) - lower(enter);
        Index leave = -1;
        bool leave_to_lower = true;
        for (Index i = 0; i < rows; ++i)
        {
            double const g = dir * tab(i, enter);
            double limit;
            bool to_lower;
            if (g > kPivotTol)
            {
                limit = (xb[i] - lower(basis[i])) / g;
                to_lower = true;
            }
            else if (g < -kPivotTol)
            {
                if (std::isinf(upper(basis[i])))
                    continue;
                limit = (upper(basis[i]) - xb[i]) / (-g);
                to_lower = false;
            }
            else
            {
                continue;
            }
            limit = std::max(limit, 0.0);
            if (limit < theta
                || (leave >= 0 && limit == theta && basis[i] < basis[leave]))
            {
                theta = limit;
                leave = i;
                leave_to_lower = to_lower;
            }
        }
        if (std::isinf(theta))
        {
            throw LpError("feasibility program reported an unbounded ray");
        }

        xb -= (theta * dir) * tab.col(enter);
        if (leave < 0)
        {
            state[enter] = state[enter] == At::lower ? At::upper : At::lower;
        }
        else
        {
            double const entering_value
                = (state[enter] == At::lower ? lower(enter) : upper(enter))
                  + dir * theta;
            Index const out = basis[leave];
            state[out] = leave_to_lower ? At::lower : At::upper;

            tab.row(leave) /= tab(leave, enter);
            for (Index i = 0; i < rows; ++i)
            {
                if (i != leave && tab(i, enter) != 0.0)
                {
                    tab.row(i) -= tab(i, enter) * tab.row(leave);
                }
            }
            xb[leave] = entering_value;
            basis[leave] = enter;
            state[enter] = At::basic;
        }

        if (++pivots > max_pivots)
        {
            throw LpError("feasibility program exceeded "
                          + std::to_string(max_pivots) + " pivots");
        }
    }
    result.pivots = pivots;

    // Refactorise the final basis for an accurate primal point and dual.
    auto column = [&](Index j) -> Vector {
        if (is_struct(j))
            return a.col(j);
        Vector e = Vector::Zero(rows);
        if (j < n_struct + rows)
            e[j - n_struct] = 1.0;
        else
            e[j - n_struct - rows] = -1.0;
        return e;
    };
    Matrix basis_matrix(rows, rows);
    for (Index i = 0; i < rows; ++i)
    {
        basis_matrix.col(i) = column(basis[i]);
        cb[i] = cost(basis[i]);
    }
    Vector rhs = b;
    Vector y(n_struct);
    for (Index j = 0; j < n_struct; ++j)
    {
        if (state[j] != At::basic)
        {
            y[j] = state[j] == At::lower ? -1.0 : 1.0;
            rhs -= a.col(j) * y[j];
        }
    }

    Vector basic_values = xb;
    Vector dual;
    Eigen::FullPivLU<Matrix> lu(basis_matrix);
    if (lu.isInvertible())
    {
        basic_values = lu.solve(rhs);
        dual = basis_matrix.transpose().fullPivLu().solve(cb);
    }
    else
    {
        // Tableau columns of the positive artificials hold B^{-1}.
        dual = (cb.transpose() * tab.middleCols(n_struct, rows)).transpose();
    }
    for (Index i = 0; i < rows; ++i)
    {
        if (is_struct(basis[i]))
        {
            y[basis[i]] = std::clamp(basic_values[i], -1.0, 1.0);
        }
    }

    result.residual = (a * y - b).lpNorm<Eigen::Infinity>();
    double const dual_norm = dual.lpNorm<1>();
    double const raw = dual.dot(b) - (a.transpose() * dual).cwiseAbs().sum();
    result.separation = dual_norm > 0.0 ? raw / dual_norm : 0.0;

    if (result.residual <= result.tolerance)
    {
        result.feasible = true;
    }
    else if (result.separation > result.tolerance)
    {
        result.feasible = false;
    }
    else
    {
        // The dual bounds min |Ay - b|_1 by rows * tolerance here, so the
        // instance is borderline unless the primal point is far off.
        double const l1_residual = (a * y - b).lpNorm<1>();
        if (l1_residual - std::max(raw, 0.0) > 1e-6 * scale
            && result.residual > 1e-6 * scale)
        {
            throw LpError("feasibility program is inconsistent: residual "
                          + std::to_string(result.residual) + ", separation "
                          + std::to_string(result.separation));
        }
        result.feasible = true;
    }
    return result;
}

}  // namespace boundmon
