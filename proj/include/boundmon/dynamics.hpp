#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "boundmon/geometry.hpp"
#include "boundmon/random.hpp"

namespace boundmon
{

/*!
 * Discrete-time uncertain linear system x+ = A x with A ranging over the
 * interval matrix { A : |A_ij - C_ij| <= R_ij }.
 */
class UncertainLinearSystem
{
  public:
    UncertainLinearSystem(Matrix center, Matrix radius);

    //! System without uncertainty.
    static UncertainLinearSystem exact(Matrix center);

    Index dim() const { return center_.rows(); }
    const Matrix& center() const { return center_; }
    const Matrix& radius() const { return radius_; }

    //! Whether a concrete matrix is a member (entrywise, with tolerance).
    bool contains(const Matrix& a, double tol = 0.0) const;

  private:
    Matrix center_;
    Matrix radius_;
};

struct ReachOptions
{
    //! When set, any step result with more generators is replaced by its
    //! interval hull.
    std::optional<Index> max_generators;
};

struct ReachTube
{
    int start_step = 0;
    //! sets[k] encloses everything reachable k + 1 steps after start_step.
    std::vector<Zonotope> sets;
};

/*!
 * One sound reachability step.
 *
 * Returns C Z plus the origin-centred box with half-widths R m, where m_j is
 * the largest magnitude of coordinate j over the interval hull of Z. The
 * result contains A x for every A in the interval matrix and every x in Z,
 * so the matrix may differ from step to step.
 */
Zonotope reach_step(const UncertainLinearSystem& sys,
                    const Zonotope& z,
                    const ReachOptions& opts = {});

ReachTube reach(const UncertainLinearSystem& sys,
                const Zonotope& z0,
                int steps,
                const ReachOptions& opts = {},
                int start_step = 0);

//! Member matrix with entries uniform over their intervals (row-major draw).
Matrix sample_member(const UncertainLinearSystem& sys, Rng& rng);
Matrix sample_member(const UncertainLinearSystem& sys, std::uint64_t seed);

}  // namespace boundmon
