#include "boundmon/dynamics.hpp"

#include <stdexcept>

namespace boundmon
{

UncertainLinearSystem::UncertainLinearSystem(Matrix center, Matrix radius)
    : center_(std::move(center)), radius_(std::move(radius))
{
    require_same_dim(center_.rows(), center_.cols(), "system matrix must be square");
    require_same_dim(radius_.rows(), center_.rows(), "radius matrix rows");
    require_same_dim(radius_.cols(), center_.cols(), "radius matrix columns");
    if (center_.rows() == 0)
        throw std::invalid_argument("system dimension must be positive");
    if (!center_.allFinite() || !radius_.allFinite())
        throw std::invalid_argument("system matrices must be finite");
    if ((radius_.array() < 0.0).any())
        throw std::invalid_argument("radius matrix must be non-negative");
}

UncertainLinearSystem UncertainLinearSystem::exact(Matrix center)
{
    Matrix radius = Matrix::Zero(center.rows(), center.cols());
    return {std::move(center), std::move(radius)};
}

bool UncertainLinearSystem::contains(const Matrix& a, double tol) const
{
    if (a.rows() != dim() || a.cols() != dim())
        return false;
    return ((a - center_).cwiseAbs() - radius_).maxCoeff() <= tol;
}

//---------------------------------------------------------------------------//
Zonotope reach_step(const UncertainLinearSystem& sys,
                    const Zonotope& z,
                    const ReachOptions& opts)
{
    require_same_dim(sys.dim(), z.dim(), "reach step");
    Index const n = z.dim();

    Box const hull = interval_hull(z);
    Vector const magnitude = hull.lower().cwiseAbs().cwiseMax(hull.upper().cwiseAbs());
    Vector const error = sys.radius() * magnitude;

    Matrix g(n, z.order() + n);
    g.leftCols(z.order()) = sys.center() * z.generators();
    g.rightCols(n) = error.asDiagonal();
    Zonotope next(sys.center() * z.center(), std::move(g));

    if (opts.max_generators && next.order() > *opts.max_generators)
        return reduce_to_box(next);
    return next;
}

ReachTube reach(const UncertainLinearSystem& sys,
                const Zonotope& z0,
                int steps,
                const ReachOptions& opts,
                int start_step)
{
    if (steps < 1)
        throw std::invalid_argument("reach horizon must be at least one step");
    ReachTube tube;
    tube.start_step = start_step;
    tube.sets.reserve(static_cast<std::size_t>(steps));
    tube.sets.push_back(reach_step(sys, z0, opts));
    for (int k = 1; k < steps; ++k)
        tube.sets.push_back(reach_step(sys, tube.sets.back(), opts));
    return tube;
}

Matrix sample_member(const UncertainLinearSystem& sys, Rng& rng)
{
    Index const n = sys.dim();
    Matrix a(n, n);
    for (Index i = 0; i < n; ++i)
    {
        for (Index j = 0; j < n; ++j)
        {
            double const c = sys.center()(i, j);
            double const r = sys.radius()(i, j);
            a(i, j) = r == 0.0 ? c : rng.uniform(c - r, c + r);
        }
    }
    return a;
}

Matrix sample_member(const UncertainLinearSystem& sys, std::uint64_t seed)
{
    Rng rng(seed);
    return sample_member(sys, rng);
}

}  // namespace boundmon
