#include "boundmon/geometry.hpp"

#include <cmath>
#include <vector>

#include "boundmon/feasibility.hpp"

namespace boundmon
{

void require_same_dim(Index a, Index b, const char* what)
{
    if (a != b)
    {
        throw DimensionError(std::string(what) + ": dimension " + std::to_string(a)
                             + " does not match " + std::to_string(b));
    }
}

//---------------------------------------------------------------------------//
Box::Box(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper))
{
    require_same_dim(lower_.size(), upper_.size(), "box bounds");
    for (Index i = 0; i < lower_.size(); ++i)
    {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]))
            throw std::invalid_argument("box bounds must be finite");
        if (lower_[i] > upper_[i])
            throw std::invalid_argument("box lower bound exceeds upper bound in dimension "
                                        + std::to_string(i));
    }
}

bool Box::contains(const Vector& x, double tol) const
{
    require_same_dim(dim(), x.size(), "box containment");
    return ((x - lower_).array() >= -tol).all() && ((upper_ - x).array() >= -tol).all();
}

bool Box::contains(const Box& other, double tol) const
{
    require_same_dim(dim(), other.dim(), "box containment");
    return ((other.lower_ - lower_).array() >= -tol).all()
           && ((upper_ - other.upper_).array() >= -tol).all();
}

//---------------------------------------------------------------------------//
Zonotope::Zonotope(Vector center, Matrix generators) : center_(std::move(center))
{
    if (generators.cols() > 0)
        require_same_dim(generators.rows(), center_.size(), "zonotope generators");
    if (!center_.allFinite() || !generators.allFinite())
        throw std::invalid_argument("zonotope entries must be finite");

    std::vector<Index> keep;
    keep.reserve(generators.cols());
    for (Index j = 0; j < generators.cols(); ++j)
    {
        if ((generators.col(j).array() != 0.0).any())
            keep.push_back(j);
    }
    if (static_cast<Index>(keep.size()) == generators.cols())
    {
        generators_ = std::move(generators);
    }
    else
    {
        generators_.resize(center_.size(), static_cast<Index>(keep.size()));
        for (Index k = 0; k < static_cast<Index>(keep.size()); ++k)
            generators_.col(k) = generators.col(keep[k]);
    }
    if (generators_.cols() == 0)
        generators_.resize(center_.size(), 0);
}

Zonotope Zonotope::point(Vector center)
{
    Index const n = center.size();
    return Zonotope(std::move(center), Matrix(n, 0));
}

Vector Zonotope::at(const Vector& alpha) const
{
    require_same_dim(alpha.size(), order(), "zonotope factor vector");
    return center_ + generators_ * alpha;
}

//---------------------------------------------------------------------------//
Zonotope linear_map(const Matrix& a, const Zonotope& z)
{
    require_same_dim(a.cols(), z.dim(), "linear map");
    return Zonotope(a * z.center(), a * z.generators());
}

Zonotope minkowski_sum(const Zonotope& z1, const Zonotope& z2)
{
    require_same_dim(z1.dim(), z2.dim(), "Minkowski sum");
    Matrix g(z1.dim(), z1.order() + z2.order());
    g << z1.generators(), z2.generators();
    return Zonotope(z1.center() + z2.center(), std::move(g));
}

Box interval_hull(const Zonotope& z)
{
    Vector const r = z.generators().cwiseAbs().rowwise().sum();
    return Box(z.center() - r, z.center() + r);
}

Zonotope box_to_zonotope(const Box& box)
{
    return Zonotope(box.midpoint(), Matrix(box.radius().asDiagonal()));
}

Zonotope reduce_to_box(const Zonotope& z)
{
    return box_to_zonotope(interval_hull(z));
}

std::optional<Box> boxhull_intersect(const Zonotope& z1, const Zonotope& z2)
{
    require_same_dim(z1.dim(), z2.dim(), "box hull intersection");
    Box const h1 = interval_hull(z1);
    Box const h2 = interval_hull(z2);
    Vector const lo = h1.lower().cwiseMax(h2.lower());
    Vector const hi = h1.upper().cwiseMin(h2.upper());
    if ((lo.array() > hi.array()).any())
        return std::nullopt;
    return Box(lo, hi);
}

//---------------------------------------------------------------------------//
bool intersects(const Zonotope& z1, const Zonotope& z2, double eps)
{
    require_same_dim(z1.dim(), z2.dim(), "intersection");
    Index const n = z1.dim();

    // G1 a - G2 b = c2 - c1 over the joint unit cube.
    Vector const rhs = z2.center() - z1.center();
    Matrix a(n, z1.order() + z2.order());
    a << z1.generators(), -z2.generators();

    // Separated hulls already certify disjointness with the same scaling
    // the LP uses.
    Vector const reach = a.cwiseAbs().rowwise().sum();
    double scale = std::max(1.0, rhs.size() > 0 ? rhs.lpNorm<Eigen::Infinity>() : 0.0);
    if (n > 0 && a.cols() > 0)
        scale = std::max(scale, reach.maxCoeff());
    if (((rhs.cwiseAbs() - reach).array() > eps * scale).any())
        return false;

    return cube_feasibility(a, rhs, eps).feasible;
}

bool contains_point(const Zonotope& z, const Vector& x, double eps)
{
    require_same_dim(z.dim(), x.size(), "point membership");
    return cube_feasibility(z.generators(), x - z.center(), eps).feasible;
}

}  // namespace boundmon
