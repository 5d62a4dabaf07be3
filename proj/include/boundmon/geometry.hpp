#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace boundmon
{

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Default residual tolerance for the feasibility queries.
inline constexpr double kFeasibilityTolerance = 1e-9;

class DimensionError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class LpError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Axis-aligned box; degenerate faces (lower == upper) are allowed.
class Box
{
  public:
    Box(Vector lower, Vector upper);

    const Vector& lower() const { return lower_; }
    const Vector& upper() const { return upper_; }
    Index dim() const { return lower_.size(); }

    Vector midpoint() const { return 0.5 * (lower_ + upper_); }
    Vector radius() const { return 0.5 * (upper_ - lower_); }

    bool contains(const Vector& x, double tol = 0.0) const;
    bool contains(const Box& other, double tol = 0.0) const;

    friend bool operator==(const Box&, const Box&) = default;

  private:
    Vector lower_;
    Vector upper_;
};

/*!
 * Zonotope { center + G * alpha : alpha in [-1, 1]^m }.
 *
 * Columns of G that are identically zero are dropped on construction, so a
 * zonotope with no generators is a single point.
 */
class Zonotope
{
  public:
    Zonotope() = default;
    Zonotope(Vector center, Matrix generators);

    static Zonotope point(Vector center);

    const Vector& center() const { return center_; }
    const Matrix& generators() const { return generators_; }
    Index dim() const { return center_.size(); }
    Index order() const { return generators_.cols(); }
    bool is_point() const { return generators_.cols() == 0; }

    //! Point of the set selected by a factor vector alpha (length order()).
    Vector at(const Vector& alpha) const;

    friend bool operator==(const Zonotope& a, const Zonotope& b)
    {
        return a.center_.size() == b.center_.size()
               && a.generators_.cols() == b.generators_.cols()
               && a.center_ == b.center_ && a.generators_ == b.generators_;
    }

  private:
    Vector center_;
    Matrix generators_;
};

Zonotope linear_map(const Matrix& a, const Zonotope& z);
Zonotope minkowski_sum(const Zonotope& z1, const Zonotope& z2);

//! Tightest axis-aligned box containing z.
Box interval_hull(const Zonotope& z);
Zonotope box_to_zonotope(const Box& box);

//! Replace all generators by the interval hull's axis-aligned generators.
Zonotope reduce_to_box(const Zonotope& z);

/*!
 * Exact intersection test decided by a linear feasibility program.
 *
 * Returns true iff some alpha, beta in the unit cubes give
 * c1 + G1 alpha = c2 + G2 beta up to a residual of eps (scaled by the problem
 * magnitude). Near-feasible instances count as intersecting. Throws LpError
 * if the solver cannot reach a consistent answer.
 */
bool intersects(const Zonotope& z1,
                const Zonotope& z2,
                double eps = kFeasibilityTolerance);

//! Membership test with the same tolerance convention as intersects.
bool contains_point(const Zonotope& z,
                    const Vector& x,
                    double eps = kFeasibilityTolerance);

//! Intersection of the two interval hulls, or nullopt when disjoint.
std::optional<Box> boxhull_intersect(const Zonotope& z1, const Zonotope& z2);

//! Throws DimensionError unless both dims agree.
void require_same_dim(Index a, Index b, const char* what);

}  // namespace boundmon
