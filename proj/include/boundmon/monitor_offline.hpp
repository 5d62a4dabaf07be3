#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "boundmon/dynamics.hpp"
#include "boundmon/geometry.hpp"
#include "boundmon/logging.hpp"

namespace boundmon
{

//! Union of unsafe zonotopes.
class UnsafeSpec
{
  public:
    explicit UnsafeSpec(std::vector<Zonotope> regions, double unbounded_bound = 1e6);

    const std::vector<Zonotope>& regions() const { return regions_; }
    Index dim() const { return regions_.front().dim(); }
    //! Magnitude used for faces that are unbounded in the source property.
    double unbounded_bound() const { return unbounded_bound_; }

    //! Box region with optional faces; a missing face becomes +/- bound.
    static Zonotope half_open_box(const std::vector<std::optional<double>>& lower,
                                  const std::vector<std::optional<double>>& upper,
                                  double bound = 1e6);

    //! Boxes covering the complement of a safe box; unconstrained faces of
    //! the safe box are skipped.
    static UnsafeSpec complement_of(const std::vector<std::optional<double>>& safe_lower,
                                    const std::vector<std::optional<double>>& safe_upper,
                                    double bound = 1e6);

  private:
    std::vector<Zonotope> regions_;
    double unbounded_bound_;
};

enum class Outcome
{
    safe,
    unsafe
};

const char* to_string(Outcome o);

struct OfflineWitness
{
    enum class Kind
    {
        //! A logged sample itself meets an unsafe region.
        sample,
        //! A refinement found the next sample reachable from an unsafe part.
        refinement
    };

    Kind kind = Kind::refinement;
    std::size_t pair_index = 0;
    //! Resolved timestamps; for sample witnesses t_k = t_lb, t_next = t_ub.
    int t_k = 0;
    int t_next = 0;
    //! Step whose reach set meets the region (t_k for sample witnesses).
    int step = 0;
    std::size_t region_index = 0;
    //! Box hull of the set meeting the region, clipped to the region hull.
    Box psi{Vector(), Vector()};
};

struct OfflineStats
{
    std::uint64_t propagation_steps = 0;
    std::uint64_t refinement_reach_steps = 0;
    std::uint64_t refinements = 0;
    std::uint64_t intersection_checks = 0;
    std::uint64_t timestamp_pairs = 0;
    std::uint64_t pairs_evaluated = 0;
    //! Wall-clock seconds per evaluated sample pair. Not deterministic.
    std::vector<double> pair_seconds;

    std::uint64_t reach_steps() const { return propagation_steps + refinement_reach_steps; }
    void accumulate(const OfflineStats& other);
};

struct Verdict
{
    Outcome outcome = Outcome::safe;
    std::optional<OfflineWitness> witness;
    OfflineStats stats;
    double unbounded_bound = 1e6;
};

struct OfflineOptions
{
    double eps = kFeasibilityTolerance;
    ReachOptions reach;
    //! Worker threads over sample pairs; 0 picks hardware concurrency.
    unsigned threads = 1;
};

/*!
 * Refinement check: clip theta to the region by box hulls, propagate the
 * clipped box steps_to_next steps and test the result against the next
 * sample.
 */
bool refine(const UncertainLinearSystem& sys,
            const Zonotope& theta,
            const Zonotope& unsafe_region,
            int steps_to_next,
            const Zonotope& next_sample,
            const OfflineOptions& opts = {});

/*!
 * Offline safety monitoring of an uncertain log.
 *
 * Every sample is checked against the unsafe regions. For each consecutive
 * pair and each concrete pair of timestamps from their intervals, the first
 * sample is propagated one step at a time over every step strictly between
 * the two timestamps; a reach set meeting an unsafe region triggers a
 * refinement, and a successful refinement is a violation. The witness is the
 * lexicographically smallest (pair, t_k, t_next, step, region) in evaluation
 * order, and the verdict is identical for any thread count.
 */
Verdict monitor_offline(const UncertainLinearSystem& sys,
                        const UncertainLog& log,
                        const UnsafeSpec& unsafe,
                        const OfflineOptions& opts = {});

//! Interval hull of a propagated set at an absolute step, for plotting.
struct TubeRecord
{
    std::size_t pair_index = 0;
    int t_k = 0;
    int step = 0;
    Box hull{Vector(), Vector()};
};

/*!
 * Reach tubes examined by monitor_offline, up to the verdict's stopping
 * point: for each pair k and each t_k, the sample itself at t_k followed by
 * the propagated sets up to the last intermediate step. The final sample
 * contributes its own hull.
 */
std::vector<TubeRecord> offline_tubes(const UncertainLinearSystem& sys,
                                      const UncertainLog& log,
                                      const Verdict& verdict,
                                      const ReachOptions& reach = {});

}  // namespace boundmon
