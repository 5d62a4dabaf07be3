#include "boundmon/monitor_offline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

namespace boundmon
{

UnsafeSpec::UnsafeSpec(std::vector<Zonotope> regions, double unbounded_bound)
    : regions_(std::move(regions)), unbounded_bound_(unbounded_bound)
{
    if (regions_.empty())
        throw std::invalid_argument("unsafe set needs at least one region");
    for (const Zonotope& r : regions_)
        require_same_dim(r.dim(), regions_.front().dim(), "unsafe region");
    if (!(unbounded_bound_ > 0.0))
        throw std::invalid_argument("unbounded face bound must be positive");
}

Zonotope UnsafeSpec::half_open_box(const std::vector<std::optional<double>>& lower,
                                   const std::vector<std::optional<double>>& upper,
                                   double bound)
{
    require_same_dim(static_cast<Index>(lower.size()), static_cast<Index>(upper.size()),
                     "unsafe box faces");
    auto const n = static_cast<Index>(lower.size());
    Vector lo(n), hi(n);
    for (Index i = 0; i < n; ++i)
    {
        lo[i] = lower[static_cast<std::size_t>(i)].value_or(-bound);
        hi[i] = upper[static_cast<std::size_t>(i)].value_or(bound);
    }
    return box_to_zonotope(Box(lo, hi));
}

UnsafeSpec UnsafeSpec::complement_of(const std::vector<std::optional<double>>& safe_lower,
                                     const std::vector<std::optional<double>>& safe_upper,
                                     double bound)
{
    require_same_dim(static_cast<Index>(safe_lower.size()),
                     static_cast<Index>(safe_upper.size()), "safe box faces");
    std::size_t const n = safe_lower.size();
    std::vector<Zonotope> regions;
    for (std::size_t i = 0; i < n; ++i)
    {
        std::vector<std::optional<double>> lo(n), hi(n);
        if (safe_lower[i])
        {
            hi[i] = *safe_lower[i];
            regions.push_back(half_open_box(lo, hi, bound));
            hi[i].reset();
        }
        if (safe_upper[i])
        {
            lo[i] = *safe_upper[i];
            regions.push_back(half_open_box(lo, hi, bound));
        }
    }
    return UnsafeSpec(std::move(regions), bound);
}

const char* to_string(Outcome o)
{
    return o == Outcome::safe ? "safe" : "unsafe";
}

void OfflineStats::accumulate(const OfflineStats& other)
{
    propagation_steps += other.propagation_steps;
    refinement_reach_steps += other.refinement_reach_steps;
    refinements += other.refinements;
    intersection_checks += other.intersection_checks;
    timestamp_pairs += other.timestamp_pairs;
    pairs_evaluated += other.pairs_evaluated;
    pair_seconds.insert(pair_seconds.end(), other.pair_seconds.begin(), other.pair_seconds.end());
}

//---------------------------------------------------------------------------//
namespace
{
struct RefineResult
{
    bool reachable = false;
    std::optional<Box> psi;
    int reach_steps = 0;
};

RefineResult refine_detail(const UncertainLinearSystem& sys,
                           const Zonotope& theta,
                           const Zonotope& region,
                           int steps_to_next,
                           const Zonotope& next_sample,
                           const OfflineOptions& opts)
{
    if (steps_to_next < 1)
        throw std::invalid_argument("refinement needs at least one step to the next sample");
    RefineResult out;
    out.psi = boxhull_intersect(theta, region);
    if (!out.psi)
        return out;
    ReachTube const tube = reach(sys, box_to_zonotope(*out.psi), steps_to_next, opts.reach);
    out.reach_steps = steps_to_next;
    out.reachable = intersects(tube.sets.back(), next_sample, opts.eps);
    return out;
}

struct PairResult
{
    OfflineStats stats;
    std::optional<OfflineWitness> witness;
};

std::optional<OfflineWitness> check_sample(const Sample& s,
                                           std::size_t k,
                                           const UnsafeSpec& unsafe,
                                           OfflineStats& stats,
                                           double eps)
{
    for (std::size_t r = 0; r < unsafe.regions().size(); ++r)
    {
        ++stats.intersection_checks;
        const Zonotope& region = unsafe.regions()[r];
        if (intersects(s.set, region, eps))
        {
            OfflineWitness w;
            w.kind = OfflineWitness::Kind::sample;
            w.pair_index = k;
            w.t_k = s.t_lb;
            w.t_next = s.t_ub;
            w.step = s.t_lb;
            w.region_index = r;
            w.psi = boxhull_intersect(s.set, region).value_or(interval_hull(s.set));
            return w;
        }
    }
    return std::nullopt;
}

PairResult evaluate_pair(const UncertainLinearSystem& sys,
                         const UncertainLog& log,
                         const UnsafeSpec& unsafe,
                         std::size_t k,
                         const OfflineOptions& opts)
{
    auto const start = std::chrono::steady_clock::now();
    PairResult out;
    out.stats.pairs_evaluated = 1;
    auto finish = [&]() {
        out.stats.pair_seconds.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        return out;
    };

    const Sample& current = log[k];
    out.witness = check_sample(current, k, unsafe, out.stats, opts.eps);
    if (out.witness || k + 1 == log.size())
        return finish();

    const Sample& next = log[k + 1];
    for (int t_k = current.t_lb; t_k <= current.t_ub; ++t_k)
    {
        for (int t_next = next.t_lb; t_next <= next.t_ub; ++t_next)
        {
            ++out.stats.timestamp_pairs;
            Zonotope theta = current.set;
            for (int p = 1; p < t_next - t_k; ++p)
            {
                theta = reach_step(sys, theta, opts.reach);
                ++out.stats.propagation_steps;
                for (std::size_t r = 0; r < unsafe.regions().size(); ++r)
                {
                    ++out.stats.intersection_checks;
                    const Zonotope& region = unsafe.regions()[r];
                    if (!intersects(theta, region, opts.eps))
                        continue;
                    ++out.stats.refinements;
                    int const steps_to_next = t_next - (t_k + p);
                    RefineResult const ref
                        = refine_detail(sys, theta, region, steps_to_next, next.set, opts);
                    out.stats.refinement_reach_steps
                        += static_cast<std::uint64_t>(ref.reach_steps);
                    if (ref.reachable)
                    {
                        OfflineWitness w;
                        w.kind = OfflineWitness::Kind::refinement;
                        w.pair_index = k;
                        w.t_k = t_k;
                        w.t_next = t_next;
                        w.step = t_k + p;
                        w.region_index = r;
                        w.psi = *ref.psi;
                        out.witness = w;
                        return finish();
                    }
                }
            }
        }
    }
    return finish();
}

}  // namespace

bool refine(const UncertainLinearSystem& sys,
            const Zonotope& theta,
            const Zonotope& unsafe_region,
            int steps_to_next,
            const Zonotope& next_sample,
            const OfflineOptions& opts)
{
    return refine_detail(sys, theta, unsafe_region, steps_to_next, next_sample, opts).reachable;
}

Verdict monitor_offline(const UncertainLinearSystem& sys,
                        const UncertainLog& log,
                        const UnsafeSpec& unsafe,
                        const OfflineOptions& opts)
{
    require_same_dim(sys.dim(), log.dim(), "log");
    require_same_dim(sys.dim(), unsafe.dim(), "unsafe set");

    std::size_t const count = log.size();
    std::vector<std::optional<PairResult>> results(count);

    unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : opts.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

    if (threads <= 1)
    {
        for (std::size_t k = 0; k < count; ++k)
        {
            results[k] = evaluate_pair(sys, log, unsafe, k, opts);
            if (results[k]->witness)
                break;
        }
    }
    else
    {
        // Pairs beyond the smallest violating index found so far are skipped;
        // every pair below it is always evaluated in full.
        std::atomic<std::size_t> next_index{0};
        std::atomic<std::size_t> first_stop{count};
        std::vector<std::exception_ptr> failures(count);
        auto lower_stop = [&](std::size_t k) {
            std::size_t seen = first_stop.load();
            while (k < seen && !first_stop.compare_exchange_weak(seen, k))
            {
            }
        };
        auto worker = [&]() {
            while (true)
            {
                std::size_t const k = next_index.fetch_add(1);
                if (k >= count || k > first_stop.load())
                    return;
                try
                {
                    PairResult r = evaluate_pair(sys, log, unsafe, k, opts);
                    bool const stop = r.witness.has_value();
                    results[k] = std::move(r);
                    if (stop)
                        lower_stop(k);
                }
                catch (...)
                {
                    failures[k] = std::current_exception();
                    lower_stop(k);
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (std::thread& th : pool)
            th.join();
        for (std::size_t k = 0; k < count && k <= first_stop.load(); ++k)
        {
            if (failures[k])
                std::rethrow_exception(failures[k]);
            if (results[k] && results[k]->witness)
                break;
        }
    }

    Verdict verdict;
    verdict.unbounded_bound = unsafe.unbounded_bound();
    for (std::size_t k = 0; k < count; ++k)
    {
        if (!results[k])
            throw std::logic_error("offline monitor skipped a pair below the first violation");
        verdict.stats.accumulate(results[k]->stats);
        if (results[k]->witness)
        {
            verdict.outcome = Outcome::unsafe;
            verdict.witness = results[k]->witness;
            break;
        }
    }
    return verdict;
}

//---------------------------------------------------------------------------//
std::vector<TubeRecord> offline_tubes(const UncertainLinearSystem& sys,
                                      const UncertainLog& log,
                                      const Verdict& verdict,
                                      const ReachOptions& reach_opts)
{
    require_same_dim(sys.dim(), log.dim(), "log");
    std::vector<TubeRecord> rows;
    std::size_t const last = verdict.witness ? verdict.witness->pair_index : log.size() - 1;

    for (std::size_t k = 0; k <= last; ++k)
    {
        const Sample& current = log[k];
        bool const stop_here = verdict.witness && k == last;
        if (k + 1 == log.size()
            || (stop_here && verdict.witness->kind == OfflineWitness::Kind::sample))
        {
            for (int t = current.t_lb; t <= current.t_ub; ++t)
                rows.push_back({k, t, t, interval_hull(current.set)});
            continue;
        }
        const Sample& next = log[k + 1];
        for (int t_k = current.t_lb; t_k <= current.t_ub; ++t_k)
        {
            int last_step = next.t_ub - 1;
            if (stop_here)
            {
                if (t_k > verdict.witness->t_k)
                    break;
                if (t_k == verdict.witness->t_k)
                    last_step = verdict.witness->step;
            }
            Zonotope theta = current.set;
            rows.push_back({k, t_k, t_k, interval_hull(theta)});
            for (int step = t_k + 1; step <= last_step; ++step)
            {
                theta = reach_step(sys, theta, reach_opts);
                rows.push_back({k, t_k, step, interval_hull(theta)});
            }
        }
    }
    return rows;
}

}  // namespace boundmon
