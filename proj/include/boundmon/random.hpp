#pragma once

#include <cstdint>
#include <random>

namespace boundmon
{

/*!
 * Seeded generator with platform-independent draws.
 *
 * The standard distributions are implementation-defined, so uniform reals
 * are built directly from the 53 high bits of mt19937_64.
 */
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    //! Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    //! Uniform integer in {0, ..., count - 1} obtained from a given unit draw.
    static int index_from(double unit, int count)
    {
        int const k = static_cast<int>(unit * count);
        return k < count ? k : count - 1;
    }

    std::uint64_t next() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

//! Derive an independent stream seed (splitmix64 finaliser).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace boundmon
