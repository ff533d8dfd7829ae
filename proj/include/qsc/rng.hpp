#pragma once

#include <cstdint>

namespace qsc {

// Counter-based generator: sample i of stream `seed` is a pure function of
// (seed, i), so estimates are bit-reproducible no matter how samples are
// distributed across workers.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t counter) const {
        std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ull * (counter + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    // uniform in [lo,hi)
    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform(counter);
    }

    // uniform integer in [0, n)
    std::uint64_t index(std::uint64_t counter, std::uint64_t n) const {
        return n == 0 ? 0 : bits(counter) % n;
    }

    // uniform integer in [lo, hi] inclusive
    std::int64_t range(std::uint64_t counter, std::int64_t lo, std::int64_t hi) const {
        return lo + static_cast<std::int64_t>(index(counter, static_cast<std::uint64_t>(hi - lo + 1)));
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
};

// Small sequential convenience wrapper around CounterRng.
class SeqRng {
  public:
    explicit SeqRng(std::uint64_t seed) : rng_(seed), counter_(0) {}
    std::uint64_t bits() { return rng_.bits(counter_++); }
    double uniform() { return rng_.uniform(counter_++); }
    double uniform(double lo, double hi) { return rng_.uniform(counter_++, lo, hi); }
    std::uint64_t index(std::uint64_t n) { return rng_.index(counter_++, n); }
    std::int64_t range(std::int64_t lo, std::int64_t hi) { return rng_.range(counter_++, lo, hi); }

  private:
    CounterRng rng_;
    std::uint64_t counter_;
};

} // namespace qsc
