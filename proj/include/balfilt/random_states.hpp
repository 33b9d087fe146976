#pragma once

#include <cstdint>
#include <random>

#include "balfilt/states.hpp"

namespace balfilt {

/// Deterministic generator of small random semistable states: rank ≤ 4, up
/// to 6 characters with entries in [−3, 3], a random positive-definite
/// rational Gram matrix, and a polarisation drawn as a nonnegative rational
/// combination of the characters (zero about a third of the time). The same
/// seed yields the same sequence on every platform.
class RandomStates {
  public:
    explicit RandomStates(std::uint64_t seed) : rng_(seed) {}

    PolarisedState next();

    /// Uniform integer in [lo, hi]; exposed for reuse by callers that need
    /// auxiliary draws tied to the same stream.
    long pick(long lo, long hi);

    /// Random rational with numerator in [-bound, bound] and denominator in
    /// [1, bound].
    Rational rational(long bound);

    /// Random positive-definite Gram matrix BᵀDB with B a nonsingular
    /// integer matrix and D a positive rational diagonal.
    QMat gram(std::size_t dim);

    /// Random unimodular integer matrix (product of elementary operations).
    QMat unimodular(std::size_t dim);

    std::mt19937_64& engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

}  // namespace balfilt
