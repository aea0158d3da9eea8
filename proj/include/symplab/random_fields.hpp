#ifndef SYMPLAB_RANDOM_FIELDS_HPP
#define SYMPLAB_RANDOM_FIELDS_HPP

#include <cstdint>
#include <random>

#include "symplab/ambient.hpp"

namespace symplab {

/** Deterministic random source. Distributions are derived from the raw
 * 64-bit stream by fixed arithmetic so reports are bit-stable for a given
 * seed on any platform. */
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    /** Uniform in [0, 1). */
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    /** Uniform integer in [a, b] inclusive. */
    int uniform_int(int a, int b) {
        return a + static_cast<int>(gen_() % static_cast<uint64_t>(b - a + 1));
    }
    /** Standard normal via Box-Muller on the fixed uniform stream. */
    double normal();

    /** Derives an independent stream for a named sub-task. */
    static uint64_t derive_seed(uint64_t seed, const std::string& label);

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/** Random real trigonometric polynomial on T^dim with frequencies bounded by
 * the bandwidth in sup norm, as a sum of `terms` random modes with normal
 * amplitudes scaled so the field has unit-order size times `amplitude`. */
FourierScalar random_fourier(int dim, int bandwidth, int terms, double amplitude, Rng& rng);

/** Random band-limited scalar grid field (2-dimensional series sampled). */
ScalarGrid random_band_limited(TorusGrid g, int bandwidth, double amplitude, Rng& rng);

} // namespace symplab

#endif
