#ifndef SYMPLAB_INTERPOLATE_HPP
#define SYMPLAB_INTERPOLATE_HPP

#include <complex>
#include <memory>
#include <vector>

#include "symplab/grid.hpp"

namespace symplab {

/** Off-grid evaluation strategy. Bicubic is the cheap default; Fourier sums
 * the trigonometric interpolant and is exact on band-limited fields. */
enum class InterpMode { bicubic, fourier };

/** Wraps a real number into [0,1). */
double wrap01(double x);

/** Periodic bicubic (Catmull-Rom) interpolation of a grid field. */
class BicubicInterpolant {
  public:
    explicit BicubicInterpolant(ScalarGrid f) : f_(std::move(f)) {}
    double operator()(double x, double y) const;

  private:
    ScalarGrid f_;
};

/** Direct evaluation of the trigonometric interpolant, restricted to modes
 * whose coefficients are above a relative cutoff. */
class FourierInterpolant {
  public:
    explicit FourierInterpolant(const ScalarGrid& f, double relative_cutoff = 1e-15);
    double operator()(double x, double y) const;
    size_t mode_count() const { return modes_.size(); }

  private:
    struct Mode {
        double kx, ky;
        double re, im; // doubled for the implied conjugate half
    };
    double mean_ = 0.0;
    std::vector<Mode> modes_;
};

/** Mode-dispatched scalar sampler. */
class ScalarSampler {
  public:
    ScalarSampler(const ScalarGrid& f, InterpMode mode);
    double operator()(double x, double y) const;

  private:
    std::shared_ptr<BicubicInterpolant> bicubic_;
    std::shared_ptr<FourierInterpolant> fourier_;
};

/** Sampler for a two-component surface field. */
class FieldSampler {
  public:
    FieldSampler(const SurfaceField& X, InterpMode mode)
        : x1_(X.x1, mode), x2_(X.x2, mode) {}
    void eval(double x, double y, double& vx, double& vy) const {
        vx = x1_(x, y);
        vy = x2_(x, y);
    }

  private:
    ScalarSampler x1_, x2_;
};

} // namespace symplab

#endif
