#ifndef SYMPLAB_CALCULUS_HPP
#define SYMPLAB_CALCULUS_HPP

#include <cmath>
#include <functional>

#include "symplab/grid.hpp"
#include "symplab/interpolate.hpp"

namespace symplab {

/** d of a scalar: dh = h_x dx + h_y dy (spectral). */
OneFormGrid exterior_derivative(const ScalarGrid& h);

/** d of a 1-form: d(a dx + b dy) = (b_x - a_y) dx ^ dy (spectral). */
TwoFormGrid exterior_derivative(const OneFormGrid& alpha);

/** Integral of a 2-form over the torus; trapezoidal = spectral quadrature,
 * exact for band-limited densities. */
double integrate(const TwoFormGrid& g);

/** Integral of h against the area form sigma. */
double integrate_scalar(const ScalarGrid& h, const AreaForm& sigma);

/** Decomposition alpha = dh + p_x dx + p_y dy of a closed 1-form. The
 * potential is gauged to mean zero; the periods are the component means. */
struct HodgeSplit {
    ScalarGrid potential;
    double period_x = 0.0, period_y = 0.0;
    double reconstruction_residual = 0.0;

    bool is_exact(double period_tol) const {
        return std::abs(period_x) <= period_tol && std::abs(period_y) <= period_tol;
    }
};

/** Splits a closed 1-form; throws NonClosedFormError when the d-residual
 * exceeds closed_tol. */
HodgeSplit hodge_split(const OneFormGrid& alpha, double closed_tol = 1e-8);

/** Spectral solve of (laplacian u = g), flat periodic metric. Requires
 * |mean(g)| <= 1e-10; returns the mean-zero solution. */
ScalarGrid poisson_solve(const ScalarGrid& g);

/** iota_X sigma as a 1-form. */
OneFormGrid contract_area_form(const SurfaceField& X, const AreaForm& sigma);

/** Hamiltonian field of the stream function psi with respect to sigma, with
 * the sign convention iota_X sigma = -d psi:
 *   X = (-psi_y / rho, psi_x / rho). */
SurfaceField surface_hamiltonian_field(const ScalarGrid& psi, const AreaForm& sigma);

/** Area-preserving field with iota_X sigma = -(d psi + h1 dx + h2 dy); the
 * harmonic part makes the contraction closed but not exact. */
SurfaceField area_preserving_field(const ScalarGrid& psi, double h1, double h2,
                                   const AreaForm& sigma);

/** Poisson bracket {p1, p2} = d p1(X_{p2}) under the module sign convention;
 * equals (p1_y p2_x - p1_x p2_y) / rho. */
ScalarGrid poisson_bracket(const ScalarGrid& p1, const ScalarGrid& p2, const AreaForm& sigma);

/** Orientation-preserving grid self-map of the torus, stored as the identity
 * plus a periodic displacement. */
class GridDiffeo {
  public:
    GridDiffeo() = default;
    GridDiffeo(ScalarGrid dx, ScalarGrid dy)
        : disp_x(std::move(dx)), disp_y(std::move(dy)) {}

    static GridDiffeo identity(TorusGrid g) { return GridDiffeo(ScalarGrid(g), ScalarGrid(g)); }

    TorusGrid grid() const { return disp_x.grid; }

    /** Image of grid node (i,j); continuous (not wrapped). */
    double map_x(int i, int j) const { return disp_x.grid.x(i) + disp_x.at(i, j); }
    double map_y(int i, int j) const { return disp_y.grid.y(j) + disp_y.at(i, j); }

    /** Determinant of the Jacobian at every node (spectral derivatives). */
    ScalarGrid jacobian_det() const;
    double min_jacobian() const { return jacobian_det().min(); }

    /** Max displacement magnitude; identity iff 0. */
    double displacement_norm() const;

    /** Inverse map by damped fixed-point iteration per node. */
    GridDiffeo inverse(InterpMode mode = InterpMode::bicubic, int max_iter = 60,
                       double tol = 1e-13) const;

    ScalarGrid disp_x, disp_y;
};

/** Time-1-like flow map of a (possibly time-dependent) surface field,
 * integrated with classical RK4 from every grid node; throws MeshFoldError
 * if the resulting map has a non-positive Jacobian somewhere. */
GridDiffeo flow_diffeo(const SurfaceField& X, double T, int steps,
                       InterpMode mode = InterpMode::bicubic);
GridDiffeo flow_diffeo(const std::function<SurfaceField(double)>& X_of_t, double T, int steps,
                       InterpMode mode = InterpMode::bicubic);

/** Density of phi^* sigma, i.e. rho(phi(x)) det(D phi)(x). */
ScalarGrid diffeo_pullback_density(const GridDiffeo& phi, const AreaForm& sigma,
                                   InterpMode mode = InterpMode::bicubic);

} // namespace symplab

#endif
