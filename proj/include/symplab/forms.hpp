#ifndef SYMPLAB_FORMS_HPP
#define SYMPLAB_FORMS_HPP

#include "symplab/embedding.hpp"

namespace symplab {

/** Value of a pairing together with its pointwise integrand. */
struct PairingResult {
    double value = 0.0;
    TwoFormGrid integrand;
};

/** The area-weighted pairing: integral of omega_{f(x)}(v1, v2) against
 * sigma. Bilinear and antisymmetric in (v1, v2). */
PairingResult omega_D(const Embedding& f, const TangentField& v1, const TangentField& v2,
                      const AreaForm& sigma);

/** The surface-space pairing through its pointwise integrand
 *   2 omega(v1, v2) s - 2 (a1 b2 - b1 a2),
 * where s is the pullback density and (ai, bi) are the components of
 * alpha_{vi}. The wedge-term sign is fixed by the expansion of the
 * evaluation-map contraction: it makes the integrand vanish pointwise
 * whenever either argument is tangential. On symplectic surfaces this
 * pairing equals 2 omega_D in exact directions. */
PairingResult omega_S(const Embedding& f, const TangentField& v1, const TangentField& v2);

/** Pointwise action of the compatible almost complex structure along f:
 * (Jv)(x,y) = J(f(x,y)) v(x,y). */
TangentField jtilde(const Embedding& f, const TangentField& v, const AmbientModel& model);
/** Same with a precomputed J field (see compatible_J_along). */
TangentField jtilde(const Embedding& f, const TangentField& v,
                    const std::vector<Eigen::MatrixXd>& J_along);

/** Cyclic central-difference approximation of d omega_D evaluated on three
 * constant-extension directions:
 *   |d_{V1} wD(V2,V3) - d_{V2} wD(V1,V3) + d_{V3} wD(V1,V2)|
 * with each derivative taken along f +- h Vi. Lie brackets of constant
 * extensions vanish in the global chart, so the cyclic sum converges to
 * d omega_D(V1,V2,V3) = 0 at order h^2. Requires h in [1e-6, 1e-1]. */
double d_omega_D_fd(const Embedding& f, const TangentField& V1, const TangentField& V2,
                    const TangentField& V3, double h, const AreaForm& sigma);

/** Holomorphicity defect |d_y F - J(f) d_x F| per node (convention
 * j d_x = d_y). Zero iff f is (j, J)-holomorphic. */
ScalarGrid cr_residual(const Embedding& f, const AmbientModel& model);

/** Defect |d_y v - J d_x v| of a variation, for a constant J (integrable
 * case). For orthogonal constant J the residual field norm is invariant
 * under v -> Jv, which is the computable closure statement. */
ScalarGrid cr_variation_residual(const TangentField& v, const Eigen::MatrixXd& J);

} // namespace symplab

#endif
