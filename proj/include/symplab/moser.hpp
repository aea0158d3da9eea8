#ifndef SYMPLAB_MOSER_HPP
#define SYMPLAB_MOSER_HPP

#include "symplab/embedding.hpp"

namespace symplab {

/** Outcome of a Moser reparametrization run. */
struct MoserResult {
    GridDiffeo phi;
    Embedding reparametrized;
    double residual;         // |(f.phi)^* omega - sigma|_inf
    double min_path_density; // min over the grid and t of rho_t
    int steps;
    bool converged;          // residual <= requested tol
};

/** Given an immersion f whose pullback density s is positive and whose total
 * area matches sigma, flows along X_t = -grad(u) / rho_t with
 * laplacian(u) = s - rho and rho_t = (1-t) rho + t s, producing a grid
 * diffeomorphism phi with (f.phi)^* omega ~= sigma.
 *
 * Throws AreaMismatchError when |int s - int rho| > 1e-8 (the cohomology
 * obstruction), DegenerateFormError when the density path leaves the
 * positive cone, and MeshFoldError if the flow folds the mesh. */
MoserResult moser_reparametrize(const Embedding& f, const AreaForm& sigma, int steps,
                                double tol, InterpMode mode = InterpMode::bicubic);

} // namespace symplab

#endif
