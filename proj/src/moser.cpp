#include "symplab/moser.hpp"

#include <cmath>
#include <sstream>

#include "symplab/fft.hpp"

namespace symplab {

MoserResult moser_reparametrize(const Embedding& f, const AreaForm& sigma, int steps,
                                double tol, InterpMode mode) {
    const TorusGrid g = f.grid();
    const ScalarGrid& s = f.pullback().density;
    const ScalarGrid& rho = sigma.rho;

    const double area_gap = std::abs(s.mean() - rho.mean());
    if (area_gap > 1e-8) {
        std::ostringstream msg;
        msg << "moser_reparametrize: total areas differ by " << area_gap
            << "; the pullback class does not match sigma";
        throw AreaMismatchError(msg.str());
    }
    // rho_t is linear in t, so positivity on [0,1] reduces to the endpoints.
    const double min_path = std::min(s.min(), rho.min());
    if (min_path <= 0.0) {
        std::ostringstream msg;
        msg << "moser_reparametrize: density path leaves the positive cone, min = "
            << min_path;
        throw DegenerateFormError(msg.str());
    }

    ScalarGrid rhs = s - rho;
    const double m = rhs.mean();
    for (double& x : rhs.v) x -= m;
    const ScalarGrid u = inv_laplacian(rhs);
    const ScalarGrid ux = deriv_x(u), uy = deriv_y(u);

    auto field_at = [&](double t) {
        SurfaceField X(g);
        for (size_t k = 0; k < X.x1.v.size(); ++k) {
            const double rho_t = (1.0 - t) * rho.v[k] + t * s.v[k];
            X.x1.v[k] = -ux.v[k] / rho_t;
            X.x2.v[k] = -uy.v[k] / rho_t;
        }
        return X;
    };

    GridDiffeo phi = flow_diffeo(field_at, 1.0, steps, mode);
    Embedding moved = reparametrize(f, phi, mode);
    const double residual = symplectic_residual(moved, sigma);
    return MoserResult{std::move(phi), std::move(moved), residual, min_path, steps,
                       residual <= tol};
}

} // namespace symplab
