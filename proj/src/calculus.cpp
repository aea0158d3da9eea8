#include "symplab/calculus.hpp"

#include <cmath>
#include <sstream>

#include "symplab/fft.hpp"

namespace symplab {

OneFormGrid exterior_derivative(const ScalarGrid& h) {
    return OneFormGrid(deriv_x(h), deriv_y(h));
}

TwoFormGrid exterior_derivative(const OneFormGrid& alpha) {
    return TwoFormGrid(deriv_x(alpha.b) - deriv_y(alpha.a));
}

double integrate(const TwoFormGrid& g) { return g.density.mean(); }

double integrate_scalar(const ScalarGrid& h, const AreaForm& sigma) {
    return hadamard(h, sigma.rho).mean();
}

HodgeSplit hodge_split(const OneFormGrid& alpha, double closed_tol) {
    const double d_residual = exterior_derivative(alpha).density.max_abs();
    if (d_residual > closed_tol) {
        std::ostringstream msg;
        msg << "hodge_split: input is not closed, |d alpha| = " << d_residual;
        throw NonClosedFormError(msg.str());
    }
    HodgeSplit out;
    out.period_x = alpha.a.mean();
    out.period_y = alpha.b.mean();
    // For closed alpha the divergence determines the potential: the harmonic
    // part is constant on the flat torus and divergence-free.
    ScalarGrid div = deriv_x(alpha.a) + deriv_y(alpha.b);
    out.potential = inv_laplacian(div);
    OneFormGrid dh = exterior_derivative(out.potential);
    double res = 0.0;
    for (int i = 0; i < alpha.grid().nx; ++i)
        for (int j = 0; j < alpha.grid().ny; ++j) {
            res = std::max(res, std::abs(alpha.a.at(i, j) - dh.a.at(i, j) - out.period_x));
            res = std::max(res, std::abs(alpha.b.at(i, j) - dh.b.at(i, j) - out.period_y));
        }
    out.reconstruction_residual = res;
    return out;
}

ScalarGrid poisson_solve(const ScalarGrid& g) {
    const double m = g.mean();
    if (std::abs(m) > 1e-10) {
        std::ostringstream msg;
        msg << "poisson_solve: right-hand side has nonzero mean " << m;
        throw NonZeroMeanError(msg.str());
    }
    return inv_laplacian(g);
}

OneFormGrid contract_area_form(const SurfaceField& X, const AreaForm& sigma) {
    // iota_X (rho dx^dy) = rho (X1 dy - X2 dx)
    ScalarGrid a = hadamard(sigma.rho, X.x2);
    a *= -1.0;
    ScalarGrid b = hadamard(sigma.rho, X.x1);
    return OneFormGrid(std::move(a), std::move(b));
}

SurfaceField surface_hamiltonian_field(const ScalarGrid& psi, const AreaForm& sigma) {
    return area_preserving_field(psi, 0.0, 0.0, sigma);
}

SurfaceField area_preserving_field(const ScalarGrid& psi, double h1, double h2,
                                   const AreaForm& sigma) {
    ScalarGrid px = deriv_x(psi), py = deriv_y(psi);
    SurfaceField X(psi.grid);
    for (size_t k = 0; k < X.x1.v.size(); ++k) {
        const double rho = sigma.rho.v[k];
        X.x1.v[k] = -(py.v[k] + h2) / rho;
        X.x2.v[k] = (px.v[k] + h1) / rho;
    }
    return X;
}

ScalarGrid poisson_bracket(const ScalarGrid& p1, const ScalarGrid& p2, const AreaForm& sigma) {
    ScalarGrid p1x = deriv_x(p1), p1y = deriv_y(p1);
    ScalarGrid p2x = deriv_x(p2), p2y = deriv_y(p2);
    ScalarGrid out(p1.grid);
    for (size_t k = 0; k < out.v.size(); ++k)
        out.v[k] = (p1y.v[k] * p2x.v[k] - p1x.v[k] * p2y.v[k]) / sigma.rho.v[k];
    return out;
}

ScalarGrid GridDiffeo::jacobian_det() const {
    ScalarGrid uxx = deriv_x(disp_x), uxy = deriv_y(disp_x);
    ScalarGrid uyx = deriv_x(disp_y), uyy = deriv_y(disp_y);
    ScalarGrid det(grid());
    for (size_t k = 0; k < det.v.size(); ++k)
        det.v[k] =
            (1.0 + uxx.v[k]) * (1.0 + uyy.v[k]) - uxy.v[k] * uyx.v[k];
    return det;
}

double GridDiffeo::displacement_norm() const {
    return std::max(disp_x.max_abs(), disp_y.max_abs());
}

GridDiffeo GridDiffeo::inverse(InterpMode mode, int max_iter, double tol) const {
    ScalarSampler sx(disp_x, mode), sy(disp_y, mode);
    const TorusGrid g = grid();
    GridDiffeo inv = GridDiffeo::identity(g);
    const double h = 1e-6; // difference step for the local Jacobian
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double tx = g.x(i), ty = g.y(j);
            double px = tx, py = ty; // Newton on p + disp(p) = t
            for (int it = 0; it < max_iter; ++it) {
                const double ex = px + sx(px, py) - tx;
                const double ey = py + sy(px, py) - ty;
                if (std::abs(ex) < tol && std::abs(ey) < tol) break;
                const double axx = 1.0 + (sx(px + h, py) - sx(px - h, py)) / (2 * h);
                const double axy = (sx(px, py + h) - sx(px, py - h)) / (2 * h);
                const double ayx = (sy(px + h, py) - sy(px - h, py)) / (2 * h);
                const double ayy = 1.0 + (sy(px, py + h) - sy(px, py - h)) / (2 * h);
                const double det = axx * ayy - axy * ayx;
                px -= (ayy * ex - axy * ey) / det;
                py -= (-ayx * ex + axx * ey) / det;
            }
            inv.disp_x.at(i, j) = px - tx;
            inv.disp_y.at(i, j) = py - ty;
        }
    return inv;
}

namespace {

GridDiffeo integrate_flow(const std::function<SurfaceField(double)>& field, double T, int steps,
                          InterpMode mode, bool autonomous) {
    if (steps < 1) throw Error("flow_diffeo: steps must be >= 1");
    SurfaceField X0 = field(0.0);
    const TorusGrid g = X0.grid();
    std::vector<double> px(static_cast<size_t>(g.size())), py(px.size());
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            px[static_cast<size_t>(g.index(i, j))] = g.x(i);
            py[static_cast<size_t>(g.index(i, j))] = g.y(j);
        }

    const double h = T / steps;
    std::shared_ptr<FieldSampler> s0, smid, s1;
    s0 = std::make_shared<FieldSampler>(X0, mode);
    if (autonomous) {
        smid = s0;
        s1 = s0;
    }
    for (int step = 0; step < steps; ++step) {
        const double t0 = step * h;
        if (!autonomous) {
            smid = std::make_shared<FieldSampler>(field(t0 + 0.5 * h), mode);
            s1 = std::make_shared<FieldSampler>(field(t0 + h), mode);
        }
        for (size_t k = 0; k < px.size(); ++k) {
            double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
            s0->eval(px[k], py[k], k1x, k1y);
            smid->eval(px[k] + 0.5 * h * k1x, py[k] + 0.5 * h * k1y, k2x, k2y);
            smid->eval(px[k] + 0.5 * h * k2x, py[k] + 0.5 * h * k2y, k3x, k3y);
            s1->eval(px[k] + h * k3x, py[k] + h * k3y, k4x, k4y);
            px[k] += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
            py[k] += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        }
        if (!autonomous) s0 = s1;
    }

    GridDiffeo phi = GridDiffeo::identity(g);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const size_t k = static_cast<size_t>(g.index(i, j));
            phi.disp_x.at(i, j) = px[k] - g.x(i);
            phi.disp_y.at(i, j) = py[k] - g.y(j);
        }
    const double mj = phi.min_jacobian();
    if (mj <= 0.0) {
        std::ostringstream msg;
        msg << "flow_diffeo: mesh folded, min Jacobian " << mj
            << "; reduce the step size or the field amplitude";
        throw MeshFoldError(msg.str());
    }
    return phi;
}

} // namespace

GridDiffeo flow_diffeo(const SurfaceField& X, double T, int steps, InterpMode mode) {
    return integrate_flow([&X](double) { return X; }, T, steps, mode, true);
}

GridDiffeo flow_diffeo(const std::function<SurfaceField(double)>& X_of_t, double T, int steps,
                       InterpMode mode) {
    return integrate_flow(X_of_t, T, steps, mode, false);
}

ScalarGrid diffeo_pullback_density(const GridDiffeo& phi, const AreaForm& sigma,
                                   InterpMode mode) {
    ScalarSampler rho(sigma.rho, mode);
    ScalarGrid det = phi.jacobian_det();
    ScalarGrid out(phi.grid());
    for (int i = 0; i < phi.grid().nx; ++i)
        for (int j = 0; j < phi.grid().ny; ++j)
            out.at(i, j) = rho(phi.map_x(i, j), phi.map_y(i, j)) * det.at(i, j);
    return out;
}

} // namespace symplab
