#include "symplab/forms.hpp"

#include <cmath>
#include <sstream>

#include "symplab/fft.hpp"

namespace symplab {

PairingResult omega_D(const Embedding& f, const TangentField& v1, const TangentField& v2,
                      const AreaForm& sigma) {
    PairingResult out;
    out.integrand = TwoFormGrid(f.grid());
    for (int i = 0; i < f.grid().nx; ++i)
        for (int j = 0; j < f.grid().ny; ++j) {
            const Eigen::MatrixXd omega = f.model().omega_at(f.point(i, j));
            out.integrand.density.at(i, j) =
                v1.at(i, j).dot(omega * v2.at(i, j)) * sigma.rho.at(i, j);
        }
    out.value = integrate(out.integrand);
    return out;
}

PairingResult omega_S(const Embedding& f, const TangentField& v1, const TangentField& v2) {
    PairingResult out;
    out.integrand = TwoFormGrid(f.grid());
    for (int i = 0; i < f.grid().nx; ++i)
        for (int j = 0; j < f.grid().ny; ++j) {
            const Eigen::MatrixXd omega = f.model().omega_at(f.point(i, j));
            const auto dx = f.dfx().at(i, j), dy = f.dfy().at(i, j);
            const double s = f.pullback().density.at(i, j);
            const Eigen::VectorXd w1 = omega.transpose() * v1.at(i, j);
            const Eigen::VectorXd w2 = omega.transpose() * v2.at(i, j);
            const double a1 = w1.dot(dx), b1 = w1.dot(dy);
            const double a2 = w2.dot(dx), b2 = w2.dot(dy);
            out.integrand.density.at(i, j) =
                2.0 * v1.at(i, j).dot(omega * v2.at(i, j)) * s - 2.0 * (a1 * b2 - b1 * a2);
        }
    out.value = integrate(out.integrand);
    return out;
}

TangentField jtilde(const Embedding& f, const TangentField& v, const AmbientModel& model) {
    TangentField out(f.grid(), f.dim());
    for (int i = 0; i < f.grid().nx; ++i)
        for (int j = 0; j < f.grid().ny; ++j)
            out.at(i, j) = compatible_J_at(model, f.point(i, j)) * v.at(i, j);
    return out;
}

TangentField jtilde(const Embedding& f, const TangentField& v,
                    const std::vector<Eigen::MatrixXd>& J_along) {
    TangentField out(f.grid(), f.dim());
    for (int i = 0; i < f.grid().nx; ++i)
        for (int j = 0; j < f.grid().ny; ++j)
            out.at(i, j) = J_along[static_cast<size_t>(f.grid().index(i, j))] * v.at(i, j);
    return out;
}

namespace {

// omega_D(Vj, Vk) with the base map displaced to f + t Vi.
double displaced_pairing(const Embedding& f, const TangentField& Vi, double t,
                         const TangentField& Vj, const TangentField& Vk,
                         const AreaForm& sigma) {
    double sum = 0.0;
    for (int i = 0; i < f.grid().nx; ++i)
        for (int j = 0; j < f.grid().ny; ++j) {
            const Eigen::VectorXd q = f.point(i, j) + t * Vi.at(i, j);
            const Eigen::MatrixXd omega = f.model().omega_at(q);
            sum += Vj.at(i, j).dot(omega * Vk.at(i, j)) * sigma.rho.at(i, j);
        }
    return sum / f.grid().size();
}

} // namespace

double d_omega_D_fd(const Embedding& f, const TangentField& V1, const TangentField& V2,
                    const TangentField& V3, double h, const AreaForm& sigma) {
    if (h < 1e-6 || h > 1e-1) {
        std::ostringstream msg;
        msg << "d_omega_D_fd: step " << h << " outside [1e-6, 1e-1]";
        throw Error(msg.str());
    }
    auto central = [&](const TangentField& Vi, const TangentField& Vj, const TangentField& Vk) {
        return (displaced_pairing(f, Vi, h, Vj, Vk, sigma) -
                displaced_pairing(f, Vi, -h, Vj, Vk, sigma)) /
               (2.0 * h);
    };
    const double cyc = central(V1, V2, V3) - central(V2, V1, V3) + central(V3, V1, V2);
    return std::abs(cyc);
}

ScalarGrid cr_residual(const Embedding& f, const AmbientModel& model) {
    ScalarGrid out(f.grid());
    for (int i = 0; i < f.grid().nx; ++i)
        for (int j = 0; j < f.grid().ny; ++j) {
            const Eigen::MatrixXd J = compatible_J_at(model, f.point(i, j));
            out.at(i, j) = (f.dfy().at(i, j) - J * f.dfx().at(i, j)).norm();
        }
    return out;
}

ScalarGrid cr_variation_residual(const TangentField& v, const Eigen::MatrixXd& J) {
    const int d = v.dim;
    std::vector<ScalarGrid> vx, vy;
    vx.reserve(static_cast<size_t>(d));
    vy.reserve(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c) {
        ScalarGrid comp = v.component(c);
        vx.push_back(deriv_x(comp));
        vy.push_back(deriv_y(comp));
    }
    ScalarGrid out(v.grid);
    Eigen::VectorXd dxv(d), dyv(d);
    for (int i = 0; i < v.grid.nx; ++i)
        for (int j = 0; j < v.grid.ny; ++j) {
            for (int c = 0; c < d; ++c) {
                dxv[c] = vx[static_cast<size_t>(c)].at(i, j);
                dyv[c] = vy[static_cast<size_t>(c)].at(i, j);
            }
            out.at(i, j) = (dyv - J * dxv).norm();
        }
    return out;
}

} // namespace symplab
