#include "symplab/embedding.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "symplab/fft.hpp"

namespace symplab {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;
}

TangentField TangentField::sample(TorusGrid g, int dim,
                                  const std::function<Eigen::VectorXd(double, double)>& f) {
    TangentField out(g, dim);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) out.at(i, j) = f(g.x(i), g.y(j));
    return out;
}

TangentField TangentField::constant(TorusGrid g, const Eigen::VectorXd& v) {
    TangentField out(g, static_cast<int>(v.size()));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) out.at(i, j) = v;
    return out;
}

ScalarGrid TangentField::component(int c) const {
    ScalarGrid out(grid);
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j) out.at(i, j) = at(i, j)[c];
    return out;
}

double TangentField::max_norm() const {
    double m = 0.0;
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j) m = std::max(m, at(i, j).norm());
    return m;
}

TangentField& TangentField::operator+=(const TangentField& o) {
    for (size_t k = 0; k < data.size(); ++k) data[k] += o.data[k];
    return *this;
}

TangentField& TangentField::operator-=(const TangentField& o) {
    for (size_t k = 0; k < data.size(); ++k) data[k] -= o.data[k];
    return *this;
}

TangentField& TangentField::operator*=(double s) {
    for (double& x : data) x *= s;
    return *this;
}

TangentField operator+(TangentField a, const TangentField& b) { return a += b; }
TangentField operator-(TangentField a, const TangentField& b) { return a -= b; }
TangentField operator*(double s, TangentField a) { return a *= s; }

Embedding::Embedding(std::shared_ptr<const AmbientModel> model, TorusGrid grid,
                     Eigen::MatrixXi winding, std::vector<double> lift,
                     bool require_positive_pullback)
    : model_(std::move(model)), grid_(grid), winding_(std::move(winding)),
      lift_(std::move(lift)) {
    const int d = dim();
    if (winding_.rows() != d || winding_.cols() != 2)
        throw Error("Embedding: winding matrix must be 2n x 2");
    if (lift_.size() != static_cast<size_t>(grid_.size()) * d)
        throw Error("Embedding: lift payload has wrong size");

    // Differential: winding-linear part plus spectral derivative of the
    // periodic remainder, component by component.
    dfx_ = TangentField(grid_, d);
    dfy_ = TangentField(grid_, d);
    for (int c = 0; c < d; ++c) {
        ScalarGrid periodic(grid_);
        for (int i = 0; i < grid_.nx; ++i)
            for (int j = 0; j < grid_.ny; ++j)
                periodic.at(i, j) = point(i, j)[c] -
                                    winding_(c, 0) * grid_.x(i) - winding_(c, 1) * grid_.y(j);
        ScalarGrid px = deriv_x(periodic), py = deriv_y(periodic);
        for (int i = 0; i < grid_.nx; ++i)
            for (int j = 0; j < grid_.ny; ++j) {
                dfx_.at(i, j)[c] = winding_(c, 0) + px.at(i, j);
                dfy_.at(i, j)[c] = winding_(c, 1) + py.at(i, j);
            }
    }

    pullback_ = TwoFormGrid(grid_);
    min_gram_det_ = std::numeric_limits<double>::infinity();
    double min_pullback = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_.nx; ++i)
        for (int j = 0; j < grid_.ny; ++j) {
            const auto dx = dfx_.at(i, j), dy = dfy_.at(i, j);
            const double g11 = dx.squaredNorm(), g12 = dx.dot(dy), g22 = dy.squaredNorm();
            min_gram_det_ = std::min(min_gram_det_, g11 * g22 - g12 * g12);
            const Eigen::MatrixXd omega = model_->omega_at(point(i, j));
            const double s = dx.dot(omega * dy);
            pullback_.density.at(i, j) = s;
            min_pullback = std::min(min_pullback, s);
        }
    if (min_gram_det_ <= 1e-8) {
        std::ostringstream msg;
        msg << "Embedding: not an immersion at grid resolution, min Gram det = "
            << min_gram_det_;
        throw ImmersionError(msg.str());
    }
    if (require_positive_pullback && min_pullback <= 0.0) {
        std::ostringstream msg;
        msg << "Embedding: pullback density not positive, min = " << min_pullback;
        throw ImmersionError(msg.str());
    }
}

Embedding Embedding::flat(std::shared_ptr<const AmbientModel> model, TorusGrid grid) {
    const int d = model->dim();
    Eigen::MatrixXi w = Eigen::MatrixXi::Zero(d, 2);
    w(0, 0) = 1;
    w(1, 1) = 1;
    std::vector<double> lift(static_cast<size_t>(grid.size()) * d, 0.0);
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j) {
            double* p = lift.data() + static_cast<size_t>(grid.index(i, j)) * d;
            p[0] = grid.x(i);
            p[1] = grid.y(j);
        }
    return Embedding(std::move(model), grid, std::move(w), std::move(lift), true);
}

Embedding Embedding::sheared(std::shared_ptr<const AmbientModel> model, TorusGrid grid,
                             double a) {
    const int d = model->dim();
    Eigen::MatrixXi w = Eigen::MatrixXi::Zero(d, 2);
    w(0, 0) = 1;
    w(1, 1) = 1;
    std::vector<double> lift(static_cast<size_t>(grid.size()) * d, 0.0);
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j) {
            double* p = lift.data() + static_cast<size_t>(grid.index(i, j)) * d;
            const double x = grid.x(i);
            p[0] = x + a / two_pi * std::sin(two_pi * x);
            p[1] = grid.y(j);
        }
    return Embedding(std::move(model), grid, std::move(w), std::move(lift));
}

Embedding Embedding::from_map(std::shared_ptr<const AmbientModel> model, TorusGrid grid,
                              Eigen::MatrixXi winding,
                              const std::function<Eigen::VectorXd(double, double)>& f,
                              bool require_positive_pullback) {
    const int d = model->dim();
    std::vector<double> lift(static_cast<size_t>(grid.size()) * d, 0.0);
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j) {
            const Eigen::VectorXd v = f(grid.x(i), grid.y(j));
            double* p = lift.data() + static_cast<size_t>(grid.index(i, j)) * d;
            for (int c = 0; c < d; ++c) p[c] = v[c];
        }
    return Embedding(std::move(model), grid, std::move(winding), std::move(lift),
                     require_positive_pullback);
}

double symplectic_residual(const Embedding& f, const AreaForm& sigma) {
    return (f.pullback().density - sigma.rho).max_abs();
}

OneFormGrid alpha(const Embedding& f, const TangentField& v) {
    OneFormGrid out(f.grid());
    for (int i = 0; i < f.grid().nx; ++i)
        for (int j = 0; j < f.grid().ny; ++j) {
            const Eigen::MatrixXd omega = f.model().omega_at(f.point(i, j));
            const Eigen::VectorXd wv = omega.transpose() * v.at(i, j); // omega(v, .)
            out.a.at(i, j) = wv.dot(f.dfx().at(i, j));
            out.b.at(i, j) = wv.dot(f.dfy().at(i, j));
        }
    return out;
}

SplitResult split_tangent(const Embedding& f, const TangentField& v) {
    SplitResult out;
    out.tangential = TangentField(f.grid(), f.dim());
    out.orthogonal = TangentField(f.grid(), f.dim());
    out.coefficients = SurfaceField(f.grid());
    double res = 0.0;
    for (int i = 0; i < f.grid().nx; ++i)
        for (int j = 0; j < f.grid().ny; ++j) {
            const Eigen::MatrixXd omega = f.model().omega_at(f.point(i, j));
            const auto dx = f.dfx().at(i, j), dy = f.dfy().at(i, j);
            const double s = dx.dot(omega * dy);
            if (s == 0.0)
                throw DegenerateFormError(
                    "split_tangent: pullback density vanishes; not a symplectic surface");
            const Eigen::VectorXd wv = omega.transpose() * v.at(i, j);
            const double a = wv.dot(dx), b = wv.dot(dy);
            const double X1 = b / s, X2 = -a / s;
            out.coefficients.x1.at(i, j) = X1;
            out.coefficients.x2.at(i, j) = X2;
            out.tangential.at(i, j) = X1 * dx + X2 * dy;
            out.orthogonal.at(i, j) = v.at(i, j) - out.tangential.at(i, j);
            // alpha of the orthogonal part must vanish pointwise
            const Eigen::VectorXd wxi = omega.transpose() * out.orthogonal.at(i, j);
            res = std::max(res, std::abs(wxi.dot(dx)));
            res = std::max(res, std::abs(wxi.dot(dy)));
        }
    out.orthogonality_residual = res;
    return out;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::exact: return "exact";
        case Verdict::closed_not_exact: return "closed-not-exact";
        default: return "not-closed";
    }
}

Classification classify(const Embedding& f, const TangentField& v, double closed_tol,
                        double period_tol) {
    Classification out;
    const OneFormGrid av = alpha(f, v);
    out.closedness_residual = exterior_derivative(av).density.max_abs();
    out.period_x = av.a.mean();
    out.period_y = av.b.mean();
    if (out.closedness_residual > closed_tol) {
        out.verdict = Verdict::not_closed;
        return out;
    }
    HodgeSplit split = hodge_split(av, std::max(closed_tol, out.closedness_residual * 2.0));
    if (split.is_exact(period_tol)) {
        out.verdict = Verdict::exact;
        out.potential = std::move(split.potential);
    } else {
        out.verdict = Verdict::closed_not_exact;
    }
    return out;
}

TangentField hamiltonian_restriction(const Embedding& f, const ScalarHamiltonian& H) {
    TangentField out(f.grid(), f.dim());
    for (int i = 0; i < f.grid().nx; ++i)
        for (int j = 0; j < f.grid().ny; ++j)
            out.at(i, j) = hamiltonian_vector(f.model(), H, f.point(i, j));
    return out;
}

TangentField tangential_lift(const Embedding& f, const SurfaceField& X) {
    TangentField out(f.grid(), f.dim());
    for (int i = 0; i < f.grid().nx; ++i)
        for (int j = 0; j < f.grid().ny; ++j)
            out.at(i, j) =
                X.x1.at(i, j) * f.dfx().at(i, j) + X.x2.at(i, j) * f.dfy().at(i, j);
    return out;
}

Embedding reparametrize(const Embedding& f, const GridDiffeo& phi, InterpMode mode) {
    if (phi.min_jacobian() <= 0.0)
        throw MeshFoldError("reparametrize: grid diffeomorphism is folded");
    const TorusGrid g = f.grid();
    const int d = f.dim();

    // Periodic part samplers per ambient component.
    std::vector<ScalarSampler> samplers;
    samplers.reserve(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c) {
        ScalarGrid periodic(g);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                periodic.at(i, j) = f.point(i, j)[c] -
                                    f.winding()(c, 0) * g.x(i) - f.winding()(c, 1) * g.y(j);
        samplers.emplace_back(periodic, mode);
    }

    std::vector<double> lift(static_cast<size_t>(g.size()) * d, 0.0);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double qx = phi.map_x(i, j), qy = phi.map_y(i, j);
            double* p = lift.data() + static_cast<size_t>(g.index(i, j)) * d;
            for (int c = 0; c < d; ++c)
                p[c] = f.winding()(c, 0) * qx + f.winding()(c, 1) * qy + samplers[c](qx, qy);
        }
    return Embedding(f.model_ptr(), g, f.winding(), std::move(lift));
}

Embedding compose_ambient(const AmbientSymplectomorphism& map, const Embedding& f) {
    if (!map.is_symplectic())
        throw InvalidMapError("compose_ambient: map does not preserve the base form");
    const TorusGrid g = f.grid();
    const int d = f.dim();
    const Eigen::MatrixXd A = map.linear_part().cast<double>();
    std::vector<double> lift(static_cast<size_t>(g.size()) * d, 0.0);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const Eigen::VectorXd p = A * f.point(i, j) + map.offset();
            double* out = lift.data() + static_cast<size_t>(g.index(i, j)) * d;
            for (int c = 0; c < d; ++c) out[c] = p[c];
        }
    return Embedding(f.model_ptr(), g, map.linear_part() * f.winding(), std::move(lift));
}

std::vector<Eigen::MatrixXd> compatible_J_along(const Embedding& f, const AmbientModel& model) {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(static_cast<size_t>(f.grid().size()));
    for (int i = 0; i < f.grid().nx; ++i)
        for (int j = 0; j < f.grid().ny; ++j)
            out.push_back(compatible_J_at(model, f.point(i, j)));
    return out;
}

} // namespace symplab
