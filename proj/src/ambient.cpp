#include "symplab/ambient.hpp"

#include <cmath>
#include <sstream>

namespace symplab {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;
constexpr double half_pi = 1.5707963267948966192313216916398;
} // namespace

FourierScalar& FourierScalar::add(std::vector<int> freq, double amplitude, double phase) {
    if (static_cast<int>(freq.size()) != dim_)
        throw Error("FourierScalar: frequency vector has wrong dimension");
    terms_.push_back({std::move(freq), amplitude, phase});
    return *this;
}

FourierScalar& FourierScalar::add_constant(double c) {
    return add(std::vector<int>(static_cast<size_t>(dim_), 0), c, half_pi);
}

double FourierScalar::value(const Eigen::VectorXd& q) const {
    double s = 0.0;
    for (const Term& t : terms_) {
        double ang = t.phase;
        for (int a = 0; a < dim_; ++a) ang += two_pi * t.freq[static_cast<size_t>(a)] * q[a];
        s += t.amplitude * std::sin(ang);
    }
    return s;
}

Eigen::VectorXd FourierScalar::gradient(const Eigen::VectorXd& q) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
    for (const Term& t : terms_) {
        double ang = t.phase;
        for (int a = 0; a < dim_; ++a) ang += two_pi * t.freq[static_cast<size_t>(a)] * q[a];
        const double c = t.amplitude * std::cos(ang) * two_pi;
        for (int a = 0; a < dim_; ++a) g[a] += c * t.freq[static_cast<size_t>(a)];
    }
    return g;
}

Eigen::MatrixXd FourierScalar::hessian(const Eigen::VectorXd& q) const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim_, dim_);
    for (const Term& t : terms_) {
        double ang = t.phase;
        for (int a = 0; a < dim_; ++a) ang += two_pi * t.freq[static_cast<size_t>(a)] * q[a];
        const double s = -t.amplitude * std::sin(ang) * two_pi * two_pi;
        for (int a = 0; a < dim_; ++a)
            for (int b = 0; b < dim_; ++b)
                h(a, b) += s * t.freq[static_cast<size_t>(a)] * t.freq[static_cast<size_t>(b)];
    }
    return h;
}

int FourierScalar::bandwidth() const {
    int bw = 0;
    for (const Term& t : terms_)
        for (int f : t.freq) bw = std::max(bw, std::abs(f));
    return bw;
}

ScalarGrid FourierScalar::sample(TorusGrid g) const {
    if (dim_ != 2) throw Error("FourierScalar::sample: series is not 2-dimensional");
    ScalarGrid out(g);
    Eigen::VectorXd q(2);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            q[0] = g.x(i);
            q[1] = g.y(j);
            out.at(i, j) = value(q);
        }
    return out;
}

AmbientModel::AmbientModel(int half_dim, Eigen::MatrixXd base_form,
                           std::vector<FourierScalar> eta)
    : n_(half_dim), base_(std::move(base_form)), eta_(std::move(eta)) {
    if (n_ < 2) throw Error("AmbientModel: half_dim must be >= 2 (so that 2n >= 4)");
    if (base_.rows() != dim() || base_.cols() != dim())
        throw Error("AmbientModel: base form has wrong dimensions");
    if ((base_ + base_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw Error("AmbientModel: base form is not antisymmetric");
    if (eta_.empty()) eta_.assign(static_cast<size_t>(dim()), FourierScalar(dim()));
    if (static_cast<int>(eta_.size()) != dim())
        throw Error("AmbientModel: eta must have one component per coordinate");
    for (const FourierScalar& comp : eta_) {
        if (comp.dim() != dim()) throw Error("AmbientModel: eta component dimension mismatch");
        if (!comp.empty()) constant_ = false;
    }
}

Eigen::MatrixXd AmbientModel::standard_form(int half_dim) {
    Eigen::MatrixXd o = Eigen::MatrixXd::Zero(2 * half_dim, 2 * half_dim);
    for (int k = 0; k < half_dim; ++k) {
        o(2 * k, 2 * k + 1) = 1.0;
        o(2 * k + 1, 2 * k) = -1.0;
    }
    return o;
}

std::shared_ptr<const AmbientModel> AmbientModel::standard(int half_dim) {
    return std::make_shared<AmbientModel>(half_dim, standard_form(half_dim));
}

Eigen::MatrixXd AmbientModel::omega_at(const Eigen::VectorXd& q) const {
    Eigen::MatrixXd o = base_;
    if (constant_) return o;
    // (d eta)_{ab} = del_a eta_b - del_b eta_a
    for (int b = 0; b < dim(); ++b) {
        if (eta_[static_cast<size_t>(b)].empty()) continue;
        Eigen::VectorXd g = eta_[static_cast<size_t>(b)].gradient(q);
        for (int a = 0; a < dim(); ++a) {
            o(a, b) += g[a];
            o(b, a) -= g[a];
        }
    }
    return o;
}

Eigen::MatrixXd AmbientModel::omega_derivative(const Eigen::VectorXd& q, int c) const {
    Eigen::MatrixXd o = Eigen::MatrixXd::Zero(dim(), dim());
    if (constant_) return o;
    for (int b = 0; b < dim(); ++b) {
        if (eta_[static_cast<size_t>(b)].empty()) continue;
        Eigen::MatrixXd h = eta_[static_cast<size_t>(b)].hessian(q);
        for (int a = 0; a < dim(); ++a) {
            o(a, b) += h(a, c);
            o(b, a) -= h(a, c);
        }
    }
    return o;
}

std::shared_ptr<const AmbientModel> AmbientModel::constant_part() const {
    return std::make_shared<AmbientModel>(n_, base_);
}

namespace {

Eigen::PartialPivLU<Eigen::MatrixXd> invertible_omega_T(const AmbientModel& model,
                                                        const Eigen::VectorXd& q) {
    Eigen::MatrixXd ot = model.omega_at(q).transpose();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(ot);
    const double det = lu.determinant();
    if (std::abs(det) < 1e-8) {
        std::ostringstream msg;
        msg << "degenerate 2-form: |det omega| = " << std::abs(det);
        throw DegenerateFormError(msg.str());
    }
    return lu;
}

} // namespace

Eigen::VectorXd hamiltonian_vector(const AmbientModel& model, const ScalarHamiltonian& H,
                                   const Eigen::VectorXd& q) {
    return invertible_omega_T(model, q).solve(H.gradient(q));
}

Eigen::MatrixXd hamiltonian_vector_jacobian(const AmbientModel& model,
                                            const ScalarHamiltonian& H,
                                            const Eigen::VectorXd& q) {
    auto lu = invertible_omega_T(model, q);
    const Eigen::VectorXd v = lu.solve(H.gradient(q));
    Eigen::MatrixXd jac = lu.solve(H.hessian(q));
    if (!model.is_constant()) {
        // d(omega^{-T}) = -omega^{-T} d(omega^T) omega^{-T}
        for (int c = 0; c < model.dim(); ++c)
            jac.col(c) -= lu.solve(model.omega_derivative(q, c).transpose() * v);
    }
    return jac;
}

namespace {

Eigen::VectorXd reduce_mod1(Eigen::VectorXd q) {
    for (int a = 0; a < q.size(); ++a) {
        q[a] -= std::floor(q[a]);
        if (q[a] >= 1.0) q[a] = 0.0;
    }
    return q;
}

} // namespace

Eigen::VectorXd ham_flow(const AmbientModel& model, const ScalarHamiltonian& H,
                         const Eigen::VectorXd& q0, double T, int steps) {
    std::vector<Eigen::VectorXd> none;
    return reduce_mod1(ham_flow_transport(model, H, q0, none, T, steps));
}

Eigen::VectorXd ham_flow_transport(const AmbientModel& model, const ScalarHamiltonian& H,
                                   const Eigen::VectorXd& q0,
                                   std::vector<Eigen::VectorXd>& vectors, double T, int steps) {
    if (steps < 1) throw Error("ham_flow: steps must be >= 1");
    const double h = T / steps;
    const size_t m = vectors.size();
    Eigen::VectorXd q = q0;

    auto rhs = [&](const Eigen::VectorXd& qq, const std::vector<Eigen::VectorXd>& vv,
                   Eigen::VectorXd& dq, std::vector<Eigen::VectorXd>& dv) {
        dq = hamiltonian_vector(model, H, qq);
        if (m == 0) return;
        const Eigen::MatrixXd jac = hamiltonian_vector_jacobian(model, H, qq);
        dv.resize(m);
        for (size_t s = 0; s < m; ++s) dv[s] = jac * vv[s];
    };

    Eigen::VectorXd k1q, k2q, k3q, k4q;
    std::vector<Eigen::VectorXd> k1v, k2v, k3v, k4v, tmp(m);
    for (int step = 0; step < steps; ++step) {
        rhs(q, vectors, k1q, k1v);
        for (size_t s = 0; s < m; ++s) tmp[s] = vectors[s] + 0.5 * h * k1v[s];
        rhs(q + 0.5 * h * k1q, tmp, k2q, k2v);
        for (size_t s = 0; s < m; ++s) tmp[s] = vectors[s] + 0.5 * h * k2v[s];
        rhs(q + 0.5 * h * k2q, tmp, k3q, k3v);
        for (size_t s = 0; s < m; ++s) tmp[s] = vectors[s] + h * k3v[s];
        rhs(q + h * k3q, tmp, k4q, k4v);
        q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        for (size_t s = 0; s < m; ++s)
            vectors[s] += h / 6.0 * (k1v[s] + 2.0 * k2v[s] + 2.0 * k3v[s] + k4v[s]);
    }
    return q;
}

Eigen::MatrixXd compatible_J_at(const AmbientModel& model, const Eigen::VectorXd& q) {
    const Eigen::MatrixXd omega = model.omega_at(q);
    const Eigen::MatrixXd A = -omega; // = omega^T = G^{-1} pairing with G = I
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.transpose() * A);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < 1e-16) {
        std::ostringstream msg;
        msg << "degenerate 2-form in compatible_J_at: smallest singular value^2 = " << lmin;
        throw DegenerateFormError(msg.str());
    }
    const Eigen::MatrixXd inv_sqrt =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().transpose();
    return A * inv_sqrt; // orthogonal polar factor
}

AmbientSymplectomorphism::AmbientSymplectomorphism(const AmbientModel& model, Eigen::MatrixXi A,
                                                   Eigen::VectorXd c)
    : A_(std::move(A)), c_(std::move(c)) {
    const int d = model.dim();
    if (A_.rows() != d || A_.cols() != d || c_.size() != d)
        throw InvalidMapError("AmbientSymplectomorphism: dimension mismatch");
    const Eigen::MatrixXd Ad = A_.cast<double>();
    const double det = Ad.determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-9)
        throw InvalidMapError("AmbientSymplectomorphism: linear part is not unimodular");
    const Eigen::MatrixXd& base = model.base_form();
    symplectic_ = (Ad.transpose() * base * Ad - base).cwiseAbs().maxCoeff() <= 1e-10;
    const Eigen::MatrixXd J0 = compatible_J_at(*model.constant_part(),
                                               Eigen::VectorXd::Zero(d));
    holomorphic_ = (Ad * J0 - J0 * Ad).cwiseAbs().maxCoeff() <= 1e-10;
}

AmbientSymplectomorphism AmbientSymplectomorphism::translation(const AmbientModel& model,
                                                               Eigen::VectorXd c) {
    return AmbientSymplectomorphism(
        model, Eigen::MatrixXi::Identity(model.dim(), model.dim()), std::move(c));
}

Eigen::VectorXd apply_symplectomorphism(const AmbientSymplectomorphism& map,
                                        const Eigen::VectorXd& q) {
    return reduce_mod1(map.linear_part().cast<double>() * q + map.offset());
}

} // namespace symplab
