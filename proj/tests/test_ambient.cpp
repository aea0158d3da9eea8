#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symplab/ambient.hpp"
#include "symplab/random_fields.hpp"

using namespace symplab;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

std::shared_ptr<const AmbientModel> perturbed_model() {
    std::vector<FourierScalar> eta(4, FourierScalar(4));
    eta[3].add({1, 0, 0, 0}, 1.0 / two_pi); // eta_4 = sin(2 pi q1)/(2 pi)
    return std::make_shared<AmbientModel>(2, AmbientModel::standard_form(2), eta);
}

ScalarHamiltonian sin_of(int coord) {
    ScalarHamiltonian H(4);
    std::vector<int> k(4, 0);
    k[static_cast<size_t>(coord)] = 1;
    H.add(k, 1.0 / two_pi);
    return H;
}
} // namespace

TEST_CASE("standard form has the expected entries") {
    MatrixXd o = AmbientModel::standard_form(2);
    CHECK(o(0, 1) == 1.0);
    CHECK(o(2, 3) == 1.0);
    CHECK(o(1, 0) == -1.0);
    CHECK(o(3, 2) == -1.0);
    CHECK(o.cwiseAbs().sum() == 4.0);
}

TEST_CASE("omega_at with the fixture perturbation") {
    auto m = perturbed_model();
    // at q = 0: cos(0) = 1 adds +-1 at entries (1,4)/(4,1)
    MatrixXd o = m->omega_at(VectorXd::Zero(4));
    MatrixXd expected = AmbientModel::standard_form(2);
    expected(0, 3) += 1.0;
    expected(3, 0) -= 1.0;
    CHECK((o - expected).cwiseAbs().maxCoeff() < 1e-14);

    // at q1 = 1/4 the cosine vanishes and the base form remains
    VectorXd q = VectorXd::Zero(4);
    q[0] = 0.25;
    CHECK((m->omega_at(q) - AmbientModel::standard_form(2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("omega_at is antisymmetric on random points and models") {
    Rng rng(3);
    auto m = perturbed_model();
    for (int k = 0; k < 20; ++k) {
        VectorXd q(4);
        for (int a = 0; a < 4; ++a) q[a] = rng.uniform();
        MatrixXd o = m->omega_at(q);
        CHECK((o + o.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("omega_derivative matches finite differences") {
    auto m = perturbed_model();
    Rng rng(5);
    VectorXd q(4);
    for (int a = 0; a < 4; ++a) q[a] = rng.uniform();
    const double h = 1e-6;
    for (int c = 0; c < 4; ++c) {
        VectorXd qp = q, qm = q;
        qp[c] += h;
        qm[c] -= h;
        MatrixXd fd = (m->omega_at(qp) - m->omega_at(qm)) / (2 * h);
        CHECK((m->omega_derivative(q, c) - fd).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("hamiltonian vectors solve iota_V omega = dH") {
    auto m = AmbientModel::standard(2);

    VectorXd q = VectorXd::Zero(4);
    VectorXd v = hamiltonian_vector(*m, sin_of(2), q);
    VectorXd expected(4);
    expected << 0, 0, 0, -1;
    CHECK((v - expected).cwiseAbs().maxCoeff() < 1e-14);

    v = hamiltonian_vector(*m, sin_of(0), q);
    expected << 0, -1, 0, 0;
    CHECK((v - expected).cwiseAbs().maxCoeff() < 1e-14);

    ScalarHamiltonian constant(4);
    constant.add_constant(2.5);
    CHECK(hamiltonian_vector(*m, constant, q).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian vector residual on perturbed models") {
    auto m = perturbed_model();
    Rng rng(7);
    ScalarHamiltonian H = random_fourier(4, 2, 8, 1.0, rng);
    for (int k = 0; k < 20; ++k) {
        VectorXd q(4);
        for (int a = 0; a < 4; ++a) q[a] = rng.uniform();
        VectorXd v = hamiltonian_vector(*m, H, q);
        VectorXd residual = m->omega_at(q).transpose() * v - H.gradient(q);
        CHECK(residual.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("degenerate forms are rejected") {
    MatrixXd base = MatrixXd::Zero(4, 4);
    base(0, 1) = 1.0;
    base(1, 0) = -1.0; // rank 2: degenerate
    AmbientModel m(2, base);
    ScalarHamiltonian H = sin_of(0);
    CHECK_THROWS_AS(hamiltonian_vector(m, H, VectorXd::Zero(4)), DegenerateFormError);
}

TEST_CASE("ham_flow fixtures") {
    auto m = AmbientModel::standard(2);

    ScalarHamiltonian constant(4);
    constant.add_constant(1.0);
    VectorXd q0(4);
    q0 << 0.3, 0.4, 0.5, 0.6;
    CHECK((ham_flow(*m, constant, q0, 1.0, 10) - q0).cwiseAbs().maxCoeff() < 1e-14);

    // V = (0,0,0,-cos(2 pi q3)) and q3 is constant along the flow.
    VectorXd q1 = ham_flow(*m, sin_of(2), VectorXd::Zero(4), 0.5, 100);
    VectorXd expected(4);
    expected << 0, 0, 0, 0.5; // -0.5 mod 1
    CHECK((q1 - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("energy is conserved along the flow") {
    auto m = perturbed_model();
    Rng rng(11);
    ScalarHamiltonian H = random_fourier(4, 1, 6, 0.1, rng);
    VectorXd q0(4);
    for (int a = 0; a < 4; ++a) q0[a] = rng.uniform();
    VectorXd q1 = ham_flow(*m, H, q0, 1.0, 200);
    CHECK(std::abs(H.value(q1) - H.value(q0)) < 1e-8);
}

TEST_CASE("flow error decays at fourth order when halving steps") {
    auto m = perturbed_model();
    Rng rng(13);
    ScalarHamiltonian H = random_fourier(4, 1, 6, 0.3, rng);
    VectorXd q0(4);
    for (int a = 0; a < 4; ++a) q0[a] = rng.uniform();
    std::vector<Eigen::VectorXd> none;
    VectorXd ref = ham_flow_transport(*m, H, q0, none, 1.0, 1024);
    auto err = [&](int steps) {
        return (ham_flow_transport(*m, H, q0, none, 1.0, steps) - ref).cwiseAbs().maxCoeff();
    };
    const double e16 = err(16), e32 = err(32);
    CHECK(e32 > 1e-15);
    CHECK(e16 / e32 > 8.0);
    CHECK(e16 / e32 < 40.0);
}

TEST_CASE("variational transport matches finite differences of the flow") {
    auto m = perturbed_model();
    Rng rng(17);
    ScalarHamiltonian H = random_fourier(4, 1, 6, 0.5, rng);
    VectorXd q0(4), v0(4);
    for (int a = 0; a < 4; ++a) q0[a] = rng.uniform();
    for (int a = 0; a < 4; ++a) v0[a] = rng.normal();

    std::vector<Eigen::VectorXd> vecs{v0};
    ham_flow_transport(*m, H, q0, vecs, 1.0, 200);

    const double eps = 1e-6;
    std::vector<Eigen::VectorXd> none;
    VectorXd plus = ham_flow_transport(*m, H, q0 + eps * v0, none, 1.0, 200);
    VectorXd minus = ham_flow_transport(*m, H, q0 - eps * v0, none, 1.0, 200);
    VectorXd fd = (plus - minus) / (2 * eps);
    CHECK((vecs[0] - fd).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("compatible J for the standard form is the block structure") {
    auto m = AmbientModel::standard(2);
    MatrixXd J = compatible_J_at(*m, VectorXd::Zero(4));
    MatrixXd expected = MatrixXd::Zero(4, 4);
    expected(0, 1) = -1.0;
    expected(1, 0) = 1.0;
    expected(2, 3) = -1.0;
    expected(3, 2) = 1.0;
    CHECK((J - expected).cwiseAbs().maxCoeff() < 1e-12);
    // sign fixed by tamedness: omega(e1, J e1) = 1 > 0
    VectorXd e1 = VectorXd::Unit(4, 0);
    CHECK(e1.dot(m->base_form() * (J * e1)) == doctest::Approx(1.0));
}

TEST_CASE("compatible J properties on random perturbed models") {
    Rng rng(19);
    auto m = perturbed_model();
    for (int k = 0; k < 100; ++k) {
        VectorXd q(4);
        for (int a = 0; a < 4; ++a) q[a] = rng.uniform();
        MatrixXd J = compatible_J_at(*m, q);
        MatrixXd omega = m->omega_at(q);
        CHECK((J * J + MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((J.transpose() * omega * J - omega).cwiseAbs().maxCoeff() < 1e-10);
        for (int t = 0; t < 4; ++t) {
            VectorXd u(4);
            for (int a = 0; a < 4; ++a) u[a] = rng.normal();
            CHECK(u.dot(omega * (J * u)) > 0.0);
        }
    }
}

TEST_CASE("polar decomposition agrees with an SVD oracle") {
    Rng rng(23);
    auto m = perturbed_model();
    for (int k = 0; k < 10; ++k) {
        VectorXd q(4);
        for (int a = 0; a < 4; ++a) q[a] = rng.uniform();
        MatrixXd A = -m->omega_at(q);
        Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
        MatrixXd oracle = svd.matrixU() * svd.matrixV().transpose();
        CHECK((compatible_J_at(*m, q) - oracle).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("symplectomorphism construction and application") {
    auto m = AmbientModel::standard(2);

    VectorXd c(4);
    c << 0.1, 0.2, 0.3, 0.4;
    AmbientSymplectomorphism tr = AmbientSymplectomorphism::translation(*m, c);
    CHECK(tr.is_symplectic());
    CHECK(tr.is_holomorphic());
    CHECK((apply_symplectomorphism(tr, VectorXd::Zero(4)) - c).cwiseAbs().maxCoeff() < 1e-15);

    // swap of the two symplectic R^2 factors
    Eigen::MatrixXi A = Eigen::MatrixXi::Zero(4, 4);
    A(0, 2) = A(1, 3) = A(2, 0) = A(3, 1) = 1;
    AmbientSymplectomorphism swap(*m, A, VectorXd::Zero(4));
    CHECK(swap.is_symplectic());
    CHECK(swap.is_holomorphic());
    VectorXd q(4);
    q << 0.1, 0.2, 0.3, 0.4;
    VectorXd img = apply_symplectomorphism(swap, q);
    VectorXd expected(4);
    expected << 0.3, 0.4, 0.1, 0.2;
    CHECK((img - expected).cwiseAbs().maxCoeff() < 1e-15);

    AmbientSymplectomorphism identity(*m, Eigen::MatrixXi::Identity(4, 4), VectorXd::Zero(4));
    Rng rng(29);
    for (int k = 0; k < 10; ++k) {
        VectorXd p(4);
        for (int a = 0; a < 4; ++a) p[a] = rng.uniform();
        CHECK((apply_symplectomorphism(identity, p) - p).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("non-unimodular linear parts are rejected") {
    auto m = AmbientModel::standard(2);
    Eigen::MatrixXi A = Eigen::MatrixXi::Identity(4, 4);
    A(0, 0) = 2;
    CHECK_THROWS_AS(AmbientSymplectomorphism(*m, A, VectorXd::Zero(4)), InvalidMapError);
}
