#ifndef SYMPLAB_AMBIENT_HPP
#define SYMPLAB_AMBIENT_HPP

#include <Eigen/Dense>

#include <memory>
#include <vector>

#include "symplab/errors.hpp"
#include "symplab/grid.hpp"

namespace symplab {

/** Real trigonometric polynomial on a torus of arbitrary dimension:
 *   value(q) = sum_t amplitude_t * sin(2 pi freq_t . q + phase_t).
 * A constant term is freq = 0 with phase pi/2. Values, gradients and
 * Hessians are analytic. */
class FourierScalar {
  public:
    struct Term {
        std::vector<int> freq;
        double amplitude = 0.0;
        double phase = 0.0;
    };

    FourierScalar() = default;
    explicit FourierScalar(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    bool empty() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    FourierScalar& add(std::vector<int> freq, double amplitude, double phase = 0.0);
    FourierScalar& add_constant(double c);

    double value(const Eigen::VectorXd& q) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& q) const;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& q) const;

    /** Largest |freq| entry over all terms. */
    int bandwidth() const;

    /** Samples a 2-dimensional series on a grid. */
    ScalarGrid sample(TorusGrid g) const;

  private:
    int dim_ = 0;
    std::vector<Term> terms_;
};

/** Ambient Hamiltonian H : T^{2n} -> R. */
using ScalarHamiltonian = FourierScalar;

/** Flat torus T^{2n} carrying omega(q) = Omega + d eta(q): a constant
 * antisymmetric base form plus the exterior derivative of an analytic 1-form
 * perturbation, so omega is closed by construction. */
class AmbientModel {
  public:
    AmbientModel(int half_dim, Eigen::MatrixXd base_form,
                 std::vector<FourierScalar> eta = {});

    /** Standard form on T^{2n}: blocks [[0,1],[-1,0]] down the diagonal. */
    static Eigen::MatrixXd standard_form(int half_dim);
    static std::shared_ptr<const AmbientModel> standard(int half_dim);

    int half_dim() const { return n_; }
    int dim() const { return 2 * n_; }
    const Eigen::MatrixXd& base_form() const { return base_; }
    const std::vector<FourierScalar>& eta() const { return eta_; }
    bool is_constant() const { return constant_; }

    Eigen::MatrixXd omega_at(const Eigen::VectorXd& q) const;
    /** Partial derivative of the matrix field omega along coordinate c. */
    Eigen::MatrixXd omega_derivative(const Eigen::VectorXd& q, int c) const;

    /** Same model with the perturbation stripped. */
    std::shared_ptr<const AmbientModel> constant_part() const;

  private:
    int n_ = 0;
    Eigen::MatrixXd base_;
    std::vector<FourierScalar> eta_;
    bool constant_ = true;
};

/** Solves iota_V omega = dH at q, i.e. omega(q)^T V = grad H(q). */
Eigen::VectorXd hamiltonian_vector(const AmbientModel& model, const ScalarHamiltonian& H,
                                   const Eigen::VectorXd& q);

/** Jacobian matrix of the Hamiltonian vector field at q (analytic). */
Eigen::MatrixXd hamiltonian_vector_jacobian(const AmbientModel& model,
                                            const ScalarHamiltonian& H,
                                            const Eigen::VectorXd& q);

/** RK4 flow of V_H from q0 for time T; the result is reduced mod 1. */
Eigen::VectorXd ham_flow(const AmbientModel& model, const ScalarHamiltonian& H,
                         const Eigen::VectorXd& q0, double T, int steps);

/** RK4 flow transporting tangent vectors by the variational equation
 * v' = DV_H(q) v alongside the trajectory. Returns the unreduced endpoint;
 * the vectors are overwritten in place. */
Eigen::VectorXd ham_flow_transport(const AmbientModel& model, const ScalarHamiltonian& H,
                                   const Eigen::VectorXd& q0,
                                   std::vector<Eigen::VectorXd>& vectors, double T, int steps);

/** omega-compatible almost complex structure at q: with the identity metric,
 * the orthogonal polar factor of A = -omega(q). Satisfies J^2 = -I,
 * omega(Ju, Jv) = omega(u, v) and omega(u, Ju) > 0 for u != 0. */
Eigen::MatrixXd compatible_J_at(const AmbientModel& model, const Eigen::VectorXd& q);

/** Affine torus map q -> Aq + c mod 1 with unimodular integer A. */
class AmbientSymplectomorphism {
  public:
    AmbientSymplectomorphism(const AmbientModel& model, Eigen::MatrixXi A, Eigen::VectorXd c);

    static AmbientSymplectomorphism translation(const AmbientModel& model, Eigen::VectorXd c);

    const Eigen::MatrixXi& linear_part() const { return A_; }
    const Eigen::VectorXd& offset() const { return c_; }
    bool is_symplectic() const { return symplectic_; }
    /** Commutes with the compatible J of the model's constant part. */
    bool is_holomorphic() const { return holomorphic_; }

  private:
    Eigen::MatrixXi A_;
    Eigen::VectorXd c_;
    bool symplectic_ = false;
    bool holomorphic_ = false;
};

Eigen::VectorXd apply_symplectomorphism(const AmbientSymplectomorphism& map,
                                        const Eigen::VectorXd& q);

} // namespace symplab

#endif
