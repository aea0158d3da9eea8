#ifndef SYMPLAB_EMBEDDING_HPP
#define SYMPLAB_EMBEDDING_HPP

#include <memory>
#include <optional>

#include "symplab/ambient.hpp"
#include "symplab/calculus.hpp"
#include "symplab/grid.hpp"

namespace symplab {

/** Section of f^*TM over the grid, globally trivialized by the flat ambient
 * chart: one R^{2n} vector per grid node, stored point-major. */
class TangentField {
  public:
    TangentField() = default;
    TangentField(TorusGrid g, int dim)
        : grid(g), dim(dim), data(static_cast<size_t>(g.size()) * dim, 0.0) {}

    static TangentField sample(
        TorusGrid g, int dim,
        const std::function<Eigen::VectorXd(double, double)>& f);

    /** Constant section. */
    static TangentField constant(TorusGrid g, const Eigen::VectorXd& v);

    Eigen::Map<Eigen::VectorXd> at(int i, int j) {
        return {data.data() + static_cast<size_t>(grid.index(i, j)) * dim, dim};
    }
    Eigen::Map<const Eigen::VectorXd> at(int i, int j) const {
        return {data.data() + static_cast<size_t>(grid.index(i, j)) * dim, dim};
    }

    ScalarGrid component(int c) const;
    double max_norm() const;

    TangentField& operator+=(const TangentField& o);
    TangentField& operator-=(const TangentField& o);
    TangentField& operator*=(double s);

    TorusGrid grid;
    int dim = 0;
    std::vector<double> data;
};

TangentField operator+(TangentField a, const TangentField& b);
TangentField operator-(TangentField a, const TangentField& b);
TangentField operator*(double s, TangentField a);

/** Embedding (or immersion) f of the grid torus into the ambient model,
 * stored as a lift F : [0,1)^2 -> R^{2n} plus the integer winding matrix W
 * with F(x+1,y) = F(x,y) + W e1 and F(x,y+1) = F(x,y) + W e2.
 *
 * The differential and pullback density are derived spectrally from the
 * periodic part of the lift and cached at construction. Construction rejects
 * maps whose Gram determinant degenerates (not an immersion); positivity of
 * the pullback is enforced only when requested. */
class Embedding {
  public:
    Embedding(std::shared_ptr<const AmbientModel> model, TorusGrid grid,
              Eigen::MatrixXi winding, std::vector<double> lift,
              bool require_positive_pullback = false);

    /** f0(x,y) = (x, y, 0, ..., 0). */
    static Embedding flat(std::shared_ptr<const AmbientModel> model, TorusGrid grid);
    /** f_a(x,y) = (x + (a/2pi) sin(2 pi x), y, 0, ..., 0). */
    static Embedding sheared(std::shared_ptr<const AmbientModel> model, TorusGrid grid,
                             double a);
    static Embedding from_map(std::shared_ptr<const AmbientModel> model, TorusGrid grid,
                              Eigen::MatrixXi winding,
                              const std::function<Eigen::VectorXd(double, double)>& f,
                              bool require_positive_pullback = false);

    const AmbientModel& model() const { return *model_; }
    std::shared_ptr<const AmbientModel> model_ptr() const { return model_; }
    TorusGrid grid() const { return grid_; }
    int dim() const { return model_->dim(); }
    const Eigen::MatrixXi& winding() const { return winding_; }

    Eigen::Map<const Eigen::VectorXd> point(int i, int j) const {
        return {lift_.data() + static_cast<size_t>(grid_.index(i, j)) * dim(), dim()};
    }
    const std::vector<double>& lift() const { return lift_; }

    /** Columns of the differential: d_x F and d_y F per node. */
    const TangentField& dfx() const { return dfx_; }
    const TangentField& dfy() const { return dfy_; }
    /** Pullback f^* omega as a 2-form density s(x,y). */
    const TwoFormGrid& pullback() const { return pullback_; }

    double min_gram_det() const { return min_gram_det_; }

  private:
    std::shared_ptr<const AmbientModel> model_;
    TorusGrid grid_;
    Eigen::MatrixXi winding_;
    std::vector<double> lift_;
    TangentField dfx_, dfy_;
    TwoFormGrid pullback_;
    double min_gram_det_ = 0.0;
};

/** sup-norm residual of i^* omega = sigma. */
double symplectic_residual(const Embedding& f, const AreaForm& sigma);

/** alpha_v = omega(v, dF e1) dx + omega(v, dF e2) dy. */
OneFormGrid alpha(const Embedding& f, const TangentField& v);

/** Tangential / omega-orthogonal decomposition v = tau + xi with tau = dF X
 * and alpha_xi = 0 pointwise. */
struct SplitResult {
    TangentField tangential;
    TangentField orthogonal;
    SurfaceField coefficients;
    double orthogonality_residual = 0.0;
};

SplitResult split_tangent(const Embedding& f, const TangentField& v);

enum class Verdict { exact, closed_not_exact, not_closed };

const char* verdict_name(Verdict v);

struct Classification {
    double closedness_residual = 0.0;
    double period_x = 0.0, period_y = 0.0;
    std::optional<ScalarGrid> potential; // present iff exact
    Verdict verdict = Verdict::not_closed;
};

Classification classify(const Embedding& f, const TangentField& v, double closed_tol = 1e-8,
                        double period_tol = 1e-8);

/** Restriction of the ambient Hamiltonian vector field: v(x,y) = V_H(f(x,y)). */
TangentField hamiltonian_restriction(const Embedding& f, const ScalarHamiltonian& H);

/** dF X: the section tangent to the surface with coefficients X. */
TangentField tangential_lift(const Embedding& f, const SurfaceField& X);

/** f composed with the grid diffeomorphism: (f . phi)(x) = W phi(x) +
 * periodic-part(f)(phi(x)); throws MeshFoldError for folded phi. */
Embedding reparametrize(const Embedding& f, const GridDiffeo& phi,
                        InterpMode mode = InterpMode::bicubic);

/** phi . f for an ambient affine symplectomorphism: lift A F + c, winding
 * A W. Requires the symplectic flag. */
Embedding compose_ambient(const AmbientSymplectomorphism& map, const Embedding& f);

/** Compatible J evaluated along the image, one matrix per node. */
std::vector<Eigen::MatrixXd> compatible_J_along(const Embedding& f, const AmbientModel& model);

} // namespace symplab

#endif
