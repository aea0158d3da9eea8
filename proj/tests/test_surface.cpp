#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "symplab/calculus.hpp"
#include "symplab/fft.hpp"
#include "symplab/interpolate.hpp"
#include "symplab/random_fields.hpp"

using namespace symplab;

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;
const TorusGrid g32(32, 32);
const TorusGrid g64(64, 64);

ScalarGrid sinx(TorusGrid g) {
    return ScalarGrid::sample(g, [](double x, double) { return std::sin(two_pi * x) / two_pi; });
}
} // namespace

TEST_CASE("exterior derivative of a scalar matches the analytic derivative") {
    OneFormGrid d = exterior_derivative(sinx(g32));
    ScalarGrid cosx =
        ScalarGrid::sample(g32, [](double x, double) { return std::cos(two_pi * x); });
    CHECK((d.a - cosx).max_abs() < 1e-12);
    CHECK(d.b.max_abs() < 1e-13);
}

TEST_CASE("constant 1-forms are closed") {
    OneFormGrid alpha(ScalarGrid(g32, 0.7), ScalarGrid(g32, 0.0));
    CHECK(exterior_derivative(alpha).density.max_abs() < 1e-14);
}

TEST_CASE("d compose d vanishes on random band-limited fields") {
    Rng rng(7);
    for (int k = 0; k < 5; ++k) {
        ScalarGrid h = random_band_limited(g32, 2, 0.5, rng);
        TwoFormGrid dd = exterior_derivative(exterior_derivative(h));
        CHECK(dd.density.max_abs() < 1e-12);
    }
}

TEST_CASE("integration is exact on band-limited densities") {
    CHECK(integrate(TwoFormGrid(ScalarGrid(g32, 1.0))) == doctest::Approx(1.0).epsilon(1e-15));
    ScalarGrid cos2 = ScalarGrid::sample(g32, [](double x, double) {
        const double c = std::cos(two_pi * x);
        return c * c;
    });
    CHECK(integrate(TwoFormGrid(cos2)) == doctest::Approx(0.5).epsilon(1e-14));
    AreaForm sigma = AreaForm::constant(g32, 1.0);
    CHECK(integrate_scalar(ScalarGrid(g32, 1.0), sigma) == doctest::Approx(1.0));
}

TEST_CASE("hodge split recovers the analytic potential") {
    ScalarGrid cosx =
        ScalarGrid::sample(g32, [](double x, double) { return std::cos(two_pi * x); });
    HodgeSplit s = hodge_split(OneFormGrid(cosx, ScalarGrid(g32)));
    CHECK(std::abs(s.period_x) < 1e-13);
    CHECK(std::abs(s.period_y) < 1e-13);
    CHECK(s.is_exact(1e-12));
    CHECK((s.potential - sinx(g32)).max_abs() < 1e-12);
    CHECK(s.reconstruction_residual < 1e-12);
}

TEST_CASE("hodge split flags harmonic representatives") {
    HodgeSplit s = hodge_split(OneFormGrid(ScalarGrid(g32, 0.7), ScalarGrid(g32)));
    CHECK(std::abs(s.period_x - 0.7) < 1e-13);
    CHECK(s.period_y == doctest::Approx(0.0));
    CHECK_FALSE(s.is_exact(1e-12));
    CHECK(s.potential.max_abs() < 1e-13);
}

TEST_CASE("hodge split round-trips d of random potentials") {
    Rng rng(11);
    for (int k = 0; k < 5; ++k) {
        ScalarGrid h = random_band_limited(g32, 6, 1.0, rng);
        const double mh = h.mean();
        for (double& x : h.v) x -= mh;
        HodgeSplit s = hodge_split(exterior_derivative(h));
        CHECK(std::abs(s.period_x) < 1e-12);
        CHECK(std::abs(s.period_y) < 1e-12);
        CHECK((s.potential - h).max_abs() < 1e-10);
    }
}

TEST_CASE("hodge split rejects non-closed input") {
    ScalarGrid cosx =
        ScalarGrid::sample(g32, [](double x, double) { return std::cos(two_pi * x); });
    CHECK_THROWS_AS(hodge_split(OneFormGrid(ScalarGrid(g32), cosx)), NonClosedFormError);
}

TEST_CASE("periods are linear in the form") {
    Rng rng(13);
    OneFormGrid a(random_band_limited(g32, 4, 1.0, rng), random_band_limited(g32, 4, 1.0, rng));
    OneFormGrid b(random_band_limited(g32, 4, 1.0, rng), random_band_limited(g32, 4, 1.0, rng));
    const double pa = a.a.mean(), pb = b.a.mean();
    OneFormGrid sum(a.a + b.a, a.b + b.b);
    CHECK(sum.a.mean() == doctest::Approx(pa + pb).epsilon(1e-13));
}

TEST_CASE("poisson solve inverts the flat laplacian") {
    ScalarGrid f =
        ScalarGrid::sample(g32, [](double x, double) { return std::sin(two_pi * x); });
    ScalarGrid u = poisson_solve(f);
    ScalarGrid expected = ScalarGrid::sample(g32, [](double x, double) {
        return -std::sin(two_pi * x) / (two_pi * two_pi);
    });
    CHECK((u - expected).max_abs() < 1e-14);

    CHECK(poisson_solve(ScalarGrid(g32, 0.0)).max_abs() == 0.0);

    Rng rng(17);
    ScalarGrid grnd = random_band_limited(g32, 5, 1.0, rng);
    const double m = grnd.mean();
    for (double& x : grnd.v) x -= m;
    ScalarGrid round = deriv_x(deriv_x(poisson_solve(grnd))) +
                       deriv_y(deriv_y(poisson_solve(grnd)));
    CHECK((round - grnd).max_abs() < 1e-10);
}

TEST_CASE("poisson solve rejects nonzero mean") {
    CHECK_THROWS_AS(poisson_solve(ScalarGrid(g32, 0.5)), NonZeroMeanError);
}

TEST_CASE("surface hamiltonian field satisfies the sign convention") {
    ScalarGrid psi =
        ScalarGrid::sample(g32, [](double x, double) { return std::cos(two_pi * x) / two_pi; });
    AreaForm sigma = AreaForm::constant(g32, 1.0);
    SurfaceField X = surface_hamiltonian_field(psi, sigma);
    ScalarGrid expected =
        ScalarGrid::sample(g32, [](double x, double) { return -std::sin(two_pi * x); });
    CHECK(X.x1.max_abs() < 1e-13);
    CHECK((X.x2 - expected).max_abs() < 1e-12);

    SurfaceField zero = surface_hamiltonian_field(ScalarGrid(g32, 3.0), sigma);
    CHECK(zero.x1.max_abs() == 0.0);
    CHECK(zero.x2.max_abs() == 0.0);
}

TEST_CASE("iota_X sigma is closed for hamiltonian fields with random density") {
    Rng rng(19);
    for (int k = 0; k < 4; ++k) {
        ScalarGrid rho = random_band_limited(g32, 3, 0.3, rng);
        for (double& v : rho.v) v += 1.0;
        AreaForm sigma{rho};
        ScalarGrid psi = random_band_limited(g32, 4, 1.0, rng);
        SurfaceField X = surface_hamiltonian_field(psi, sigma);
        TwoFormGrid d = exterior_derivative(contract_area_form(X, sigma));
        CHECK(d.density.max_abs() < 1e-10);
    }
}

TEST_CASE("area-preserving fields with harmonic part still preserve sigma") {
    Rng rng(23);
    AreaForm sigma = AreaForm::constant(g32, 1.0);
    SurfaceField X = area_preserving_field(random_band_limited(g32, 4, 1.0, rng), 0.4, -0.2,
                                           sigma);
    CHECK(exterior_derivative(contract_area_form(X, sigma)).density.max_abs() < 1e-10);
}

TEST_CASE("poisson bracket: antisymmetry, stokes, fixture value") {
    AreaForm sigma = AreaForm::constant(g32, 1.0);
    ScalarGrid p1 =
        ScalarGrid::sample(g32, [](double x, double) { return std::cos(two_pi * x) / two_pi; });
    ScalarGrid p2 =
        ScalarGrid::sample(g32, [](double, double y) { return std::cos(two_pi * y) / two_pi; });

    CHECK(poisson_bracket(p1, p1, sigma).max_abs() < 1e-13);

    Rng rng(29);
    ScalarGrid r1 = random_band_limited(g32, 4, 1.0, rng);
    ScalarGrid r2 = random_band_limited(g32, 4, 1.0, rng);
    CHECK(std::abs(integrate_scalar(poisson_bracket(r1, r2, sigma), sigma)) < 1e-10);
    ScalarGrid anti = poisson_bracket(r1, r2, sigma) + poisson_bracket(r2, r1, sigma);
    CHECK(anti.max_abs() < 1e-12);

    // {cos(2 pi x)/2pi, cos(2 pi y)/2pi} = -sin(2 pi x) sin(2 pi y) under the
    // module convention iota_X sigma = -d psi.
    ScalarGrid bracket = poisson_bracket(p1, p2, sigma);
    ScalarGrid expected = ScalarGrid::sample(g32, [](double x, double y) {
        return -std::sin(two_pi * x) * std::sin(two_pi * y);
    });
    CHECK((bracket - expected).max_abs() < 1e-10);
}

TEST_CASE("flow of the zero field is the identity") {
    GridDiffeo phi = flow_diffeo(SurfaceField(g32), 1.0, 10);
    CHECK(phi.displacement_norm() == 0.0);
    CHECK(phi.min_jacobian() == doctest::Approx(1.0));
}

TEST_CASE("flow of a constant field is a translation") {
    SurfaceField X(g32);
    for (double& v : X.x1.v) v = 0.37;
    GridDiffeo phi = flow_diffeo(X, 1.0, 20);
    CHECK(std::abs(phi.disp_x.at(5, 9) - 0.37) < 1e-13);
    CHECK(phi.disp_y.max_abs() < 1e-13);
}

TEST_CASE("area-preserving flows preserve the pullback of sigma") {
    Rng rng(31);
    AreaForm sigma = AreaForm::constant(g64, 1.0);
    ScalarGrid psi = random_band_limited(g64, 2, 0.01, rng);
    SurfaceField X = surface_hamiltonian_field(psi, sigma);
    GridDiffeo phi = flow_diffeo(X, 1.0, 100, InterpMode::fourier);
    ScalarGrid back = diffeo_pullback_density(phi, sigma, InterpMode::fourier);
    CHECK((back - sigma.rho).max_abs() < 1e-6);
    CHECK(std::abs(back.mean() - sigma.total_area()) < 1e-8);
}

TEST_CASE("flow convergence is fourth order in the step count") {
    Rng rng(37);
    AreaForm sigma = AreaForm::constant(g32, 1.0);
    ScalarGrid psi = random_band_limited(g32, 2, 0.01, rng);
    SurfaceField X = surface_hamiltonian_field(psi, sigma);
    GridDiffeo ref = flow_diffeo(X, 1.0, 256, InterpMode::fourier);
    auto err = [&](int steps) {
        GridDiffeo phi = flow_diffeo(X, 1.0, steps, InterpMode::fourier);
        return std::max((phi.disp_x - ref.disp_x).max_abs(),
                        (phi.disp_y - ref.disp_y).max_abs());
    };
    const double e8 = err(8), e16 = err(16);
    CHECK(e16 > 1e-14); // above rounding so the ratio is meaningful
    CHECK(e8 / e16 > 8.0);
    CHECK(e8 / e16 < 40.0);
}

TEST_CASE("diffeo inverse composes to the identity") {
    Rng rng(41);
    AreaForm sigma = AreaForm::constant(g32, 1.0);
    SurfaceField X = surface_hamiltonian_field(random_band_limited(g32, 2, 0.01, rng), sigma);
    GridDiffeo phi = flow_diffeo(X, 1.0, 50, InterpMode::fourier);
    GridDiffeo inv = phi.inverse(InterpMode::fourier);
    // phi off-grid is defined by its trigonometric interpolant; the inverse
    // must hit each grid node through exactly that extension.
    ScalarSampler dx(phi.disp_x, InterpMode::fourier), dy(phi.disp_y, InterpMode::fourier);
    double worst = 0.0;
    for (int i = 0; i < g32.nx; i += 3)
        for (int j = 0; j < g32.ny; j += 3) {
            const double px = inv.map_x(i, j), py = inv.map_y(i, j);
            worst = std::max(worst, std::abs(px + dx(px, py) - g32.x(i)));
            worst = std::max(worst, std::abs(py + dy(px, py) - g32.y(j)));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("interpolation accuracy: fourier is exact, bicubic converges") {
    ScalarGrid f = ScalarGrid::sample(g64, [](double x, double y) {
        return std::sin(two_pi * (2 * x + y)) + 0.3 * std::cos(two_pi * 3 * y);
    });
    auto truth = [](double x, double y) {
        return std::sin(two_pi * (2 * x + y)) + 0.3 * std::cos(two_pi * 3 * y);
    };
    FourierInterpolant fi(f);
    BicubicInterpolant bi(f);
    double worst_f = 0.0, worst_b = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double x = 0.013 * k + 0.001, y = 0.029 * k + 0.002;
        worst_f = std::max(worst_f, std::abs(fi(x, y) - truth(x, y)));
        worst_b = std::max(worst_b, std::abs(bi(x, y) - truth(x, y)));
    }
    CHECK(worst_f < 1e-12);
    CHECK(worst_b < 5e-3);
}

TEST_CASE("flows that cluster points beyond grid resolution are rejected") {
    // Strong compression toward x = 0: the expansion near the repeller at
    // x = 1/2 exceeds what the grid can represent, so the discrete Jacobian
    // degenerates and the flow must report a fold.
    SurfaceField X(g32);
    for (int i = 0; i < g32.nx; ++i)
        for (int j = 0; j < g32.ny; ++j)
            X.x1.at(i, j) = -4.0 * std::sin(two_pi * g32.x(i)) / two_pi;
    CHECK_THROWS_AS(flow_diffeo(X, 3.0, 120, InterpMode::fourier), MeshFoldError);
}
