#ifndef SYMPLAB_GRID_HPP
#define SYMPLAB_GRID_HPP

#include <functional>
#include <vector>

#include "symplab/errors.hpp"

namespace symplab {

/** Periodic collocation grid on the flat 2-torus [0,1)^2.
 *
 * Points are (i/nx, j/ny). Fields over the grid are stored row-major with
 * the x index slower: flat index = i*ny + j. */
struct TorusGrid {
    int nx = 0, ny = 0;

    TorusGrid() = default;
    TorusGrid(int nx_, int ny_) : nx(nx_), ny(ny_) {
        if (nx < 8 || ny < 8) throw Error("TorusGrid: sizes must be at least 8");
    }

    int size() const { return nx * ny; }
    int index(int i, int j) const { return i * ny + j; }
    double x(int i) const { return static_cast<double>(i) / nx; }
    double y(int j) const { return static_cast<double>(j) / ny; }

    bool operator==(const TorusGrid&) const = default;
};

/** Real scalar field sampled on a TorusGrid. */
class ScalarGrid {
  public:
    ScalarGrid() = default;
    explicit ScalarGrid(TorusGrid g, double fill = 0.0)
        : grid(g), v(static_cast<size_t>(g.size()), fill) {}

    static ScalarGrid sample(TorusGrid g, const std::function<double(double, double)>& f) {
        ScalarGrid out(g);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) out.at(i, j) = f(g.x(i), g.y(j));
        return out;
    }

    double& at(int i, int j) { return v[static_cast<size_t>(grid.index(i, j))]; }
    double at(int i, int j) const { return v[static_cast<size_t>(grid.index(i, j))]; }

    double mean() const;
    double max_abs() const;
    double min() const;
    double max() const;

    ScalarGrid& operator+=(const ScalarGrid& o);
    ScalarGrid& operator-=(const ScalarGrid& o);
    ScalarGrid& operator*=(double s);

    TorusGrid grid;
    std::vector<double> v;
};

ScalarGrid operator+(ScalarGrid a, const ScalarGrid& b);
ScalarGrid operator-(ScalarGrid a, const ScalarGrid& b);
ScalarGrid operator*(double s, ScalarGrid a);
/** Pointwise product. */
ScalarGrid hadamard(const ScalarGrid& a, const ScalarGrid& b);
/** Pointwise quotient; denominator must not vanish. */
ScalarGrid quotient(const ScalarGrid& a, const ScalarGrid& b);

/** 1-form a dx + b dy on the grid. */
struct OneFormGrid {
    ScalarGrid a, b;

    OneFormGrid() = default;
    explicit OneFormGrid(TorusGrid g) : a(g), b(g) {}
    OneFormGrid(ScalarGrid a_, ScalarGrid b_) : a(std::move(a_)), b(std::move(b_)) {}

    TorusGrid grid() const { return a.grid; }
};

/** 2-form g dx ^ dy on the grid. */
struct TwoFormGrid {
    ScalarGrid density;

    TwoFormGrid() = default;
    explicit TwoFormGrid(TorusGrid g) : density(g) {}
    explicit TwoFormGrid(ScalarGrid d) : density(std::move(d)) {}

    TorusGrid grid() const { return density.grid; }
};

/** Vector field X = (x1, x2) on the surface. */
struct SurfaceField {
    ScalarGrid x1, x2;

    SurfaceField() = default;
    explicit SurfaceField(TorusGrid g) : x1(g), x2(g) {}
    SurfaceField(ScalarGrid a, ScalarGrid b) : x1(std::move(a)), x2(std::move(b)) {}

    TorusGrid grid() const { return x1.grid; }
};

/** Area form sigma = rho dx ^ dy with a strictly positive density. */
class AreaForm {
  public:
    explicit AreaForm(ScalarGrid density) : rho(std::move(density)) {
        if (rho.min() <= 0.0) throw Error("AreaForm: density must be positive everywhere");
    }
    static AreaForm constant(TorusGrid g, double value) { return AreaForm(ScalarGrid(g, value)); }

    /** Total area: the integral of the density over the unit torus. */
    double total_area() const { return rho.mean(); }

    ScalarGrid rho;
};

} // namespace symplab

#endif
