#include "symplab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace symplab {

double ScalarGrid::mean() const {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double ScalarGrid::max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double ScalarGrid::min() const { return *std::min_element(v.begin(), v.end()); }
double ScalarGrid::max() const { return *std::max_element(v.begin(), v.end()); }

ScalarGrid& ScalarGrid::operator+=(const ScalarGrid& o) {
    for (size_t k = 0; k < v.size(); ++k) v[k] += o.v[k];
    return *this;
}

ScalarGrid& ScalarGrid::operator-=(const ScalarGrid& o) {
    for (size_t k = 0; k < v.size(); ++k) v[k] -= o.v[k];
    return *this;
}

ScalarGrid& ScalarGrid::operator*=(double s) {
    for (double& x : v) x *= s;
    return *this;
}

ScalarGrid operator+(ScalarGrid a, const ScalarGrid& b) { return a += b; }
ScalarGrid operator-(ScalarGrid a, const ScalarGrid& b) { return a -= b; }
ScalarGrid operator*(double s, ScalarGrid a) { return a *= s; }

ScalarGrid hadamard(const ScalarGrid& a, const ScalarGrid& b) {
    ScalarGrid out = a;
    for (size_t k = 0; k < out.v.size(); ++k) out.v[k] *= b.v[k];
    return out;
}

ScalarGrid quotient(const ScalarGrid& a, const ScalarGrid& b) {
    ScalarGrid out = a;
    for (size_t k = 0; k < out.v.size(); ++k) out.v[k] /= b.v[k];
    return out;
}

} // namespace symplab
