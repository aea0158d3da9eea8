#include "symplab/interpolate.hpp"

#include <cmath>

#include "symplab/fft.hpp"

namespace symplab {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;

// Catmull-Rom weights for fractional offset t in [0,1).
inline void cr_weights(double t, double w[4]) {
    const double t2 = t * t, t3 = t2 * t;
    w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
    w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
    w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
    w[3] = 0.5 * (t3 - t2);
}

inline int wrap_index(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}
} // namespace

double wrap01(double x) {
    double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;
}

double BicubicInterpolant::operator()(double x, double y) const {
    const int nx = f_.grid.nx, ny = f_.grid.ny;
    const double gx = wrap01(x) * nx, gy = wrap01(y) * ny;
    const int i0 = static_cast<int>(std::floor(gx)), j0 = static_cast<int>(std::floor(gy));
    const double tx = gx - i0, ty = gy - j0;
    double wx[4], wy[4];
    cr_weights(tx, wx);
    cr_weights(ty, wy);
    double sum = 0.0;
    for (int a = 0; a < 4; ++a) {
        const int i = wrap_index(i0 - 1 + a, nx);
        double row = 0.0;
        for (int b = 0; b < 4; ++b) {
            const int j = wrap_index(j0 - 1 + b, ny);
            row += wy[b] * f_.at(i, j);
        }
        sum += wx[a] * row;
    }
    return sum;
}

FourierInterpolant::FourierInterpolant(const ScalarGrid& f, double relative_cutoff) {
    Spectrum s = fft_forward(f);
    double peak = 0.0;
    for (const auto& z : s.c) peak = std::max(peak, std::abs(z));
    const double cut = peak * relative_cutoff;
    mean_ = s.at(0, 0).real();
    for (int i = 0; i < s.nx; ++i) {
        const int kx = signed_freq(i, s.nx);
        for (int j = 0; j < s.cols(); ++j) {
            const int ky = signed_freq(j, s.ny);
            if (kx == 0 && ky == 0) continue;
            const std::complex<double>& z = s.at(i, j);
            if (std::abs(z) <= cut) continue;
            // Columns 0 and ny/2 are self-conjugate rows: the kx<0 partner
            // lives in the same array, so only double the interior columns.
            const bool shared = (j == 0 || (s.ny % 2 == 0 && j == s.ny / 2));
            const double factor = shared ? 1.0 : 2.0;
            modes_.push_back({static_cast<double>(kx), static_cast<double>(ky),
                              factor * z.real(), factor * z.imag()});
        }
    }
}

double FourierInterpolant::operator()(double x, double y) const {
    double sum = mean_;
    for (const Mode& m : modes_) {
        const double ang = two_pi * (m.kx * x + m.ky * y);
        sum += m.re * std::cos(ang) - m.im * std::sin(ang);
    }
    return sum;
}

ScalarSampler::ScalarSampler(const ScalarGrid& f, InterpMode mode) {
    if (mode == InterpMode::bicubic)
        bicubic_ = std::make_shared<BicubicInterpolant>(f);
    else
        fourier_ = std::make_shared<FourierInterpolant>(f);
}

double ScalarSampler::operator()(double x, double y) const {
    return bicubic_ ? (*bicubic_)(x, y) : (*fourier_)(x, y);
}

} // namespace symplab
