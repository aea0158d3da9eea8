#include "symplab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace symplab {

namespace {

// FFTW plan creation/destruction is not thread-safe; executions are.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

constexpr double two_pi = 6.283185307179586476925286766559;

} // namespace

Spectrum fft_forward(const ScalarGrid& f) {
    const int nx = f.grid.nx, ny = f.grid.ny;
    Spectrum s;
    s.nx = nx;
    s.ny = ny;
    s.c.assign(static_cast<size_t>(nx) * (ny / 2 + 1), {0.0, 0.0});

    std::vector<double> in(f.v);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_r2c_2d(nx, ny, in.data(),
                                    reinterpret_cast<fftw_complex*>(s.c.data()), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    const double norm = 1.0 / (static_cast<double>(nx) * ny);
    for (auto& z : s.c) z *= norm;
    return s;
}

ScalarGrid fft_inverse(const Spectrum& s) {
    const int nx = s.nx, ny = s.ny;
    ScalarGrid f(TorusGrid(nx, ny));
    std::vector<std::complex<double>> in(s.c);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_c2r_2d(nx, ny, reinterpret_cast<fftw_complex*>(in.data()),
                                    f.v.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    return f;
}

ScalarGrid deriv_x(const ScalarGrid& f) {
    Spectrum s = fft_forward(f);
    for (int i = 0; i < s.nx; ++i) {
        const int kx = signed_freq(i, s.nx);
        const bool nyq = (s.nx % 2 == 0 && i == s.nx / 2);
        for (int j = 0; j < s.cols(); ++j) {
            std::complex<double>& z = s.at(i, j);
            z = nyq ? std::complex<double>{0.0, 0.0}
                    : z * std::complex<double>{0.0, two_pi * kx};
        }
    }
    return fft_inverse(s);
}

ScalarGrid deriv_y(const ScalarGrid& f) {
    Spectrum s = fft_forward(f);
    for (int i = 0; i < s.nx; ++i) {
        for (int j = 0; j < s.cols(); ++j) {
            const int ky = signed_freq(j, s.ny);
            const bool nyq = (s.ny % 2 == 0 && j == s.ny / 2);
            std::complex<double>& z = s.at(i, j);
            z = nyq ? std::complex<double>{0.0, 0.0}
                    : z * std::complex<double>{0.0, two_pi * ky};
        }
    }
    return fft_inverse(s);
}

ScalarGrid inv_laplacian(const ScalarGrid& g) {
    Spectrum s = fft_forward(g);
    for (int i = 0; i < s.nx; ++i) {
        const int kx = signed_freq(i, s.nx);
        for (int j = 0; j < s.cols(); ++j) {
            const int ky = signed_freq(j, s.ny);
            std::complex<double>& z = s.at(i, j);
            if (kx == 0 && ky == 0) {
                z = 0.0; // mean-zero gauge
            } else {
                const double sym = -two_pi * two_pi * (double(kx) * kx + double(ky) * ky);
                z /= sym;
            }
        }
    }
    return fft_inverse(s);
}

} // namespace symplab
