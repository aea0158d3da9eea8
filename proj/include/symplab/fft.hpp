#ifndef SYMPLAB_FFT_HPP
#define SYMPLAB_FFT_HPP

#include <complex>
#include <vector>

#include "symplab/grid.hpp"

namespace symplab {

/** Fourier coefficients of a real grid field in the FFTW r2c half-plane
 * layout: nx rows of (ny/2 + 1) complex entries, normalized so that
 * f(x,y) ~ sum_k c(kx,ky) exp(2 pi i (kx x + ky y)) with the redundant
 * half implied by conjugate symmetry. */
struct Spectrum {
    int nx = 0, ny = 0;
    std::vector<std::complex<double>> c;

    int cols() const { return ny / 2 + 1; }
    std::complex<double>& at(int i, int j) { return c[static_cast<size_t>(i) * cols() + j]; }
    const std::complex<double>& at(int i, int j) const {
        return c[static_cast<size_t>(i) * cols() + j];
    }
};

/** Signed frequency of row/column index i on an n-point grid. */
inline int signed_freq(int i, int n) { return i <= n / 2 ? i : i - n; }

Spectrum fft_forward(const ScalarGrid& f);
ScalarGrid fft_inverse(const Spectrum& s);

/** Spectral x/y derivatives. Nyquist modes of the differentiated axis are
 * zeroed; exact on band-limited fields. */
ScalarGrid deriv_x(const ScalarGrid& f);
ScalarGrid deriv_y(const ScalarGrid& f);

/** Solves the periodic flat Poisson problem (laplacian u = g) for a mean-zero
 * right-hand side; the solution is gauged to mean zero. */
ScalarGrid inv_laplacian(const ScalarGrid& g);

} // namespace symplab

#endif
