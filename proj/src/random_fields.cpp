#include "symplab/random_fields.hpp"

#include <cmath>

namespace symplab {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

uint64_t Rng::derive_seed(uint64_t seed, const std::string& label) {
    uint64_t h = 14695981039346656037ull ^ seed;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

FourierScalar random_fourier(int dim, int bandwidth, int terms, double amplitude, Rng& rng) {
    FourierScalar out(dim);
    const double scale = amplitude / std::sqrt(static_cast<double>(terms));
    for (int t = 0; t < terms; ++t) {
        std::vector<int> k(static_cast<size_t>(dim), 0);
        bool zero = true;
        while (zero) {
            for (int a = 0; a < dim; ++a) {
                k[static_cast<size_t>(a)] = rng.uniform_int(-bandwidth, bandwidth);
                if (k[static_cast<size_t>(a)] != 0) zero = false;
            }
        }
        out.add(std::move(k), scale * rng.normal(),
                rng.uniform(0.0, 6.283185307179586476925286766559));
    }
    return out;
}

ScalarGrid random_band_limited(TorusGrid g, int bandwidth, double amplitude, Rng& rng) {
    const int terms = std::min(12, (2 * bandwidth + 1) * (2 * bandwidth + 1) - 1);
    return random_fourier(2, bandwidth, terms, amplitude, rng).sample(g);
}

} // namespace symplab
