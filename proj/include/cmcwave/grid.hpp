#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cmcwave {

// Uniform periodic n-by-n grid on a square box of side L. Mode k of the
// discrete Fourier basis carries the wave vector 2*pi*k/L with
// k in {-n/2, ..., n/2-1} per axis; mode (0,0) has frequency exactly zero.
struct Grid {
    int n = 0;
    double box_length = 0.0;

    Grid() = default;
    Grid(int n_, double L) : n(n_), box_length(L) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("Grid: n must be even and >= 8");
        if (!(L > 0.0)) throw std::invalid_argument("Grid: box length must be positive");
    }

    bool operator==(const Grid&) const = default;

    size_t size() const { return static_cast<size_t>(n) * n; }

    // Signed integer mode index of FFT bin i (row or column).
    int mode_index(int i) const { return i < n / 2 ? i : i - n; }

    // Wave number of FFT bin i along one axis.
    double xi(int i) const {
        return 2.0 * std::numbers::pi * mode_index(i) / box_length;
    }

    double xi_abs(int iy, int ix) const {
        const double a = xi(iy), b = xi(ix);
        return std::sqrt(a * a + b * b);
    }

    // 2/3-rule cutoff: modes with |k| > dealias_cutoff() on either axis are
    // discarded around quadratic products.
    int dealias_cutoff() const { return n / 3; }

    // Largest |xi| among dealias-retained modes (corner of the retained square).
    double xi_max_retained() const {
        const double k = dealias_cutoff();
        return 2.0 * std::numbers::pi * k * std::numbers::sqrt2 / box_length;
    }

    double dx() const { return box_length / n; }
    double cell_area() const { return dx() * dx(); }

    double x(int i) const { return box_length * i / n; }
};

}  // namespace cmcwave
