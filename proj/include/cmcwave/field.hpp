#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cmcwave/fft.hpp"
#include "cmcwave/grid.hpp"

namespace cmcwave {

enum class Representation { physical, spectral };

// Scalar field on a periodic grid, stored densely row-major (iy*n + ix).
// Physical samples live on x_j = j*L/n; spectral coefficients are
// continuum-normalized, f_hat(k) ~ integral of f * exp(-i xi_k . x) over the
// box, so that Parseval reads  ∫|f|^2 dx = (1/L^2) Σ_k |f_hat_k|^2.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(const Grid& g, Representation rep)
        : grid_(g), rep_(rep), data_(g.size(), cd(0.0, 0.0)) {}

    const Grid& grid() const { return grid_; }
    Representation representation() const { return rep_; }

    cd* data() { return data_.data(); }
    const cd* data() const { return data_.data(); }
    size_t size() const { return data_.size(); }

    cd& operator[](size_t i) { return data_[i]; }
    const cd& operator[](size_t i) const { return data_[i]; }

    cd& at(int iy, int ix) { return data_[static_cast<size_t>(iy) * grid_.n + ix]; }
    const cd& at(int iy, int ix) const {
        return data_[static_cast<size_t>(iy) * grid_.n + ix];
    }

    void to_spectral() {
        if (rep_ == Representation::spectral) return;
        fft2d_forward(grid_.n, data_.data());
        const double scale = grid_.cell_area();
        for (auto& v : data_) v *= scale;
        rep_ = Representation::spectral;
    }

    void to_physical() {
        if (rep_ == Representation::physical) return;
        fft2d_backward(grid_.n, data_.data());
        const double scale = 1.0 / (grid_.box_length * grid_.box_length);
        for (auto& v : data_) v *= scale;
        rep_ = Representation::physical;
    }

    ScalarField as(Representation rep) const {
        ScalarField out = *this;
        if (rep == Representation::spectral)
            out.to_spectral();
        else
            out.to_physical();
        return out;
    }

private:
    Grid grid_;
    Representation rep_ = Representation::physical;
    std::vector<cd> data_;
};

// R^3-valued field; the three components share one grid and representation.
class VectorField {
public:
    VectorField() = default;
    VectorField(const Grid& g, Representation rep)
        : comp_{ScalarField(g, rep), ScalarField(g, rep), ScalarField(g, rep)} {}

    const Grid& grid() const { return comp_[0].grid(); }
    Representation representation() const { return comp_[0].representation(); }

    ScalarField& operator[](int c) { return comp_[c]; }
    const ScalarField& operator[](int c) const { return comp_[c]; }

    void to_spectral() {
        for (auto& c : comp_) c.to_spectral();
    }
    void to_physical() {
        for (auto& c : comp_) c.to_physical();
    }
    VectorField as(Representation rep) const {
        VectorField out = *this;
        if (rep == Representation::spectral)
            out.to_spectral();
        else
            out.to_physical();
        return out;
    }

private:
    std::array<ScalarField, 3> comp_;
};

inline void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("fields live on different grids");
}

inline void require_same_grid(const VectorField& a, const VectorField& b) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("fields live on different grids");
}

}  // namespace cmcwave
