#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "cmcwave/field.hpp"

namespace cmcwave {

enum class Axis { x, y };

namespace detail {

// Compensated (Kahan) accumulator for norm sums.
struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

template <class F>
inline ScalarField apply_multiplier(const ScalarField& f, F&& mult) {
    ScalarField out = f.as(Representation::spectral);
    const Grid& g = out.grid();
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) out.at(iy, ix) *= mult(iy, ix);
    return out;
}

template <class F>
inline VectorField apply_multiplier(const VectorField& f, F&& mult) {
    VectorField out = f.as(Representation::spectral);
    const Grid& g = out.grid();
    for (int c = 0; c < 3; ++c)
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) out[c].at(iy, ix) *= mult(iy, ix);
    return out;
}

}  // namespace detail

inline cd mean_of(const ScalarField& f) {
    if (f.representation() == Representation::spectral) {
        const double L = f.grid().box_length;
        return f[0] / (L * L);
    }
    detail::Kahan re, im;
    for (size_t i = 0; i < f.size(); ++i) {
        re.add(f[i].real());
        im.add(f[i].imag());
    }
    return cd(re.sum, im.sum) / static_cast<double>(f.size());
}

inline std::array<cd, 3> mean_of(const VectorField& f) {
    return {mean_of(f[0]), mean_of(f[1]), mean_of(f[2])};
}

inline void project_mean_free(ScalarField& f) {
    if (f.representation() == Representation::spectral) {
        f[0] = cd(0.0, 0.0);
        return;
    }
    const cd m = mean_of(f);
    for (size_t i = 0; i < f.size(); ++i) f[i] -= m;
}

inline void project_mean_free(VectorField& f) {
    for (int c = 0; c < 3; ++c) project_mean_free(f[c]);
}

// Per-mode multiplication by |xi|^s. The zero mode is mapped to 0 for any
// s != 0; s = 0 is the identity. Negative powers require a mean-free field.
inline ScalarField fractional_laplacian(const ScalarField& f, double s) {
    if (s == 0.0) return f;
    if (s < 0.0) {
        ScalarField sp = f.as(Representation::spectral);
        const double scale =
            sp.grid().box_length * sp.grid().box_length;  // |f_hat(0)| of unit mean
        if (std::abs(sp[0]) > 1e-10 * scale)
            throw std::invalid_argument(
                "fractional_laplacian: non-invertible zero mode (field has "
                "nonzero mean)");
    }
    const Grid g = f.grid();
    return detail::apply_multiplier(f, [&](int iy, int ix) {
        if (iy == 0 && ix == 0) return 0.0;
        return std::pow(g.xi_abs(iy, ix), s);
    });
}

inline VectorField fractional_laplacian(const VectorField& f, double s) {
    VectorField out = f;
    for (int c = 0; c < 3; ++c) out[c] = fractional_laplacian(f[c], s);
    return out;
}

// cos(t sqrt(-Laplace)); zero mode multiplied by 1.
inline ScalarField half_wave_cos(const ScalarField& f, double t) {
    const Grid g = f.grid();
    return detail::apply_multiplier(
        f, [&](int iy, int ix) { return std::cos(t * g.xi_abs(iy, ix)); });
}

inline VectorField half_wave_cos(const VectorField& f, double t) {
    VectorField out = f;
    for (int c = 0; c < 3; ++c) out[c] = half_wave_cos(f[c], t);
    return out;
}

// sin(t sqrt(-Laplace))/sqrt(-Laplace); zero mode multiplied by t.
inline ScalarField half_wave_sinc(const ScalarField& f, double t) {
    const Grid g = f.grid();
    return detail::apply_multiplier(f, [&](int iy, int ix) {
        const double r = g.xi_abs(iy, ix);
        return r == 0.0 ? t : std::sin(t * r) / r;
    });
}

inline VectorField half_wave_sinc(const VectorField& f, double t) {
    VectorField out = f;
    for (int c = 0; c < 3; ++c) out[c] = half_wave_sinc(f[c], t);
    return out;
}

// -sqrt(-Laplace) sin(t sqrt(-Laplace)); time derivative of half_wave_cos.
inline ScalarField half_wave_cos_dt(const ScalarField& f, double t) {
    const Grid g = f.grid();
    return detail::apply_multiplier(f, [&](int iy, int ix) {
        const double r = g.xi_abs(iy, ix);
        return -r * std::sin(t * r);
    });
}

// Spectral derivative i*xi_axis; the Nyquist mode of this odd multiplier is
// zeroed so physical fields stay real.
inline ScalarField partial_derivative(const ScalarField& f, Axis axis) {
    const Grid g = f.grid();
    return detail::apply_multiplier(f, [&](int iy, int ix) {
        const int i = axis == Axis::x ? ix : iy;
        if (g.mode_index(i) == -g.n / 2) return cd(0.0, 0.0);
        return cd(0.0, g.xi(i));
    });
}

inline VectorField partial_derivative(const VectorField& f, Axis axis) {
    VectorField out = f;
    for (int c = 0; c < 3; ++c) out[c] = partial_derivative(f[c], axis);
    return out;
}

// Zero every mode with |k| > cutoff on either axis (2/3 rule by default).
inline void dealias(ScalarField& f, int cutoff = -1) {
    f.to_spectral();
    const Grid& g = f.grid();
    if (cutoff < 0) cutoff = g.dealias_cutoff();
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            if (std::abs(g.mode_index(iy)) > cutoff ||
                std::abs(g.mode_index(ix)) > cutoff)
                f.at(iy, ix) = cd(0.0, 0.0);
}

inline void dealias(VectorField& f, int cutoff = -1) {
    for (int c = 0; c < 3; ++c) dealias(f[c], cutoff);
}

// Homogeneous Sobolev norm ( (1/L^2) Σ_k |xi|^{2s} |f_hat|^2 )^{1/2}; the
// zero mode is ignored, and must vanish when s < 0.
inline double sobolev_norm(const ScalarField& f, double s) {
    ScalarField sp = f.as(Representation::spectral);
    const Grid& g = sp.grid();
    if (s < 0.0) {
        const double scale = g.box_length * g.box_length;
        if (std::abs(sp[0]) > 1e-10 * scale)
            throw std::invalid_argument(
                "sobolev_norm: negative order requires a mean-free field");
    }
    detail::Kahan acc;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            if (iy == 0 && ix == 0) continue;
            const double w = s == 0.0 ? 1.0 : std::pow(g.xi_abs(iy, ix), 2.0 * s);
            acc.add(w * std::norm(sp.at(iy, ix)));
        }
    if (s == 0.0) acc.add(std::norm(sp[0]));
    return std::sqrt(acc.sum) / g.box_length;
}

inline double sobolev_norm(const VectorField& f, double s) {
    double sq = 0.0;
    for (int c = 0; c < 3; ++c) {
        const double v = sobolev_norm(f[c], s);
        sq += v * v;
    }
    return std::sqrt(sq);
}

// L^2 norm over the box, computed in whichever representation f carries.
inline double l2_norm(const ScalarField& f) {
    detail::Kahan acc;
    for (size_t i = 0; i < f.size(); ++i) acc.add(std::norm(f[i]));
    const Grid& g = f.grid();
    const double scale = f.representation() == Representation::physical
                             ? g.cell_area()
                             : 1.0 / (g.box_length * g.box_length);
    return std::sqrt(acc.sum * scale);
}

inline double l2_norm(const VectorField& f) {
    double sq = 0.0;
    for (int c = 0; c < 3; ++c) {
        const double v = l2_norm(f[c]);
        sq += v * v;
    }
    return std::sqrt(sq);
}

// Real L^2 inner product ∫ f g dx (no conjugation on real-valued fields).
inline double inner_product(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    ScalarField fa = a.as(Representation::physical);
    ScalarField fb = b.as(Representation::physical);
    detail::Kahan acc;
    for (size_t i = 0; i < fa.size(); ++i)
        acc.add(fa[i].real() * fb[i].real() - fa[i].imag() * fb[i].imag());
    return acc.sum * fa.grid().cell_area();
}

inline double inner_product(const VectorField& a, const VectorField& b) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) s += inner_product(a[c], b[c]);
    return s;
}

inline VectorField operator+(const VectorField& a, const VectorField& b) {
    require_same_grid(a, b);
    VectorField out = a;
    for (int c = 0; c < 3; ++c)
        for (size_t i = 0; i < out[c].size(); ++i) out[c][i] += b[c][i];
    return out;
}

inline VectorField operator-(const VectorField& a, const VectorField& b) {
    require_same_grid(a, b);
    VectorField out = a;
    for (int c = 0; c < 3; ++c)
        for (size_t i = 0; i < out[c].size(); ++i) out[c][i] -= b[c][i];
    return out;
}

inline VectorField operator*(double s, const VectorField& a) {
    VectorField out = a;
    for (int c = 0; c < 3; ++c)
        for (size_t i = 0; i < out[c].size(); ++i) out[c][i] *= s;
    return out;
}

// Cauchy data (u0, u1) with its size bound K. Fields are projected to zero
// mean at construction; the removed means are kept so the affine free
// evolution mean(t) = mean0 + t*mean1 can be restored for physical output.
struct CauchyData {
    VectorField u0;
    VectorField u1;
    double size_bound = 0.0;
    std::array<cd, 3> mean0{}, mean1{};

    CauchyData() = default;
    CauchyData(VectorField u0_, VectorField u1_) : u0(std::move(u0_)), u1(std::move(u1_)) {
        require_same_grid(u0, u1);
        u0.to_spectral();
        u1.to_spectral();
        const double L2 = u0.grid().box_length * u0.grid().box_length;
        for (int c = 0; c < 3; ++c) {
            mean0[c] = u0[c][0] / L2;
            mean1[c] = u1[c][0] / L2;
            u0[c][0] = cd(0.0, 0.0);
            u1[c][0] = cd(0.0, 0.0);
        }
        size_bound = sobolev_norm(u0, 1.5) + sobolev_norm(u1, 0.5);
    }
};

}  // namespace cmcwave
