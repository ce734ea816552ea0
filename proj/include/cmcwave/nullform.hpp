#pragma once

#include <optional>
#include <stdexcept>

#include "cmcwave/spectral.hpp"

namespace cmcwave {

// Tags for the classical null forms. Qij requires i != j.
struct NullFormKind {
    enum class Tag { Q00, Qij, Q0j } tag;
    int i = 0, j = 0;  // spatial indices in {1, 2}

    static NullFormKind q00() { return {Tag::Q00, 0, 0}; }
    static NullFormKind qij(int i, int j) {
        if (i == j || i < 1 || i > 2 || j < 1 || j > 2)
            throw std::invalid_argument("Qij requires distinct i, j in {1,2}");
        return {Tag::Qij, i, j};
    }
    static NullFormKind q0j(int j) {
        if (j < 1 || j > 2) throw std::invalid_argument("Q0j requires j in {1,2}");
        return {Tag::Q0j, 0, j};
    }
};

namespace detail {

// Pointwise product of two fields with 2/3-rule truncation applied to the
// factors and to the result. Returns a spectral field.
inline ScalarField product_dealiased(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    ScalarField fa = a.as(Representation::spectral);
    ScalarField fb = b.as(Representation::spectral);
    dealias(fa);
    dealias(fb);
    fa.to_physical();
    fb.to_physical();
    ScalarField out(fa.grid(), Representation::physical);
    for (size_t i = 0; i < out.size(); ++i) out[i] = fa[i] * fb[i];
    out.to_spectral();
    dealias(out);
    return out;
}

inline Axis axis_of(int i) { return i == 1 ? Axis::x : Axis::y; }

}  // namespace detail

// Pointwise null form of two scalar fields. Time derivatives are required
// for Q00 and Q0j only. Result is spectral, dealiased.
inline ScalarField null_form(const NullFormKind& kind, const ScalarField& u,
                             const std::optional<ScalarField>& ut,
                             const ScalarField& v,
                             const std::optional<ScalarField>& vt) {
    require_same_grid(u, v);
    using Tag = NullFormKind::Tag;
    switch (kind.tag) {
        case Tag::Q00: {
            if (!ut || !vt)
                throw std::invalid_argument("Q00 needs both time derivatives");
            ScalarField out = detail::product_dealiased(
                partial_derivative(u, Axis::x), partial_derivative(v, Axis::x));
            const ScalarField gy = detail::product_dealiased(
                partial_derivative(u, Axis::y), partial_derivative(v, Axis::y));
            const ScalarField tt = detail::product_dealiased(*ut, *vt);
            for (size_t i = 0; i < out.size(); ++i) out[i] += gy[i] - tt[i];
            return out;
        }
        case Tag::Qij: {
            ScalarField out = detail::product_dealiased(
                partial_derivative(u, detail::axis_of(kind.i)),
                partial_derivative(v, detail::axis_of(kind.j)));
            const ScalarField other = detail::product_dealiased(
                partial_derivative(u, detail::axis_of(kind.j)),
                partial_derivative(v, detail::axis_of(kind.i)));
            for (size_t i = 0; i < out.size(); ++i) out[i] -= other[i];
            return out;
        }
        case Tag::Q0j: {
            if (!ut || !vt)
                throw std::invalid_argument("Q0j needs both time derivatives");
            const Axis ax = detail::axis_of(kind.j);
            ScalarField out =
                detail::product_dealiased(*ut, partial_derivative(v, ax));
            const ScalarField other =
                detail::product_dealiased(partial_derivative(u, ax), *vt);
            for (size_t i = 0; i < out.size(); ++i) out[i] -= other[i];
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

// 2 u_x ∧ u_y, the right-hand side of the wave CMC system, evaluated
// pseudo-spectrally with 2/3-rule dealiasing. Componentwise this equals
// (2 Q12(u2,u3), 2 Q12(u3,u1), 2 Q12(u1,u2)). Result is spectral.
inline VectorField cmc_nonlinearity(const VectorField& u) {
    VectorField ux = partial_derivative(u, Axis::x);
    VectorField uy = partial_derivative(u, Axis::y);
    dealias(ux);
    dealias(uy);
    ux.to_physical();
    uy.to_physical();
    VectorField out(u.grid(), Representation::physical);
    for (size_t i = 0; i < out[0].size(); ++i) {
        const cd ax = ux[0][i], ay = ux[1][i], az = ux[2][i];
        const cd bx = uy[0][i], by = uy[1][i], bz = uy[2][i];
        out[0][i] = 2.0 * (ay * bz - az * by);
        out[1][i] = 2.0 * (az * bx - ax * bz);
        out[2][i] = 2.0 * (ax * by - ay * bx);
    }
    out.to_spectral();
    dealias(out);
    return out;
}

// Same quantity assembled through the Q12 decomposition; kept as an
// independent evaluation path for consistency checks.
inline VectorField cmc_nonlinearity_via_q12(const VectorField& u) {
    const NullFormKind q12 = NullFormKind::qij(1, 2);
    VectorField out(u.grid(), Representation::spectral);
    const int idx[3][2] = {{1, 2}, {2, 0}, {0, 1}};
    for (int c = 0; c < 3; ++c) {
        ScalarField q = null_form(q12, u[idx[c][0]], std::nullopt, u[idx[c][1]],
                                  std::nullopt);
        for (size_t i = 0; i < q.size(); ++i) out[c][i] = 2.0 * q[i];
    }
    return out;
}

}  // namespace cmcwave
