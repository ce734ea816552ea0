#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cmcwave {

// Chebyshev-Lobatto collocation on [0, 1]: nodes cluster at both endpoints,
// matching the degeneracies of the radial operator at rho = 0 and rho = 1.
struct RadialGrid {
    int N = 0;
    std::vector<double> nodes;       // ascending, nodes[0]=0, nodes[N-1]=1
    std::vector<double> bary;        // barycentric weights
    std::vector<double> quad;        // Clenshaw-Curtis weights on [0,1]
    std::vector<double> D;           // N x N differentiation matrix, row-major

    explicit RadialGrid(int N_) : N(N_) {
        if (N < 4) throw std::invalid_argument("RadialGrid: need at least 4 nodes");
        const int n = N - 1;
        nodes.resize(N);
        bary.resize(N);
        for (int i = 0; i < N; ++i) {
            nodes[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * i / n));
            bary[i] = (i % 2 == 0 ? 1.0 : -1.0);
            if (i == 0 || i == n) bary[i] *= 0.5;
        }
        // Barycentric differentiation matrix with the negative-sum diagonal.
        D.assign(static_cast<size_t>(N) * N, 0.0);
        for (int i = 0; i < N; ++i) {
            double diag = 0.0;
            for (int j = 0; j < N; ++j) {
                if (i == j) continue;
                const double v = (bary[j] / bary[i]) / (nodes[i] - nodes[j]);
                D[static_cast<size_t>(i) * N + j] = v;
                diag -= v;
            }
            D[static_cast<size_t>(i) * N + i] = diag;
        }
        // Clenshaw-Curtis weights (closed rule) scaled to [0,1].
        quad.assign(N, 0.0);
        for (int j = 0; j <= n; ++j) {
            const double theta = std::numbers::pi * j / n;
            double s = 1.0;
            for (int k = 1; k <= n / 2; ++k) {
                const double b = (2 * k == n) ? 1.0 : 2.0;
                s -= b * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
            }
            const double c = (j == 0 || j == n) ? 1.0 : 2.0;
            quad[j] = 0.5 * (c / n) * s;  // [-1,1] weight halved for [0,1]
        }
    }

    // d/drho of nodal values; out and in must not alias.
    void differentiate(const double* in, double* out, int stride = 1) const {
        for (int i = 0; i < N; ++i) {
            double acc = 0.0;
            const double* row = D.data() + static_cast<size_t>(i) * N;
            for (int j = 0; j < N; ++j) acc += row[j] * in[j * stride];
            out[i * stride] = acc;
        }
    }

    // Transposed action, the adjoint of differentiate under the plain
    // euclidean pairing.
    void differentiate_transposed(const double* in, double* out,
                                  int stride = 1) const {
        for (int j = 0; j < N; ++j) {
            double acc = 0.0;
            for (int i = 0; i < N; ++i)
                acc += D[static_cast<size_t>(i) * N + j] * in[i * stride];
            out[j * stride] = acc;
        }
    }

    // Barycentric interpolation of nodal values at x in [0,1].
    double interpolate(const double* values, double x, int stride = 1) const {
        double num = 0.0, den = 0.0;
        for (int i = 0; i < N; ++i) {
            const double d = x - nodes[i];
            if (d == 0.0) return values[i * stride];
            const double w = bary[i] / d;
            num += w * values[i * stride];
            den += w;
        }
        return num / den;
    }
};

}  // namespace cmcwave
