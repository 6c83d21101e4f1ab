#pragma once

#include <algorithm>
#include <cmath>

#include "hjentropy/grid.hpp"

namespace hjentropy {

// Midpoint-rule quadrature on the dual cell of each node, truncated at the
// grid box and at the integration domain. First order, which matches the
// BV regularity of everything measured here.

inline double dual_cell_weight(const Grid& g, const std::vector<int>& mi, const Box& domain) {
    const double h = g.spacing();
    double w = 1.0;
    for (int i = 0; i < g.dim(); ++i) {
        const double x = g.coord(i, mi[i]);
        const double lo = std::max({x - 0.5 * h, g.box.lo(i), domain.lo(i)});
        const double hi = std::min({x + 0.5 * h, g.box.hi(i), domain.hi(i)});
        if (hi <= lo) return 0.0;
        w *= hi - lo;
    }
    return w;
}

inline void check_domain(const Grid& g, const Box& domain) {
    require(domain.dim() == g.dim(), ErrorKind::Domain, "domain dimension mismatch");
    require(g.box.contains_box(domain, 1e-9 * g.spacing()), ErrorKind::Domain,
            "integration domain exceeds the grid box");
}

inline double integrate_abs(const SampledFunction& f, const Box& domain) {
    const Grid& g = f.grid();
    check_domain(g, domain);
    double acc = 0.0;
    for (std::size_t idx = 0; idx < g.node_count(); ++idx) {
        const double w = dual_cell_weight(g, g.unflatten(idx), domain);
        if (w > 0.0) acc += w * std::abs(f.at(idx));
    }
    return acc;
}

inline double integrate(const SampledFunction& f, const Box& domain) {
    const Grid& g = f.grid();
    check_domain(g, domain);
    double acc = 0.0;
    for (std::size_t idx = 0; idx < g.node_count(); ++idx) {
        const double w = dual_cell_weight(g, g.unflatten(idx), domain);
        if (w > 0.0) acc += w * f.at(idx);
    }
    return acc;
}

inline double norm_l1(const SampledFunction& f, const Box& domain) {
    return integrate_abs(f, domain);
}

inline double norm_l1(const SampledFunction& f) { return integrate_abs(f, f.grid().box); }

// L1 norm of a vector field, |V| Euclidean per node.
inline double norm_l1_field(const SampledVectorField& V, const Box& domain) {
    const Grid& g = V.grid();
    check_domain(g, domain);
    const int N = g.dim();
    double acc = 0.0;
    for (std::size_t idx = 0; idx < g.node_count(); ++idx) {
        const double w = dual_cell_weight(g, g.unflatten(idx), domain);
        if (w <= 0.0) continue;
        double sq = 0.0;
        for (int c = 0; c < N; ++c) {
            const double v = V.values()[idx * N + c];
            sq += v * v;
        }
        acc += w * std::sqrt(sq);
    }
    return acc;
}

inline double norm_l1_field(const SampledVectorField& V) { return norm_l1_field(V, V.grid().box); }

inline Vec field_mean(const SampledVectorField& V, const Box& domain) {
    const Grid& g = V.grid();
    check_domain(g, domain);
    const int N = g.dim();
    Vec acc = Vec::Zero(N);
    double vol = 0.0;
    for (std::size_t idx = 0; idx < g.node_count(); ++idx) {
        const double w = dual_cell_weight(g, g.unflatten(idx), domain);
        if (w <= 0.0) continue;
        acc += w * V.at(idx);
        vol += w;
    }
    return vol > 0.0 ? Vec(acc / vol) : acc;
}

// W^{1,1} norm: integral of |f| + |grad f| over the domain.
inline double norm_w11(const SampledFunction& f, const Box& domain) {
    return norm_l1(f, domain) + norm_l1_field(gradient(f), domain);
}

inline double norm_w11(const SampledFunction& f) { return norm_w11(f, f.grid().box); }

inline double norm_w11_distance(const SampledFunction& f, const SampledFunction& g,
                                const Box& domain) {
    if (f.grid() == g.grid()) return norm_w11(f - g, domain);
    return norm_w11(f - g.resample(f.grid()), domain);
}

inline double norm_l1_distance(const SampledFunction& f, const SampledFunction& g,
                               const Box& domain) {
    if (f.grid() == g.grid()) return norm_l1(f - g, domain);
    return norm_l1(f - g.resample(f.grid()), domain);
}

// Largest nodal |f - c| over nodes with ||x||_inf > radius, where c is the
// far-field constant. Used for support confinement checks.
inline double max_abs_outside(const SampledFunction& f, double radius, double shift = 0.0) {
    const Grid& g = f.grid();
    double m = 0.0;
    for (std::size_t idx = 0; idx < g.node_count(); ++idx) {
        const Vec x = g.node(idx);
        if (x.lpNorm<Eigen::Infinity>() > radius)
            m = std::max(m, std::abs(f.at(idx) + shift));
    }
    return m;
}

}  // namespace hjentropy
