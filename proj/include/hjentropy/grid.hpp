#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hjentropy/util.hpp"

namespace hjentropy {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Axis-aligned cube [c - a, c + a]^N.
struct Box {
    Vec center;
    double half_width = 1.0;

    Box() = default;
    Box(Vec c, double a) : center(std::move(c)), half_width(a) {
        require(half_width > 0.0, ErrorKind::Config, "box half_width must be positive");
        require(center.size() >= 1, ErrorKind::Config, "box dim must be >= 1");
    }

    static Box cube(int dim, double a) { return Box(Vec::Zero(dim), a); }

    int dim() const { return static_cast<int>(center.size()); }
    double lo(int i) const { return center[i] - half_width; }
    double hi(int i) const { return center[i] + half_width; }
    double side() const { return 2.0 * half_width; }
    double volume() const { return std::pow(side(), dim()); }

    bool contains(const Vec& x, double tol = 0.0) const {
        for (int i = 0; i < dim(); ++i)
            if (x[i] < lo(i) - tol || x[i] > hi(i) + tol) return false;
        return true;
    }

    bool contains_box(const Box& inner, double tol = 0.0) const {
        for (int i = 0; i < dim(); ++i)
            if (inner.lo(i) < lo(i) - tol || inner.hi(i) > hi(i) + tol) return false;
        return true;
    }
};

// Uniform tensor lattice over a Box. Flat node order is row-major with
// axis 0 slowest, matching the serialized layout.
struct Grid {
    Box box;
    int points_per_axis = 2;

    Grid() = default;
    Grid(Box b, int G) : box(std::move(b)), points_per_axis(G) {
        require(G >= 2, ErrorKind::Config, "grid needs at least 2 points per axis");
    }

    int dim() const { return box.dim(); }
    double spacing() const { return box.side() / (points_per_axis - 1); }

    std::size_t node_count() const {
        std::size_t n = 1;
        for (int i = 0; i < dim(); ++i) n *= static_cast<std::size_t>(points_per_axis);
        return n;
    }

    double coord(int axis, int k) const { return box.lo(axis) + k * spacing(); }

    std::vector<int> unflatten(std::size_t idx) const {
        std::vector<int> mi(dim());
        for (int i = dim() - 1; i >= 0; --i) {
            mi[i] = static_cast<int>(idx % points_per_axis);
            idx /= points_per_axis;
        }
        return mi;
    }

    std::size_t flatten(const std::vector<int>& mi) const {
        std::size_t idx = 0;
        for (int i = 0; i < dim(); ++i)
            idx = idx * points_per_axis + static_cast<std::size_t>(mi[i]);
        return idx;
    }

    Vec node(const std::vector<int>& mi) const {
        Vec x(dim());
        for (int i = 0; i < dim(); ++i) x[i] = coord(i, mi[i]);
        return x;
    }

    Vec node(std::size_t idx) const { return node(unflatten(idx)); }

    bool on_boundary(const std::vector<int>& mi) const {
        for (int i = 0; i < dim(); ++i)
            if (mi[i] == 0 || mi[i] == points_per_axis - 1) return true;
        return false;
    }

    bool operator==(const Grid& other) const {
        return points_per_axis == other.points_per_axis &&
               box.half_width == other.box.half_width &&
               box.center == other.box.center;
    }
};

// Scalar function sampled at grid nodes; evaluation anywhere is multilinear
// interpolation, clamped to the box (constant extension outside).
class SampledFunction {
public:
    SampledFunction() = default;
    SampledFunction(Grid g, std::vector<double> v)
        : grid_(std::move(g)), values_(std::move(v)) {
        require(values_.size() == grid_.node_count(), ErrorKind::Config,
                "value count does not match grid");
    }

    static SampledFunction from_function(const Grid& g,
                                         const std::function<double(const Vec&)>& fn) {
        std::vector<double> v(g.node_count());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(g.node(i));
        return SampledFunction(g, std::move(v));
    }

    static SampledFunction constant(const Grid& g, double c) {
        return SampledFunction(g, std::vector<double>(g.node_count(), c));
    }

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    double at(std::size_t idx) const { return values_[idx]; }

    double eval(const Vec& x) const {
        const int N = grid_.dim();
        const double h = grid_.spacing();
        const int G = grid_.points_per_axis;
        // locate the cell, clamping to the box
        std::vector<int> base(N);
        std::vector<double> frac(N);
        for (int i = 0; i < N; ++i) {
            double t = (x[i] - grid_.box.lo(i)) / h;
            if (t <= 0.0) {
                base[i] = 0; frac[i] = 0.0;
            } else if (t >= G - 1) {
                base[i] = G - 2; frac[i] = 1.0;
            } else {
                base[i] = static_cast<int>(t);
                frac[i] = t - base[i];
            }
        }
        // accumulate over the 2^N cell corners
        double acc = 0.0;
        const int corners = 1 << N;
        std::vector<int> mi(N);
        for (int c = 0; c < corners; ++c) {
            double w = 1.0;
            for (int i = 0; i < N; ++i) {
                const int bit = (c >> i) & 1;
                mi[i] = base[i] + bit;
                w *= bit ? frac[i] : (1.0 - frac[i]);
            }
            if (w != 0.0) acc += w * values_[grid_.flatten(mi)];
        }
        return acc;
    }

    SampledFunction operator+(double c) const {
        std::vector<double> v = values_;
        for (double& x : v) x += c;
        return SampledFunction(grid_, std::move(v));
    }

    SampledFunction operator-(const SampledFunction& other) const {
        require(grid_ == other.grid_, ErrorKind::Config,
                "function difference requires identical grids");
        std::vector<double> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] - other.values_[i];
        return SampledFunction(grid_, std::move(v));
    }

    SampledFunction scaled(double s) const {
        std::vector<double> v = values_;
        for (double& x : v) x *= s;
        return SampledFunction(grid_, std::move(v));
    }

    // resample this function (with its extension rule) onto another grid
    SampledFunction resample(const Grid& g) const {
        return from_function(g, [this](const Vec& x) { return eval(x); });
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    void save_csv(const std::string& path) const;
    static SampledFunction load_csv(const std::string& path);

private:
    Grid grid_;
    std::vector<double> values_;
};

// Vector field sampled at grid nodes, node-major layout (idx * N + comp).
class SampledVectorField {
public:
    SampledVectorField() = default;
    SampledVectorField(Grid g, std::vector<double> v)
        : grid_(std::move(g)), values_(std::move(v)) {
        require(values_.size() == grid_.node_count() * grid_.dim(), ErrorKind::Config,
                "component count does not match grid");
    }

    static SampledVectorField from_function(const Grid& g,
                                            const std::function<Vec(const Vec&)>& fn) {
        const int N = g.dim();
        std::vector<double> v(g.node_count() * N);
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            Vec val = fn(g.node(i));
            for (int c = 0; c < N; ++c) v[i * N + c] = val[c];
        }
        return SampledVectorField(g, std::move(v));
    }

    const Grid& grid() const { return grid_; }
    int components() const { return grid_.dim(); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    Vec at(std::size_t idx) const {
        const int N = components();
        Vec v(N);
        for (int c = 0; c < N; ++c) v[c] = values_[idx * N + c];
        return v;
    }

    void set(std::size_t idx, const Vec& v) {
        const int N = components();
        for (int c = 0; c < N; ++c) values_[idx * N + c] = v[c];
    }

    SampledVectorField operator-(const SampledVectorField& other) const {
        require(grid_ == other.grid_, ErrorKind::Config,
                "field difference requires identical grids");
        std::vector<double> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] - other.values_[i];
        return SampledVectorField(grid_, std::move(v));
    }

    SampledVectorField scaled(double s) const {
        std::vector<double> v = values_;
        for (double& x : v) x *= s;
        return SampledVectorField(grid_, std::move(v));
    }

private:
    Grid grid_;
    std::vector<double> values_;
};

// Finite-difference gradient: 2nd-order central at interior nodes,
// one-sided at boundary nodes. Exact on affine data.
inline SampledVectorField gradient(const SampledFunction& f) {
    const Grid& g = f.grid();
    require(g.points_per_axis >= 3, ErrorKind::Config,
            "gradient needs at least 3 points per axis");
    const int N = g.dim();
    const int G = g.points_per_axis;
    const double h = g.spacing();
    std::vector<double> out(g.node_count() * N);
    std::vector<int> mi;
    for (std::size_t idx = 0; idx < g.node_count(); ++idx) {
        mi = g.unflatten(idx);
        for (int i = 0; i < N; ++i) {
            const int k = mi[i];
            double d;
            auto value_at = [&](int kk) {
                std::vector<int> m2 = mi;
                m2[i] = kk;
                return f.at(g.flatten(m2));
            };
            if (k == 0) {
                d = (value_at(1) - value_at(0)) / h;
            } else if (k == G - 1) {
                d = (value_at(G - 1) - value_at(G - 2)) / h;
            } else {
                d = (value_at(k + 1) - value_at(k - 1)) / (2.0 * h);
            }
            out[idx * N + i] = d;
        }
    }
    return SampledVectorField(g, std::move(out));
}

// --- serialization: header (dim, G, center, half_width) + flat nodal values,
// row-major with axis 0 slowest ---

inline void SampledFunction::save_csv(const std::string& path) const {
    std::ofstream os(path);
    require(os.good(), ErrorKind::Config, "cannot open " + path + " for writing");
    os << "dim," << grid_.dim() << "\n";
    os << "points_per_axis," << grid_.points_per_axis << "\n";
    char buf[64];
    os << "center";
    for (int i = 0; i < grid_.dim(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", grid_.box.center[i]);
        os << "," << buf;
    }
    os << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", grid_.box.half_width);
    os << "half_width," << buf << "\n";
    os << "values\n";
    for (double v : values_) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf << "\n";
    }
}

inline SampledFunction SampledFunction::load_csv(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), ErrorKind::Config, "cannot open " + path);
    auto next_fields = [&is, &path]() {
        std::string line;
        require(static_cast<bool>(std::getline(is, line)), ErrorKind::Config,
                "truncated file " + path);
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(tok);
        return out;
    };
    auto dim_f = next_fields();
    require(dim_f.size() == 2 && dim_f[0] == "dim", ErrorKind::Config, "bad header: dim");
    const int N = std::stoi(dim_f[1]);
    auto g_f = next_fields();
    require(g_f.size() == 2 && g_f[0] == "points_per_axis", ErrorKind::Config,
            "bad header: points_per_axis");
    const int G = std::stoi(g_f[1]);
    auto c_f = next_fields();
    require(static_cast<int>(c_f.size()) == N + 1 && c_f[0] == "center", ErrorKind::Config,
            "bad header: center");
    Vec center(N);
    for (int i = 0; i < N; ++i) center[i] = std::stod(c_f[i + 1]);
    auto hw_f = next_fields();
    require(hw_f.size() == 2 && hw_f[0] == "half_width", ErrorKind::Config,
            "bad header: half_width");
    Grid grid(Box(center, std::stod(hw_f[1])), G);
    auto tag = next_fields();
    require(tag.size() == 1 && tag[0] == "values", ErrorKind::Config, "bad header: values");
    std::vector<double> vals;
    vals.reserve(grid.node_count());
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        vals.push_back(std::stod(line));
    }
    return SampledFunction(grid, std::move(vals));
}

}  // namespace hjentropy
