#include "fracpont/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracpont {

Grid::Grid(double a_, double b_, std::size_t n_) : a(a_), b(b_), n(n_) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw std::invalid_argument("Grid: requires finite a < b");
    if (n < 2)
        throw std::invalid_argument("Grid: requires n >= 2 intervals");
}

FracOrder::FracOrder(double alpha_) : alpha(alpha_) {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw std::invalid_argument("FracOrder: requires 0 < alpha <= 1");
}

SampledPath::SampledPath(Grid grid, std::size_t dim)
    : grid_(grid), dim_(dim), values_(grid.node_count() * dim, 0.0) {
    if (dim == 0)
        throw std::invalid_argument("SampledPath: dim must be >= 1");
}

SampledPath::SampledPath(Grid grid, std::size_t dim, std::vector<double> values)
    : grid_(grid), dim_(dim), values_(std::move(values)) {
    if (dim == 0)
        throw std::invalid_argument("SampledPath: dim must be >= 1");
    if (values_.size() != grid_.node_count() * dim_)
        throw std::invalid_argument("SampledPath: value count does not match grid nodes * dim");
}

void SampledPath::check_finite(const char* label) const {
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(label) + ": path contains non-finite entries");
}

SampledPath sample_path(const Grid& grid, std::size_t dim,
                        const std::function<void(double, std::span<double>)>& fn) {
    SampledPath out(grid, dim);
    for (std::size_t i = 0; i < grid.node_count(); ++i)
        fn(grid.node(i), out.row(i));
    return out;
}

SampledPath sample_scalar(const Grid& grid, const std::function<double(double)>& fn) {
    SampledPath out(grid, 1);
    for (std::size_t i = 0; i < grid.node_count(); ++i)
        out.at(i, 0) = fn(grid.node(i));
    return out;
}

SampledPath constant_path(const Grid& grid, std::span<const double> value) {
    if (value.empty())
        throw std::invalid_argument("constant_path: empty value");
    SampledPath out(grid, value.size());
    for (std::size_t i = 0; i < grid.node_count(); ++i)
        for (std::size_t k = 0; k < value.size(); ++k)
            out.at(i, k) = value[k];
    return out;
}

SampledPath zero_path(const Grid& grid, std::size_t dim) { return SampledPath(grid, dim); }

SampledPath reflect(const SampledPath& g) {
    SampledPath out(g.grid(), g.dim());
    const std::size_t n = g.grid().n;
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = 0; k < g.dim(); ++k)
            out.at(i, k) = g.at(n - i, k);
    return out;
}

double sup_norm(const SampledPath& g) {
    double m = 0.0;
    for (double v : g.values())
        m = std::max(m, std::abs(v));
    return m;
}

double sup_distance(const SampledPath& g1, const SampledPath& g2) {
    if (!(g1.grid() == g2.grid()) || g1.dim() != g2.dim())
        throw std::invalid_argument("sup_distance: grid/dim mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < g1.values().size(); ++i)
        m = std::max(m, std::abs(g1.values()[i] - g2.values()[i]));
    return m;
}

SampledPath axpy(double c, const SampledPath& x, const SampledPath& y) {
    if (!(x.grid() == y.grid()) || x.dim() != y.dim())
        throw std::invalid_argument("axpy: grid/dim mismatch");
    SampledPath out = y;
    for (std::size_t i = 0; i < out.values().size(); ++i)
        out.values()[i] += c * x.values()[i];
    return out;
}

SampledPath scale(double c, const SampledPath& x) {
    SampledPath out = x;
    for (double& v : out.values())
        v *= c;
    return out;
}

double inner_product(const SampledPath& g1, const SampledPath& g2) {
    if (!(g1.grid() == g2.grid()))
        throw std::invalid_argument("inner_product: paths on different grids");
    if (g1.dim() != g2.dim())
        throw std::invalid_argument("inner_product: dimension mismatch");
    const std::size_t n = g1.grid().n;
    const double h = g1.grid().h();
    double acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        double dot = 0.0;
        for (std::size_t k = 0; k < g1.dim(); ++k)
            dot += g1.at(i, k) * g2.at(i, k);
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += w * dot;
    }
    return acc * h;
}

} // namespace fracpont
