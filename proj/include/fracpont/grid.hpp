#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracpont {

// Uniform grid with n intervals (n + 1 nodes) on [a, b].
struct Grid {
    Grid(double a, double b, std::size_t n);

    double a;
    double b;
    std::size_t n;

    double h() const { return (b - a) / static_cast<double>(n); }
    std::size_t node_count() const { return n + 1; }
    double node(std::size_t i) const {
        // Last node is pinned to b exactly so reflection is an involution.
        return (i == n) ? b : a + static_cast<double>(i) * h();
    }

    friend bool operator==(const Grid& x, const Grid& y) {
        return x.a == y.a && x.b == y.b && x.n == y.n;
    }
};

// Fractional order restricted to the (0, 1] range used by the Caputo/RL
// derivatives and the Pontryagin systems. Fractional integrals accept any
// positive order and take a plain double instead.
struct FracOrder {
    explicit FracOrder(double alpha);
    double alpha;
};

// Vector-valued function sampled on the nodes of a grid, node-major storage.
class SampledPath {
public:
    SampledPath(Grid grid, std::size_t dim);
    SampledPath(Grid grid, std::size_t dim, std::vector<double> values);

    const Grid& grid() const { return grid_; }
    std::size_t dim() const { return dim_; }
    std::size_t nodes() const { return grid_.node_count(); }

    double& at(std::size_t node, std::size_t k) { return values_[node * dim_ + k]; }
    double at(std::size_t node, std::size_t k) const { return values_[node * dim_ + k]; }
    std::span<double> row(std::size_t node) { return {values_.data() + node * dim_, dim_}; }
    std::span<const double> row(std::size_t node) const {
        return {values_.data() + node * dim_, dim_};
    }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    // Throws std::invalid_argument if any entry is NaN/inf.
    void check_finite(const char* label) const;

private:
    Grid grid_;
    std::size_t dim_;
    std::vector<double> values_;
};

// Builders.
SampledPath sample_path(const Grid& grid, std::size_t dim,
                        const std::function<void(double t, std::span<double> out)>& fn);
SampledPath sample_scalar(const Grid& grid, const std::function<double(double)>& fn);
SampledPath constant_path(const Grid& grid, std::span<const double> value);
SampledPath zero_path(const Grid& grid, std::size_t dim);

// Elementwise helpers used throughout the solvers.
SampledPath reflect(const SampledPath& g);          // t -> a + b - t
double sup_norm(const SampledPath& g);
double sup_distance(const SampledPath& g1, const SampledPath& g2);
SampledPath axpy(double c, const SampledPath& x, const SampledPath& y); // c*x + y
SampledPath scale(double c, const SampledPath& x);

// Trapezoidal L2 inner product of two paths on the same grid and dim
// (summed over components). Throws std::invalid_argument on mismatch.
double inner_product(const SampledPath& g1, const SampledPath& g2);

} // namespace fracpont
