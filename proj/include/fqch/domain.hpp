#pragma once

#include <array>
#include <string>

#include "fqch/errors.hpp"

namespace fqch {

// Rectangular box (0,L1) or (0,L1)x(0,L2) with N modes per axis.
// The Galerkin truncation count doubles as the grid resolution: fields are
// sampled at the N midpoints per axis, so grid and mode counts coincide.
struct Domain {
    int dimension = 1;
    std::array<double, 2> lengths{1.0, 1.0};
    std::array<int, 2> grid_points{0, 0};

    Domain(double length, int n) : dimension(1), lengths{length, 1.0}, grid_points{n, 1} {
        validate();
    }
    Domain(double lx, double ly, int nx, int ny)
        : dimension(2), lengths{lx, ly}, grid_points{nx, ny} {
        validate();
    }

    int total_points() const {
        return dimension == 1 ? grid_points[0] : grid_points[0] * grid_points[1];
    }
    double volume() const {
        return dimension == 1 ? lengths[0] : lengths[0] * lengths[1];
    }
    // Uniform quadrature weight of one midpoint cell.
    double cell_weight() const { return volume() / total_points(); }

    bool operator==(const Domain& o) const {
        return dimension == o.dimension && lengths == o.lengths && grid_points == o.grid_points;
    }

private:
    void validate() const {
        if (dimension < 1 || dimension > 2)
            throw config_error("Domain: dimension must be 1 or 2");
        for (int d = 0; d < dimension; ++d) {
            if (!(lengths[d] > 0.0))
                throw config_error("Domain: lengths must be positive");
            if (grid_points[d] < 4)
                throw config_error("Domain: at least 4 grid points per axis required");
        }
    }
};

} // namespace fqch
