#pragma once

#include <array>
#include <vector>

#include "circpot/holed_domain.hpp"

namespace circpot::holed {

// five-point Neumann Laplacian on the Cartesian cells whose centers fall in E
struct MaskedGrid {
    std::vector<Vec2> centers;
    std::vector<std::array<int, 4>> nbrs;  // -1 where the stencil leaves the mask
    double h = 0.0;

    std::size_t size() const { return centers.size(); }
};

MaskedGrid build_masked_grid(const HoledDomain& dom, double grid_h);

// out = A v with A = (deg I - W)/h^2; parallel and serial variants share the
// exact arithmetic per entry
void laplacian_apply(const MaskedGrid& grid, const std::vector<double>& v,
                     std::vector<double>& out);
void laplacian_apply_serial(const MaskedGrid& grid, const std::vector<double>& v,
                            std::vector<double>& out);

bool grid_connected(const MaskedGrid& grid);

}  // namespace circpot::holed
