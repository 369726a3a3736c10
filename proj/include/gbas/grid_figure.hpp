#pragma once

#include "gbas/explorer.hpp"
#include "gbas/network.hpp"

#include <filesystem>
#include <vector>

namespace gbas {

struct GridBox {
    double xmin = -3.0, xmax = 3.0;
    double ymin = -3.0, ymax = 3.0;
};

/// Sign-pattern census over a 2-D latent grid. Cell IDs number distinct
/// patterns in scan order; a cell is a boundary cell when its pattern
/// differs from its right or lower neighbour.
struct GridCensus {
    GridBox box;
    Index resolution = 0;
    Index layer_index = 0;
    std::vector<int> cell_ids;          // row-major, row 0 at ymax
    std::vector<std::uint8_t> boundary; // same layout
    int num_patterns = 0;

    double x_at(Index col) const;
    double y_at(Index row) const;
};

/// Evaluates the sign pattern at every cell centre. Requires a 2-D
/// latent space.
GridCensus grid_sign_census(const Network& net, Index layer, const GridBox& box,
                            Index resolution);

/// ix,iy,x,y,cell_id,boundary rows for the whole grid.
void write_grid_csv(const GridCensus& census, const std::filesystem::path& path);

/// Graymap of the census: each pattern gets a stable gray, boundary
/// cells are black, overlaid accepted points white and rejected points
/// near-black.
void write_grid_pgm(const GridCensus& census, const std::filesystem::path& path,
                    const ExplorationResult* overlay = nullptr);

}  // namespace gbas
