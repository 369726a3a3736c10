#include "gbas/grid_figure.hpp"

#include "gbas/csv.hpp"
#include "gbas/regions.hpp"

#include <fstream>
#include <map>

namespace gbas {

double GridCensus::x_at(Index col) const {
    const double step = (box.xmax - box.xmin) / static_cast<double>(resolution);
    return box.xmin + (static_cast<double>(col) + 0.5) * step;
}

double GridCensus::y_at(Index row) const {
    const double step = (box.ymax - box.ymin) / static_cast<double>(resolution);
    return box.ymax - (static_cast<double>(row) + 0.5) * step;
}

GridCensus grid_sign_census(const Network& net, Index layer, const GridBox& box,
                            Index resolution) {
    if (net.latent_dim != 2)
        throw DimensionError("grid_sign_census: requires a 2-D latent space, got " +
                             std::to_string(net.latent_dim));
    if (resolution < 2) throw ConfigError("grid_sign_census: resolution must be >= 2");
    if (!(box.xmax > box.xmin && box.ymax > box.ymin))
        throw ConfigError("grid_sign_census: degenerate box");

    GridCensus census;
    census.box = box;
    census.resolution = resolution;
    census.layer_index = layer;
    census.cell_ids.resize(static_cast<std::size_t>(resolution * resolution));

    std::map<std::vector<int>, int> pattern_ids;
    Vector z(2);
    for (Index r = 0; r < resolution; ++r) {
        for (Index c = 0; c < resolution; ++c) {
            z[0] = census.x_at(c);
            z[1] = census.y_at(r);
            const SignVector signs = sign_pattern(net, z, layer);
            std::vector<int> key(signs.data(), signs.data() + signs.size());
            auto [it, inserted] = pattern_ids.try_emplace(std::move(key), census.num_patterns);
            if (inserted) ++census.num_patterns;
            census.cell_ids[static_cast<std::size_t>(r * resolution + c)] = it->second;
        }
    }

    census.boundary.assign(census.cell_ids.size(), 0);
    auto id_at = [&](Index r, Index c) {
        return census.cell_ids[static_cast<std::size_t>(r * resolution + c)];
    };
    for (Index r = 0; r < resolution; ++r)
        for (Index c = 0; c < resolution; ++c) {
            const bool flips = (c + 1 < resolution && id_at(r, c) != id_at(r, c + 1)) ||
                               (r + 1 < resolution && id_at(r, c) != id_at(r + 1, c));
            if (flips) census.boundary[static_cast<std::size_t>(r * resolution + c)] = 1;
        }
    return census;
}

void write_grid_csv(const GridCensus& census, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write grid file: " + path.string());
    out << "ix,iy,x,y,cell_id,boundary\n";
    for (Index r = 0; r < census.resolution; ++r)
        for (Index c = 0; c < census.resolution; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r * census.resolution + c);
            out << c << ',' << r << ',' << format_double(census.x_at(c)) << ','
                << format_double(census.y_at(r)) << ',' << census.cell_ids[idx] << ','
                << static_cast<int>(census.boundary[idx]) << '\n';
        }
}

void write_grid_pgm(const GridCensus& census, const std::filesystem::path& path,
                    const ExplorationResult* overlay) {
    const Index res = census.resolution;
    std::vector<std::uint8_t> gray(static_cast<std::size_t>(res * res));
    for (std::size_t i = 0; i < gray.size(); ++i) {
        // scramble IDs across mid grays; 0 and 255 stay reserved
        const int id = census.cell_ids[i];
        gray[i] = census.boundary[i] ? 0 : static_cast<std::uint8_t>(32 + (id * 47 + 13) % 192);
    }

    if (overlay != nullptr) {
        const double sx = (census.box.xmax - census.box.xmin) / static_cast<double>(res);
        const double sy = (census.box.ymax - census.box.ymin) / static_cast<double>(res);
        auto plot = [&](const Vector& z, std::uint8_t value) {
            const Index c = static_cast<Index>((z[0] - census.box.xmin) / sx);
            const Index r = static_cast<Index>((census.box.ymax - z[1]) / sy);
            if (c >= 0 && c < res && r >= 0 && r < res)
                gray[static_cast<std::size_t>(r * res + c)] = value;
        };
        for (const Vector& z : overlay->rejected) plot(z, 16);
        for (const Vector& z : overlay->accepted) plot(z, 255);
    }

    write_pgm(path, res, res, gray);
}

}  // namespace gbas
