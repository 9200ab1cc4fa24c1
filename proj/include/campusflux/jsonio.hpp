#pragma once

#include <string>

#include "campusflux/ecosystem.hpp"
#include "campusflux/forecast.hpp"
#include "campusflux/ssa.hpp"
#include "campusflux/weathermap.hpp"

namespace cflux {

// Layout file schema:
//   { "width": int, "height": int,
//     "buildings": [ { "id": str, "polygon": [[x, y], ...] }, ... ] }
CampusLayout load_layout(const std::string& path);
void save_layout(const CampusLayout& layout, const std::string& path);

void write_density_grid(const DensityGrid& grid, const std::string& path);

constexpr int kDefaultExportComponents = 16;

// Contributions cover every retained triple so they sum to 1; full u/v
// vectors are written only for the first max_components triples.
void write_decomposition(const std::string& building_id, const Decomposition& dec,
                         const std::string& path, int max_components = kDefaultExportComponents);

void write_holdout(const std::string& building_id, const HoldoutReport& report,
                   const std::string& path);

void write_classification(const Classification& classification, const std::string& path);

void write_shock(const ShockReport& report, const std::string& path);

}  // namespace cflux
