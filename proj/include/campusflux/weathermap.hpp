#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "campusflux/timeseries.hpp"

namespace cflux {

struct Point {
  double x = 0;
  double y = 0;
};

using Polygon = std::vector<Point>;

struct Building {
  std::string id;
  Polygon footprint;
};

struct CampusLayout {
  double width = 0;
  double height = 0;
  std::vector<Building> buildings;
};

// Rejects non-simple or out-of-extent footprints and duplicate ids.
void validate_layout(const CampusLayout& layout);

bool point_in_polygon(const Point& p, const Polygon& poly);

// Regular grid of field samples taken at cell centers; values are row-major
// with index j*nx + i for cell (i, j).
struct ScalarField {
  double width = 0;
  double height = 0;
  int nx = 0;
  int ny = 0;
  std::vector<double> values;

  double dx() const { return width / nx; }
  double dy() const { return height / ny; }
  Point center(int i, int j) const { return {(i + 0.5) * dx(), (j + 0.5) * dy()}; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
};

struct HexCell {
  int q = 0;
  int r = 0;
  Point center;
  double value = 0;
};

struct ContourLine {
  double level = 0;
  std::vector<Point> points;
  bool closed = false;
};

struct DensityGrid {
  std::int64_t timestamp = 0;
  double bandwidth = 0;
  double hex_size = 0;
  std::vector<HexCell> hex_cells;
  std::vector<ContourLine> contours;
};

struct FrameStyle {
  int resolution = 240;        // field cells along the extent width
  double bandwidth = 0;        // 0 selects Scott's rule
  double hex_size = 0;         // 0 selects extent width / 60
  std::vector<double> levels;  // empty selects 5 geometric levels, 5%..95% of max
  std::array<unsigned char, 3> low_color{12, 16, 38};
  std::array<unsigned char, 3> high_color{255, 244, 98};
  std::array<unsigned char, 3> contour_color{235, 235, 235};
  std::array<unsigned char, 3> outline_color{120, 130, 150};
};

// One uniformly-sampled point inside the footprint per counted device;
// deterministic per (seed, building id).
std::vector<Point> scatter_devices(const CampusLayout& layout,
                                   const std::map<std::string, int>& counts, std::uint64_t seed);

// Gaussian probability density over the extent; the all-zero field when no
// points exist.
ScalarField kde(const std::vector<Point>& points, double width, double height, double bandwidth,
                int resolution);

double scott_bandwidth(const std::vector<Point>& points);

// Pointy-top axial tiling; each hex averages the field samples whose cell
// centers land in it. Cells are sorted by (q, r).
std::vector<HexCell> hexbin(const ScalarField& field, double hex_size);

// Marching-squares isolines over the field's cell-center grid; polylines are
// closed or end on the sampled boundary.
std::vector<ContourLine> contours(const ScalarField& field, const std::vector<double>& levels);

struct Image {
  int width = 0;
  int height = 0;
  std::vector<unsigned char> rgb;
};

void write_ppm(const Image& image, const std::string& path);

// Full single-frame pipeline: scatter, KDE scaled by device count, hexbin,
// contours, raster + sidecar files. The density payload depends only on
// (layout, counts, style, seed); the timestamp is carried through verbatim.
DensityGrid render_frame(const CampusLayout& layout, const std::map<std::string, int>& counts,
                         const FrameStyle& style, std::uint64_t seed, std::int64_t timestamp,
                         const std::string& image_path, const std::string& sidecar_path);

// One frame per requested time, named frame_000.ppm / frame_000.json with
// zero-padded ordinals. Every series must contain every requested time.
std::vector<DensityGrid> render_sequence(const CampusLayout& layout,
                                         const std::vector<TimeSeries>& series,
                                         const std::vector<std::int64_t>& times,
                                         const FrameStyle& style, std::uint64_t seed,
                                         const std::string& out_dir);

}  // namespace cflux
