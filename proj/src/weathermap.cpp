#include "campusflux/weathermap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "campusflux/errors.hpp"
#include "campusflux/jsonio.hpp"
#include "campusflux/synth.hpp"

namespace cflux {

namespace {

int orientation(const Point& a, const Point& b, const Point& c) {
  const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (cross > 1e-12) return 1;
  if (cross < -1e-12) return -1;
  return 0;
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
         std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

bool point_in_polygon(const Point& p, const Polygon& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) &&
        p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
      inside = !inside;
  }
  return inside;
}

void validate_layout(const CampusLayout& layout) {
  if (layout.width <= 0 || layout.height <= 0)
    throw std::invalid_argument("layout: extent must be positive");
  std::set<std::string> ids;
  for (const Building& b : layout.buildings) {
    if (!ids.insert(b.id).second)
      throw std::invalid_argument("layout: duplicate building id '" + b.id + "'");
    const std::size_t m = b.footprint.size();
    if (m < 3)
      throw std::invalid_argument("layout: footprint of '" + b.id + "' has fewer than 3 vertices");
    for (const Point& p : b.footprint)
      if (p.x < 0 || p.x > layout.width || p.y < 0 || p.y > layout.height)
        throw std::invalid_argument("layout: footprint of '" + b.id + "' leaves the extent");
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        // Adjacent edges share a vertex and may touch there; any other
        // contact makes the polygon non-simple.
        if (j == i + 1 || (i == 0 && j == m - 1)) continue;
        if (segments_intersect(b.footprint[i], b.footprint[(i + 1) % m], b.footprint[j],
                               b.footprint[(j + 1) % m]))
          throw std::invalid_argument("layout: footprint of '" + b.id + "' self-intersects");
      }
  }
}

std::vector<Point> scatter_devices(const CampusLayout& layout,
                                   const std::map<std::string, int>& counts, std::uint64_t seed) {
  std::set<std::string> known;
  for (const Building& b : layout.buildings) known.insert(b.id);
  std::string unknown;
  for (const auto& [id, count] : counts) {
    if (count < 0) throw std::invalid_argument("scatter_devices: negative count for '" + id + "'");
    if (!known.count(id)) unknown += unknown.empty() ? id : ", " + id;
  }
  if (!unknown.empty())
    throw data_error("scatter_devices: counts reference unknown buildings: " + unknown);

  std::vector<Point> points;
  for (const Building& b : layout.buildings) {
    const auto it = counts.find(b.id);
    if (it == counts.end() || it->second == 0) continue;
    double x0 = b.footprint[0].x, x1 = x0, y0 = b.footprint[0].y, y1 = y0;
    for (const Point& p : b.footprint) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    SplitMix64 rng(seed ^ fnv1a64(b.id));
    for (int c = 0; c < it->second; ++c) {
      Point p;
      int attempts = 0;
      do {
        if (++attempts > 100000)
          throw numeric_error("scatter_devices: footprint of '" + b.id +
                              "' rejects all samples (degenerate polygon)");
        p.x = x0 + rng.uniform() * (x1 - x0);
        p.y = y0 + rng.uniform() * (y1 - y0);
      } while (!point_in_polygon(p, b.footprint));
      points.push_back(p);
    }
  }
  return points;
}

double scott_bandwidth(const std::vector<Point>& points) {
  const std::size_t n = points.size();
  if (n == 0) return 0;
  double mx = 0, my = 0;
  for (const Point& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double vx = 0, vy = 0;
  for (const Point& p : points) {
    vx += (p.x - mx) * (p.x - mx);
    vy += (p.y - my) * (p.y - my);
  }
  const double sigma = (std::sqrt(vx / n) + std::sqrt(vy / n)) / 2;
  return std::pow(static_cast<double>(n), -1.0 / 6.0) * sigma;
}

ScalarField kde(const std::vector<Point>& points, double width, double height, double bandwidth,
                int resolution) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("kde: extent must be positive");
  if (resolution < 2) throw std::invalid_argument("kde: resolution must be >= 2");

  ScalarField field;
  field.width = width;
  field.height = height;
  field.nx = resolution;
  field.ny = std::max(2, static_cast<int>(std::lround(resolution * height / width)));
  field.values.assign(static_cast<std::size_t>(field.nx) * field.ny, 0.0);
  if (points.empty()) return field;
  if (bandwidth <= 0) throw std::invalid_argument("kde: bandwidth must be positive");

  // The Gaussian separates per axis, so each point contributes an outer
  // product of one-dimensional factors.
  const double inv2h2 = 1.0 / (2 * bandwidth * bandwidth);
  std::vector<double> fx(field.nx), fy(field.ny);
  for (const Point& p : points) {
    for (int i = 0; i < field.nx; ++i) {
      const double d = (i + 0.5) * field.dx() - p.x;
      fx[i] = std::exp(-d * d * inv2h2);
    }
    for (int j = 0; j < field.ny; ++j) {
      const double d = (j + 0.5) * field.dy() - p.y;
      fy[j] = std::exp(-d * d * inv2h2);
    }
    for (int j = 0; j < field.ny; ++j) {
      double* row = field.values.data() + static_cast<std::size_t>(j) * field.nx;
      for (int i = 0; i < field.nx; ++i) row[i] += fy[j] * fx[i];
    }
  }
  const double norm = 1.0 / (points.size() * 2 * M_PI * bandwidth * bandwidth);
  for (double& v : field.values) v *= norm;
  return field;
}

namespace {

std::pair<int, int> axial_round(double q, double r) {
  const double x = q, z = r, y = -x - z;
  double rx = std::round(x), ry = std::round(y), rz = std::round(z);
  const double dx = std::abs(rx - x), dy = std::abs(ry - y), dz = std::abs(rz - z);
  if (dx > dy && dx > dz)
    rx = -ry - rz;
  else if (dy > dz)
    ry = -rx - rz;
  else
    rz = -rx - ry;
  return {static_cast<int>(rx), static_cast<int>(rz)};
}

constexpr double kSqrt3 = 1.7320508075688772;

}  // namespace

std::vector<HexCell> hexbin(const ScalarField& field, double hex_size) {
  if (hex_size <= 0) throw std::invalid_argument("hexbin: hex size must be positive");

  std::map<std::pair<int, int>, std::pair<double, int>> cells;
  for (int j = 0; j < field.ny; ++j)
    for (int i = 0; i < field.nx; ++i) {
      const Point c = field.center(i, j);
      const double q = (kSqrt3 / 3 * c.x - 1.0 / 3 * c.y) / hex_size;
      const double r = (2.0 / 3 * c.y) / hex_size;
      auto& acc = cells[axial_round(q, r)];
      acc.first += field.at(i, j);
      acc.second += 1;
    }

  std::vector<HexCell> out;
  out.reserve(cells.size());
  for (const auto& [qr, acc] : cells) {
    HexCell cell;
    cell.q = qr.first;
    cell.r = qr.second;
    cell.center = {hex_size * kSqrt3 * (qr.first + qr.second / 2.0),
                   hex_size * 1.5 * qr.second};
    cell.value = acc.first / acc.second;
    out.push_back(cell);
  }
  return out;
}

namespace {

// Edge of the node grid, keyed by its lower-left node and orientation;
// every contour vertex lies on exactly one such edge.
struct EdgeKey {
  int i, j;
  bool horizontal;
  bool operator<(const EdgeKey& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return horizontal < o.horizontal;
  }
};

struct Segment {
  EdgeKey a, b;
  Point pa, pb;
};

Point interp_on_edge(const ScalarField& field, const EdgeKey& e, double level) {
  const double va = field.at(e.i, e.j);
  const double vb = e.horizontal ? field.at(e.i + 1, e.j) : field.at(e.i, e.j + 1);
  const double t = (level - va) / (vb - va);
  const Point a = field.center(e.i, e.j);
  const Point b = e.horizontal ? field.center(e.i + 1, e.j) : field.center(e.i, e.j + 1);
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

}  // namespace

std::vector<ContourLine> contours(const ScalarField& field, const std::vector<double>& levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!std::isfinite(levels[i]) || levels[i] <= 0)
      throw std::invalid_argument("contours: levels must be positive and finite");
    if (i > 0 && levels[i] <= levels[i - 1])
      throw std::invalid_argument("contours: levels must be strictly increasing");
  }

  std::vector<ContourLine> out;
  for (const double level : levels) {
    std::vector<Segment> segments;
    for (int j = 0; j + 1 < field.ny; ++j)
      for (int i = 0; i + 1 < field.nx; ++i) {
        const bool b0 = field.at(i, j) > level;
        const bool b1 = field.at(i + 1, j) > level;
        const bool b2 = field.at(i + 1, j + 1) > level;
        const bool b3 = field.at(i, j + 1) > level;
        const int idx = b0 | b1 << 1 | b2 << 2 | b3 << 3;
        if (idx == 0 || idx == 15) continue;

        const EdgeKey bottom{i, j, true}, top{i, j + 1, true};
        const EdgeKey left{i, j, false}, right{i + 1, j, false};
        auto emit = [&](const EdgeKey& a, const EdgeKey& b) {
          segments.push_back({a, b, interp_on_edge(field, a, level),
                              interp_on_edge(field, b, level)});
        };
        switch (idx) {
          case 1: emit(left, bottom); break;
          case 2: emit(bottom, right); break;
          case 3: emit(left, right); break;
          case 4: emit(right, top); break;
          case 6: emit(bottom, top); break;
          case 7: emit(left, top); break;
          case 8: emit(top, left); break;
          case 9: emit(bottom, top); break;
          case 11: emit(right, top); break;
          case 12: emit(right, left); break;
          case 13: emit(right, bottom); break;
          case 14: emit(left, bottom); break;
          case 5: {
            // Saddle: the cell-center average picks which diagonal the
            // inside region follows.
            const double c = (field.at(i, j) + field.at(i + 1, j) + field.at(i + 1, j + 1) +
                              field.at(i, j + 1)) /
                             4;
            if (c > level) {
              emit(left, top);
              emit(bottom, right);
            } else {
              emit(left, bottom);
              emit(right, top);
            }
            break;
          }
          case 10: {
            const double c = (field.at(i, j) + field.at(i + 1, j) + field.at(i + 1, j + 1) +
                              field.at(i, j + 1)) /
                             4;
            if (c > level) {
              emit(left, bottom);
              emit(right, top);
            } else {
              emit(left, top);
              emit(bottom, right);
            }
            break;
          }
          default: break;
        }
      }

    // Chains follow shared edges; interior edges carry exactly two segment
    // ends, so open chains can only stop at the grid boundary.
    std::map<EdgeKey, std::vector<std::pair<std::size_t, bool>>> incident;
    for (std::size_t s = 0; s < segments.size(); ++s) {
      incident[segments[s].a].push_back({s, false});
      incident[segments[s].b].push_back({s, true});
    }
    std::vector<bool> used(segments.size(), false);
    auto walk = [&](std::size_t start, bool from_b, std::vector<Point>& pts) -> EdgeKey {
      std::size_t s = start;
      bool at_b = from_b;
      for (;;) {
        used[s] = true;
        const EdgeKey next_key = at_b ? segments[s].b : segments[s].a;
        pts.push_back(at_b ? segments[s].pb : segments[s].pa);
        const auto& inc = incident[next_key];
        std::size_t other = s;
        bool other_is_b = false;
        bool found = false;
        for (const auto& [si, end_b] : inc)
          if (!used[si]) {
            other = si;
            other_is_b = end_b;
            found = true;
            break;
          }
        if (!found) return next_key;
        s = other;
        at_b = !other_is_b;
      }
    };

    for (std::size_t s = 0; s < segments.size(); ++s) {
      if (used[s]) continue;
      ContourLine line;
      line.level = level;
      // Walk the chain away from the a-end first, then reverse and continue
      // from the b-end so the polyline covers the whole chain.
      std::vector<Point> back;
      used[s] = true;
      back.push_back(segments[s].pa);
      {
        const auto& inc = incident[segments[s].a];
        std::size_t other = 0;
        bool other_is_b = false;
        bool found = false;
        for (const auto& [si, end_b] : inc)
          if (!used[si]) {
            other = si;
            other_is_b = end_b;
            found = true;
            break;
          }
        if (found) walk(other, !other_is_b, back);
      }
      std::reverse(back.begin(), back.end());
      std::vector<Point> forward = std::move(back);
      walk(s, true, forward);

      // A closed loop revisits its first edge; detect by endpoint equality.
      const Point& first = forward.front();
      const Point& last = forward.back();
      line.closed = std::abs(first.x - last.x) < 1e-9 && std::abs(first.y - last.y) < 1e-9 &&
                    forward.size() > 2;
      if (line.closed) forward.pop_back();
      line.points = std::move(forward);
      if (line.points.size() >= 2) out.push_back(std::move(line));
    }
  }
  return out;
}

void write_ppm(const Image& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot open '" + path + "' for writing");
  out << "P6\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.rgb.data()),
            static_cast<std::streamsize>(image.rgb.size()));
  if (!out) throw data_error("write failed for '" + path + "'");
}

namespace {

void set_pixel(Image& img, int x, int y, const std::array<unsigned char, 3>& color) {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
  // Image rows run top to bottom while field y runs up; callers pass field
  // coordinates and this flips them.
  const std::size_t ofs = (static_cast<std::size_t>(img.height - 1 - y) * img.width + x) * 3;
  img.rgb[ofs] = color[0];
  img.rgb[ofs + 1] = color[1];
  img.rgb[ofs + 2] = color[2];
}

void draw_polyline(Image& img, const std::vector<Point>& pts, bool closed,
                   const std::array<unsigned char, 3>& color) {
  const std::size_t n = pts.size();
  if (n < 2) return;
  const std::size_t last = closed ? n : n - 1;
  for (std::size_t i = 0; i < last; ++i) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % n];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / 0.5)));
    for (int s = 0; s <= steps; ++s) {
      const double t = static_cast<double>(s) / steps;
      set_pixel(img, static_cast<int>(a.x + t * (b.x - a.x)),
                static_cast<int>(a.y + t * (b.y - a.y)), color);
    }
  }
}

}  // namespace

DensityGrid render_frame(const CampusLayout& layout, const std::map<std::string, int>& counts,
                         const FrameStyle& style, std::uint64_t seed, std::int64_t timestamp,
                         const std::string& image_path, const std::string& sidecar_path) {
  validate_layout(layout);

  const std::vector<Point> points = scatter_devices(layout, counts, seed);
  double bandwidth = style.bandwidth > 0 ? style.bandwidth : scott_bandwidth(points);
  if (bandwidth <= 0) bandwidth = std::max(layout.width, layout.height) / 60;

  ScalarField field = kde(points, layout.width, layout.height, bandwidth, style.resolution);
  // The probability density is scaled to device density so frames of an
  // emptying campus dim instead of renormalizing.
  for (double& v : field.values) v *= static_cast<double>(points.size());

  const double hex_size = style.hex_size > 0 ? style.hex_size : layout.width / 60;

  DensityGrid grid;
  grid.timestamp = timestamp;
  grid.bandwidth = bandwidth;
  grid.hex_size = hex_size;
  grid.hex_cells = hexbin(field, hex_size);

  double max_density = 0;
  for (double v : field.values) max_density = std::max(max_density, v);
  std::vector<double> levels = style.levels;
  if (levels.empty() && max_density > 0) {
    const double lo = 0.05 * max_density, hi = 0.95 * max_density;
    const double ratio = std::pow(hi / lo, 1.0 / 4.0);
    for (int i = 0; i < 5; ++i) levels.push_back(lo * std::pow(ratio, i));
  }
  grid.contours = contours(field, levels);

  double max_hex = 0;
  for (const HexCell& c : grid.hex_cells) max_hex = std::max(max_hex, c.value);

  Image img;
  img.width = static_cast<int>(std::lround(layout.width));
  img.height = static_cast<int>(std::lround(layout.height));
  img.rgb.assign(static_cast<std::size_t>(img.width) * img.height * 3, 0);

  std::map<std::pair<int, int>, double> hex_values;
  for (const HexCell& c : grid.hex_cells) hex_values[{c.q, c.r}] = c.value;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const double px = x + 0.5, py = y + 0.5;
      const double q = (kSqrt3 / 3 * px - 1.0 / 3 * py) / hex_size;
      const double r = (2.0 / 3 * py) / hex_size;
      const auto it = hex_values.find(axial_round(q, r));
      const double v = it == hex_values.end() ? 0 : it->second;
      const double t = max_hex > 0 ? v / max_hex : 0;
      std::array<unsigned char, 3> color;
      for (int c = 0; c < 3; ++c)
        color[c] = static_cast<unsigned char>(
            std::lround(style.low_color[c] + t * (style.high_color[c] - style.low_color[c])));
      set_pixel(img, x, y, color);
    }

  for (const ContourLine& line : grid.contours)
    draw_polyline(img, line.points, line.closed, style.contour_color);
  for (const Building& b : layout.buildings)
    draw_polyline(img, b.footprint, true, style.outline_color);

  write_ppm(img, image_path);
  write_density_grid(grid, sidecar_path);
  return grid;
}

std::vector<DensityGrid> render_sequence(const CampusLayout& layout,
                                         const std::vector<TimeSeries>& series,
                                         const std::vector<std::int64_t>& times,
                                         const FrameStyle& style, std::uint64_t seed,
                                         const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<DensityGrid> grids;
  grids.reserve(times.size());
  for (std::size_t f = 0; f < times.size(); ++f) {
    std::map<std::string, int> counts;
    for (const TimeSeries& s : series) {
      const int idx = s.index_of(times[f]);
      if (idx < 0)
        throw data_error("render_sequence: building '" + s.building_id +
                         "' has no sample at requested frame time");
      counts[s.building_id] = static_cast<int>(std::llround(s.values[idx]));
    }
    char name[32];
    std::snprintf(name, sizeof name, "frame_%03zu", f);
    const std::string base = out_dir + "/" + name;
    grids.push_back(
        render_frame(layout, counts, style, seed, times[f], base + ".ppm", base + ".json"));
  }
  return grids;
}

}  // namespace cflux
