#include "campusflux/ssa.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "campusflux/errors.hpp"

namespace cflux {

void Grouping::validate(int d) const {
  if (groups.empty()) throw std::invalid_argument("grouping: no groups");
  if (!labels.empty() && labels.size() != groups.size())
    throw std::invalid_argument("grouping: labels/groups length mismatch");
  std::set<int> seen;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("grouping: empty group");
    for (int idx : g) {
      if (idx < 1 || idx > d)
        throw std::invalid_argument("grouping: index " + std::to_string(idx) +
                                    " outside 1.." + std::to_string(d));
      if (!seen.insert(idx).second)
        throw std::invalid_argument("grouping: index " + std::to_string(idx) +
                                    " appears in more than one group");
    }
  }
}

Grouping default_grouping(int d) {
  if (d < 1) throw std::invalid_argument("default_grouping: need d >= 1");
  Grouping g;
  g.groups.push_back({1});
  g.labels.push_back("trend");
  auto add_range = [&](int lo, int hi, const char* label) {
    std::vector<int> ids;
    for (int i = lo; i <= hi && i <= d; ++i) ids.push_back(i);
    if (!ids.empty()) {
      g.groups.push_back(std::move(ids));
      g.labels.emplace_back(label);
    }
  };
  add_range(2, 3, "daily");
  add_range(4, 5, "weekly");
  add_range(6, d, "noise");
  return g;
}

TrajectoryMatrix embed(const std::vector<double>& values, int window) {
  const int n = static_cast<int>(values.size());
  const int max_l = n / 2;
  if (window < 2 || window > max_l)
    throw std::invalid_argument("embed: window length " + std::to_string(window) +
                                " outside the legal interval [2, " + std::to_string(max_l) +
                                "] for series length " + std::to_string(n));
  const int k = n - window + 1;
  TrajectoryMatrix m;
  m.source_n = n;
  m.entries.resize(window, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < window; ++i) m.entries(i, j) = values[i + j];
  return m;
}

TrajectoryMatrix embed(const TimeSeries& series, int window) {
  return embed(series.values, window);
}

std::vector<double> unembed(const TrajectoryMatrix& matrix) {
  const int l = matrix.window();
  const int k = matrix.lagged();
  const int n = l + k - 1;
  std::vector<double> out(n);
  for (int s = 0; s < n; ++s) {
    const int i0 = std::max(0, s - k + 1);
    const int i1 = std::min(l - 1, s);
    const double ref = matrix.entries(i0, s - i0);
    for (int i = i0; i <= i1; ++i)
      if (std::abs(matrix.entries(i, s - i) - ref) > 1e-9)
        throw std::invalid_argument("unembed: matrix is not Hankel (anti-diagonal " +
                                    std::to_string(s) + " is not constant)");
    out[s] = ref;
  }
  return out;
}

std::vector<EigenTriple> decompose(const TrajectoryMatrix& matrix) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix.entries,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw numeric_error("decompose: SVD did not converge");

  const Eigen::VectorXd& sigma = svd.singularValues();
  const int m = static_cast<int>(sigma.size());
  if (m == 0 || sigma(0) <= 0)
    throw numeric_error("decompose: trajectory matrix has no signal");

  // Singular values below this are indistinguishable from zero in floating
  // point; d would otherwise count pure rounding noise.
  const double tol = 1e-12 * sigma(0);
  int d = 0;
  while (d < m && sigma(d) > tol) ++d;

  std::vector<EigenTriple> triples(d);
  for (int i = 0; i < d; ++i) {
    triples[i].index = i + 1;
    triples[i].sigma = sigma(i);
    triples[i].u = svd.matrixU().col(i);
    triples[i].v = svd.matrixV().col(i);
  }
  return triples;
}

namespace {

void check_group(const std::vector<EigenTriple>& triples, const std::vector<int>& group) {
  if (triples.empty()) throw std::invalid_argument("no eigen triples");
  if (group.empty()) throw std::invalid_argument("empty group");
  const int d = static_cast<int>(triples.size());
  for (int idx : group)
    if (idx < 1 || idx > d)
      throw std::invalid_argument("group index " + std::to_string(idx) + " outside 1.." +
                                  std::to_string(d));
}

}  // namespace

std::vector<double> reconstruct(const std::vector<EigenTriple>& triples,
                                const std::vector<int>& group, int n, bool clamp) {
  check_group(triples, group);
  const int l = static_cast<int>(triples.front().u.size());
  const int k = static_cast<int>(triples.front().v.size());
  if (n != l + k - 1)
    throw std::invalid_argument("reconstruct: n = " + std::to_string(n) +
                                " inconsistent with component dimensions (expect " +
                                std::to_string(l + k - 1) + ")");

  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(l, k);
  for (int idx : group) {
    const EigenTriple& t = triples[idx - 1];
    if (t.u.size() != l || t.v.size() != k)
      throw std::invalid_argument("reconstruct: mixed component dimensions");
    sum.noalias() += t.sigma * t.u * t.v.transpose();
  }

  // Anti-diagonal means turn the grouped matrix back into a series; this is
  // the least-squares Hankel projection.
  std::vector<double> out(n);
  for (int s = 0; s < n; ++s) {
    const int i0 = std::max(0, s - k + 1);
    const int i1 = std::min(l - 1, s);
    double acc = 0;
    for (int i = i0; i <= i1; ++i) acc += sum(i, s - i);
    out[s] = acc / (i1 - i0 + 1);
    if (clamp && out[s] < 0) out[s] = 0;
  }
  return out;
}

double w_correlation(const std::vector<double>& a, const std::vector<double>& b, int window) {
  const int n = static_cast<int>(a.size());
  if (b.size() != a.size())
    throw std::invalid_argument("w_correlation: length mismatch");
  if (window < 2 || window > n / 2)
    throw std::invalid_argument("w_correlation: window outside [2, n/2]");

  const int k = n - window + 1;
  const int l_star = std::min(window, k);
  const int k_star = std::max(window, k);

  double ab = 0, aa = 0, bb = 0;
  for (int i = 1; i <= n; ++i) {
    double w;
    if (i < l_star)
      w = i;
    else if (i <= k_star)
      w = l_star;
    else
      w = n - i + 1;
    ab += w * a[i - 1] * b[i - 1];
    aa += w * a[i - 1] * a[i - 1];
    bb += w * b[i - 1] * b[i - 1];
  }
  if (aa <= 0 || bb <= 0)
    throw std::invalid_argument("w_correlation: series with zero w-norm");
  const double rho = ab / (std::sqrt(aa) * std::sqrt(bb));
  return std::clamp(rho, -1.0, 1.0);
}

WCorrelationMatrix w_correlation_matrix(const std::vector<EigenTriple>& triples,
                                        const Grouping& grouping, int n) {
  const int d = static_cast<int>(triples.size());
  grouping.validate(d);
  const int m = static_cast<int>(grouping.groups.size());
  const int window = d > 0 ? static_cast<int>(triples.front().u.size()) : 0;

  std::vector<std::vector<double>> recs(m);
  for (int i = 0; i < m; ++i)
    recs[i] = reconstruct(triples, grouping.groups[i], n, false);

  WCorrelationMatrix w;
  w.entries = Eigen::MatrixXd::Identity(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double rho = w_correlation(recs[i], recs[j], window);
      w.entries(i, j) = rho;
      w.entries(j, i) = rho;
    }
  return w;
}

std::vector<double> relative_contribution(const std::vector<EigenTriple>& triples) {
  if (triples.empty()) throw std::invalid_argument("relative_contribution: no triples");
  double total = 0;
  for (const auto& t : triples) total += t.sigma * t.sigma;
  std::vector<double> out(triples.size());
  for (std::size_t i = 0; i < triples.size(); ++i)
    out[i] = triples[i].sigma * triples[i].sigma / total;
  return out;
}

Decomposition decompose_series(const TimeSeries& series, int window) {
  Decomposition d;
  d.window = window;
  d.length = series.size();
  d.lagged = d.length - window + 1;
  d.triples = decompose(embed(series, window));
  return d;
}

int default_window(int n, std::int64_t step) {
  const std::int64_t week_samples = kSecondsPerWeek / std::max<std::int64_t>(step, 1);
  std::int64_t window = n / 2;
  if (week_samples >= 2 && window > week_samples) window = week_samples;
  if (window < 2) window = 2;
  return static_cast<int>(window);
}

}  // namespace cflux
