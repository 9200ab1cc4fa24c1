#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "campusflux/timeseries.hpp"

namespace cflux {

/// Lagged embedding of a series: column j holds the window
/// [x_j, ..., x_{j+L-1}], so entries are constant along anti-diagonals.
struct TrajectoryMatrix {
  Eigen::MatrixXd entries;  // L x K
  int source_n = 0;

  int window() const { return static_cast<int>(entries.rows()); }  // L
  int lagged() const { return static_cast<int>(entries.cols()); }  // K = N - L + 1
};

/// One rank-one component of the decomposition. index is the 1-based rank
/// position; sigma values across a decomposition are non-increasing and u, v
/// are unit vectors of length L and K.
struct EigenTriple {
  int index = 0;
  double sigma = 0;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
};

/// Ordered partition (or selection) of eigen-triple indices, 1-based.
struct Grouping {
  std::vector<std::vector<int>> groups;
  std::vector<std::string> labels;  // parallel to groups; may be empty

  /// Throws std::invalid_argument unless groups are non-empty, disjoint and
  /// within 1..d.
  void validate(int d) const;
};

/// trend {1} / daily {2,3} / weekly {4,5} / noise {rest}, truncated to the
/// number of available components.
Grouping default_grouping(int d);

struct WCorrelationMatrix {
  Eigen::MatrixXd entries;  // m x m, symmetric, unit diagonal
  int size() const { return static_cast<int>(entries.rows()); }
};

/// Embed a series with window length L. Requires 2 <= L <= floor(N/2).
TrajectoryMatrix embed(const std::vector<double>& values, int window);
TrajectoryMatrix embed(const TimeSeries& series, int window);

/// Read the series back off the anti-diagonals. Errors if any anti-diagonal
/// deviates by more than 1e-9 (the matrix is not Hankel).
std::vector<double> unembed(const TrajectoryMatrix& matrix);

/// Full SVD into eigen triples, sorted by descending sigma. Components with
/// sigma <= 1e-12 * sigma_1 are dropped as numerical zeros.
std::vector<EigenTriple> decompose(const TrajectoryMatrix& matrix);

/// Sum the selected rank-one matrices and diagonal-average back to a series
/// of length n (= L + K - 1). With clamp, negative outputs become zero.
std::vector<double> reconstruct(const std::vector<EigenTriple>& triples,
                                const std::vector<int>& group, int n, bool clamp);

/// Weighted correlation of two equal-length series, where the weight of each
/// sample is how many times it appears in the L-window embedding.
double w_correlation(const std::vector<double>& a, const std::vector<double>& b, int window);

/// Pairwise w-correlations of the groups' reconstructions.
WCorrelationMatrix w_correlation_matrix(const std::vector<EigenTriple>& triples,
                                        const Grouping& grouping, int n);

/// sigma_i^2 / sum_j sigma_j^2 for each triple; sums to one.
std::vector<double> relative_contribution(const std::vector<EigenTriple>& triples);

/// Convenience bundle for export and downstream analysis.
struct Decomposition {
  int window = 0;   // L
  int lagged = 0;   // K
  int length = 0;   // N
  std::vector<EigenTriple> triples;
};

Decomposition decompose_series(const TimeSeries& series, int window);

/// Default window: floor(N/2) capped at one week of samples, so both the
/// daily and the weekly period fit inside the window.
int default_window(int n, std::int64_t step);

}  // namespace cflux
