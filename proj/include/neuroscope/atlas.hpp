#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "neuroscope/activation_index.hpp"

namespace neuroscope {

/// The neuron embedding is the activation table itself: row i is neuron
/// i's max activation on every corpus image.
inline const ActivationTable& build_embedding(const ActivationIndex& index) { return index.table; }

struct Projection {
  std::size_t rows = 0;
  std::size_t components = 0;
  std::vector<double> coords;                 // rows x components, row-major
  std::vector<double> explained_variance_ratio;  // per component

  double at(std::size_t row, std::size_t component) const {
    return coords[row * components + component];
  }
  double x(std::size_t row) const { return at(row, 0); }
  double y(std::size_t row) const { return at(row, 1); }
};

/// PCA of a rows x cols matrix (row-major): columns are centred over rows,
/// rows are projected on the leading principal axes. The eigenproblem is
/// solved on whichever of the cols x cols covariance or rows x rows Gram
/// matrix is smaller. Each component's coordinate of largest magnitude is
/// made positive. Identical rows give all-zero coordinates.
/// Throws InvalidArgument when rows < 2, cols < 1, or components is 0.
Projection pca_project(std::span<const double> data, std::size_t rows, std::size_t cols,
                       std::size_t components = 2);
Projection pca_project(const ActivationTable& embedding, std::size_t components = 2);

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;
};

/// Leading eigenpairs of a symmetric positive semi-definite matrix by
/// deflated power iteration on repeated squares, with each iterate
/// re-orthogonalized against the pairs already found. Deterministic.
std::vector<Eigenpair> leading_eigenpairs(std::span<const double> matrix, std::size_t dim,
                                          std::size_t count, double tolerance = 1e-9);

}  // namespace neuroscope
