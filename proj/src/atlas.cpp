#include "neuroscope/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "neuroscope/error.hpp"

namespace neuroscope {

namespace {

using Matrix = std::vector<double>;  // square, row-major

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double normalize_in_place(std::vector<double>& v) {
  const double n = std::sqrt(dot(v, v));
  if (n > 0.0)
    for (double& x : v) x /= n;
  return n;
}

Matrix multiply(const Matrix& a, const Matrix& b, std::size_t dim) {
  Matrix out(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      const double aik = a[i * dim + k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < dim; ++j) out[i * dim + j] += aik * b[k * dim + j];
    }
  return out;
}

std::vector<double> apply(const Matrix& m, std::span<const double> v, std::size_t dim) {
  std::vector<double> out(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) out[i] = dot({m.data() + i * dim, dim}, v);
  return out;
}

void orthogonalize(std::vector<double>& v, const std::vector<Eigenpair>& found) {
  // Twice is enough for numerical orthogonality.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& p : found) {
      const double c = dot(v, p.vector);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * p.vector[i];
    }
}

// Deterministic start vector (splitmix64), identical on every platform.
std::vector<double> start_vector(std::size_t dim, std::size_t salt) {
  std::uint64_t state = 0x9E3779B97F4A7C15ull * (salt + 1);
  std::vector<double> v(dim);
  for (double& x : v) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    x = static_cast<double>(z >> 11) * 0x1.0p-53 + 0.5;
  }
  return v;
}

constexpr int kSquarings = 6;  // iterate with B^64
constexpr std::size_t kMaxIterations = 200000;

}  // namespace

std::vector<Eigenpair> leading_eigenpairs(std::span<const double> matrix, std::size_t dim,
                                          std::size_t count, double tolerance) {
  if (matrix.size() != dim * dim) fail(ErrorCode::DimensionMismatch, "eigenproblem matrix is not dim x dim");
  if (count > dim) fail(ErrorCode::InvalidArgument, "more eigenpairs requested than the dimension");

  Matrix deflated(matrix.begin(), matrix.end());
  double scale = 0.0;
  for (double x : deflated) scale = std::max(scale, std::abs(x));

  std::vector<Eigenpair> found;
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0) {
      const Eigenpair& p = found.back();
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          deflated[i * dim + j] -= p.value * p.vector[i] * p.vector[j];
    }

    double remaining = 0.0;
    for (double x : deflated) remaining = std::max(remaining, std::abs(x));
    const bool negligible = scale == 0.0 || remaining <= scale * 1e-14;

    Matrix power = deflated;
    for (int s = 0; s < kSquarings && !negligible; ++s) {
      double norm = 0.0;
      for (double x : power) norm = std::max(norm, std::abs(x));
      if (norm == 0.0) break;
      for (double& x : power) x /= norm;
      power = multiply(power, power, dim);
    }

    std::vector<double> v = start_vector(dim, k);
    orthogonalize(v, found);
    normalize_in_place(v);
    for (std::size_t it = 0; it < kMaxIterations && !negligible; ++it) {
      std::vector<double> next = apply(power, v, dim);
      orthogonalize(next, found);
      if (normalize_in_place(next) == 0.0) break;
      double change = 0.0;
      for (std::size_t i = 0; i < dim; ++i) change = std::max(change, std::abs(next[i] - v[i]));
      v = std::move(next);
      if (change <= tolerance) break;
    }

    Eigenpair pair;
    pair.vector = std::move(v);
    pair.value = negligible ? 0.0 : std::max(0.0, dot(pair.vector, apply(deflated, pair.vector, dim)));
    found.push_back(std::move(pair));
  }
  return found;
}

Projection pca_project(std::span<const double> data, std::size_t rows, std::size_t cols,
                       std::size_t components) {
  if (rows < 2 || cols < 1) fail(ErrorCode::InvalidArgument, "PCA needs at least 2 rows and 1 column");
  if (components == 0) fail(ErrorCode::InvalidArgument, "PCA needs at least one component");
  if (data.size() != rows * cols) fail(ErrorCode::DimensionMismatch, "PCA data size does not match rows x cols");

  std::vector<double> centred(data.begin(), data.end());
  for (std::size_t j = 0; j < cols; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < rows; ++i) mean += centred[i * cols + j];
    mean /= static_cast<double>(rows);
    for (std::size_t i = 0; i < rows; ++i) centred[i * cols + j] -= mean;
  }
  const double denom = static_cast<double>(rows - 1);
  double total = 0.0;
  for (double x : centred) total += x * x;
  total /= denom;

  Projection out;
  out.rows = rows;
  out.components = components;
  out.coords.assign(rows * components, 0.0);
  out.explained_variance_ratio.assign(components, 0.0);
  if (total <= 0.0) return out;

  const bool use_covariance = cols <= rows;
  const std::size_t dim = use_covariance ? cols : rows;
  Matrix gram(dim * dim, 0.0);
  if (use_covariance) {
    for (std::size_t a = 0; a < cols; ++a)
      for (std::size_t b = a; b < cols; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += centred[i * cols + a] * centred[i * cols + b];
        gram[a * dim + b] = gram[b * dim + a] = s / denom;
      }
  } else {
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t b = a; b < rows; ++b) {
        const double s = dot({centred.data() + a * cols, cols}, {centred.data() + b * cols, cols});
        gram[a * dim + b] = gram[b * dim + a] = s / denom;
      }
  }

  const std::size_t solved = std::min(components, dim);
  const auto pairs = leading_eigenpairs(gram, dim, solved);
  for (std::size_t k = 0; k < solved; ++k) {
    const Eigenpair& p = pairs[k];
    out.explained_variance_ratio[k] = p.value / total;
    for (std::size_t i = 0; i < rows; ++i) {
      const double c = use_covariance
                           ? dot({centred.data() + i * cols, cols}, p.vector)
                           : p.vector[i] * std::sqrt(p.value * denom);
      out.coords[i * components + k] = c;
    }
    // Sign convention: the largest-magnitude coordinate is positive; near
    // ties (relative 1e-9) resolve to the lowest row.
    double peak = 0.0;
    for (std::size_t i = 0; i < rows; ++i) peak = std::max(peak, std::abs(out.at(i, k)));
    for (std::size_t i = 0; i < rows; ++i) {
      if (std::abs(out.at(i, k)) >= peak * (1.0 - 1e-9)) {
        if (out.at(i, k) < 0.0)
          for (std::size_t r = 0; r < rows; ++r) out.coords[r * components + k] *= -1.0;
        break;
      }
    }
  }
  return out;
}

Projection pca_project(const ActivationTable& embedding, std::size_t components) {
  std::vector<double> data(embedding.values.begin(), embedding.values.end());
  return pca_project(data, embedding.neurons, embedding.images, components);
}

}  // namespace neuroscope
