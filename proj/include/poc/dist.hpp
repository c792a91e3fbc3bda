#pragma once

// Experimental / observational input distributions and their validation.
//
// Storage is 0-based: row t is treatment x_{t+1}, column o is outcome
// y_{o+1}. Text surfaces (queries, docs) are 1-based.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include "poc/error.hpp"

namespace poc {

inline constexpr double kDefaultTol = 1e-9;

/// Dense row-major matrix of probabilities.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  double row_sum(std::size_t r) const {
    double s = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c);
    return s;
  }
  double col_sum(std::size_t c) const {
    double s = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, c);
    return s;
  }
  double total() const {
    double s = 0.0;
    for (double v : data_) s += v;
    return s;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Dims {
  std::size_t n_treatments = 0;
  std::size_t n_outcomes = 0;

  bool square() const noexcept { return n_treatments == n_outcomes; }
  std::size_t side() const noexcept { return std::max(n_treatments, n_outcomes); }

  friend bool operator==(const Dims&, const Dims&) = default;
};

/// P(Y = y_o | do(X = x_t)); each row is a distribution.
struct ExperimentalDistribution {
  Matrix probs;
  double operator()(std::size_t t, std::size_t o) const { return probs(t, o); }
  friend bool operator==(const ExperimentalDistribution&, const ExperimentalDistribution&) = default;
};

/// Joint P(X = x_t, Y = y_o); all cells sum to one.
struct ObservationalDistribution {
  Matrix probs;
  double operator()(std::size_t t, std::size_t o) const { return probs(t, o); }
  friend bool operator==(const ObservationalDistribution&, const ObservationalDistribution&) = default;
};

/// Unvalidated input as read from a file or built by hand. When `counts`
/// is set, experimental rows are normalized per row and the observational
/// table by its grand total before validation.
struct RawDataset {
  std::vector<std::vector<double>> experimental;
  std::vector<std::vector<double>> observational;
  bool counts = false;
};

class Dataset;
inline Dataset validate_dataset(const RawDataset& raw, double tol = kDefaultTol);
inline Dataset squarify(const Dataset& ds);

/// A validated experimental + observational pair. Only obtainable through
/// validate_dataset (or operations that preserve validity), so every
/// instance satisfies the shape, sum and compatibility invariants.
class Dataset {
 public:
  const Dims& dims() const noexcept { return dims_; }
  const ExperimentalDistribution& experimental() const noexcept { return exp_; }
  const ObservationalDistribution& observational() const noexcept { return obs_; }

  double exp(std::size_t t, std::size_t o) const { return exp_(t, o); }
  double obs(std::size_t t, std::size_t o) const { return obs_(t, o); }

  /// P(x_t) = sum_o P(x_t, y_o).
  double px(std::size_t t) const { return obs_.probs.row_sum(t); }
  /// P(y_o) = sum_t P(x_t, y_o).
  double py(std::size_t o) const { return obs_.probs.col_sum(o); }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  Dataset(Dims dims, Matrix exp, Matrix obs)
      : dims_(dims), exp_{std::move(exp)}, obs_{std::move(obs)} {}

  friend Dataset validate_dataset(const RawDataset&, double);
  friend Dataset squarify(const Dataset&);

  Dims dims_;
  ExperimentalDistribution exp_;
  ObservationalDistribution obs_;
};

namespace detail {

inline std::string fmt_residual(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Clamps v into [0,1] when it is within tol of the boundary.
inline double clamp_entry(double v, double tol, const char* which, std::size_t r, std::size_t c) {
  if (!std::isfinite(v) || v < -tol || v > 1.0 + tol) {
    throw Error(ErrorKind::EntryOutOfRange,
                std::string(which) + " cell (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                    ") = " + fmt_residual(v) + " outside [0,1]");
  }
  return std::clamp(v, 0.0, 1.0);
}

inline Matrix to_matrix(const std::vector<std::vector<double>>& rows, const char* which) {
  if (rows.empty()) throw Error(ErrorKind::ShapeMismatch, std::string(which) + " matrix is empty");
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorKind::ShapeMismatch, std::string(which) + " row " + std::to_string(r + 1) + " has " +
                                                std::to_string(rows[r].size()) + " entries, expected " +
                                                std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace detail

/// Divides experimental rows by their row sums and the observational table
/// by its grand total. Input with `counts == false` is returned unchanged.
inline RawDataset normalize_counts(const RawDataset& raw) {
  if (!raw.counts) return raw;
  RawDataset out = raw;
  out.counts = false;
  for (std::size_t r = 0; r < out.experimental.size(); ++r) {
    double s = 0.0;
    for (double v : out.experimental[r]) {
      if (v < 0) throw Error(ErrorKind::EntryOutOfRange, "negative count in experimental row " + std::to_string(r + 1));
      s += v;
    }
    if (s <= 0) throw Error(ErrorKind::RowSumViolation, "experimental row " + std::to_string(r + 1) + " has zero total count");
    for (double& v : out.experimental[r]) v /= s;
  }
  double total = 0.0;
  for (const auto& row : out.observational)
    for (double v : row) {
      if (v < 0) throw Error(ErrorKind::EntryOutOfRange, "negative count in observational table");
      total += v;
    }
  if (total <= 0) throw Error(ErrorKind::JointSumViolation, "observational table has zero total count");
  for (auto& row : out.observational)
    for (double& v : row) v /= total;
  return out;
}

/// Checks shapes, clamps near-boundary entries, and enforces row sums,
/// the joint sum, and per-cell compatibility
///   P(x_t, y_o) <= P(y_o | do(x_t)) <= 1 - P(x_t) + P(x_t, y_o).
inline Dataset validate_dataset(const RawDataset& raw_in, double tol) {
  const RawDataset raw = normalize_counts(raw_in);
  Matrix exp = detail::to_matrix(raw.experimental, "experimental");
  Matrix obs = detail::to_matrix(raw.observational, "observational");

  if (exp.rows() != obs.rows() || exp.cols() != obs.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "experimental is " + std::to_string(exp.rows()) + "x" +
                                              std::to_string(exp.cols()) + " but observational is " +
                                              std::to_string(obs.rows()) + "x" + std::to_string(obs.cols()));
  }
  const Dims dims{exp.rows(), exp.cols()};
  if (dims.n_treatments < 2 || dims.n_outcomes < 2) {
    throw Error(ErrorKind::ShapeMismatch, "need at least 2 treatments and 2 outcomes");
  }

  for (std::size_t t = 0; t < dims.n_treatments; ++t)
    for (std::size_t o = 0; o < dims.n_outcomes; ++o) {
      exp(t, o) = detail::clamp_entry(exp(t, o), tol, "experimental", t, o);
      obs(t, o) = detail::clamp_entry(obs(t, o), tol, "observational", t, o);
    }

  for (std::size_t t = 0; t < dims.n_treatments; ++t) {
    const double residual = exp.row_sum(t) - 1.0;
    if (std::abs(residual) > tol) {
      throw Error(ErrorKind::RowSumViolation,
                  "experimental row " + std::to_string(t + 1) + " residual " + detail::fmt_residual(residual));
    }
  }
  {
    const double residual = obs.total() - 1.0;
    if (std::abs(residual) > tol) {
      throw Error(ErrorKind::JointSumViolation, "observational total residual " + detail::fmt_residual(residual));
    }
  }

  for (std::size_t t = 0; t < dims.n_treatments; ++t) {
    const double px = obs.row_sum(t);
    for (std::size_t o = 0; o < dims.n_outcomes; ++o) {
      const double below = obs(t, o) - exp(t, o);
      const double above = exp(t, o) - (1.0 - px + obs(t, o));
      const double residual = std::max(below, above);
      if (residual > tol) {
        throw Error(ErrorKind::CompatibilityViolation, "cell (" + std::to_string(t + 1) + "," +
                                                           std::to_string(o + 1) + ") residual " +
                                                           detail::fmt_residual(residual));
      }
    }
  }
  return Dataset(dims, std::move(exp), std::move(obs));
}

inline RawDataset to_raw(const Dataset& ds) {
  RawDataset raw;
  const Dims& d = ds.dims();
  raw.experimental.assign(d.n_treatments, std::vector<double>(d.n_outcomes));
  raw.observational.assign(d.n_treatments, std::vector<double>(d.n_outcomes));
  for (std::size_t t = 0; t < d.n_treatments; ++t)
    for (std::size_t o = 0; o < d.n_outcomes; ++o) {
      raw.experimental[t][o] = ds.exp(t, o);
      raw.observational[t][o] = ds.obs(t, o);
    }
  return raw;
}

/// P(x_t) for a 0-based treatment index.
inline double treatment_marginal(const Dataset& ds, std::size_t t) {
  if (t >= ds.dims().n_treatments) {
    throw Error(ErrorKind::IndexOutOfRange, "treatment " + std::to_string(t + 1) + " of " +
                                                std::to_string(ds.dims().n_treatments));
  }
  return ds.px(t);
}

/// Embeds a rectangular dataset into a square one without changing any
/// bound. Padded outcomes get zero experimental and observational mass;
/// padded treatments get P(x_l) = 0 and send all experimental mass to the
/// last original outcome.
inline Dataset squarify(const Dataset& ds) {
  const Dims& d = ds.dims();
  if (d.square()) return ds;
  const std::size_t n = d.side();
  Matrix exp(n, n, 0.0);
  Matrix obs(n, n, 0.0);
  for (std::size_t t = 0; t < d.n_treatments; ++t)
    for (std::size_t o = 0; o < d.n_outcomes; ++o) {
      exp(t, o) = ds.exp(t, o);
      obs(t, o) = ds.obs(t, o);
    }
  for (std::size_t l = d.n_treatments; l < n; ++l) exp(l, d.n_outcomes - 1) = 1.0;
  return Dataset(Dims{n, n}, std::move(exp), std::move(obs));
}

}  // namespace poc
