#pragma once

#include <limits>
#include <string>
#include <vector>

#include "quasiclust/errors.hpp"

namespace quasiclust {

/// Extended non-negative reals use IEEE +infinity as the "missing pair"
/// value. All comparisons in the library are exact; no epsilon anywhere.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense row-major square matrix over the extended reals.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, double fill = 0.0);

  /// Throws DimensionMismatchError on ragged input.
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int size() const { return n_; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * n_ + j]; }

  std::vector<std::vector<double>> rows() const;

  /// Exact entrywise equality (+inf compares equal to +inf).
  bool operator==(const SquareMatrix& other) const = default;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

/// True when every entry of `a` is <= the matching entry of `b`.
bool entrywise_leq(const SquareMatrix& a, const SquareMatrix& b);

/// Shortest decimal string that round-trips the value; infinity prints
/// as "inf". Used by every text artifact so exports are reproducible.
std::string format_value(double v);

}  // namespace quasiclust
