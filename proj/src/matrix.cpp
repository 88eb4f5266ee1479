#include "quasiclust/matrix.hpp"

#include <charconv>

#include "quasiclust/errors.hpp"

namespace quasiclust {

SquareMatrix::SquareMatrix(int n, double fill)
    : n_(n), data_(static_cast<size_t>(n) * n, fill) {}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw DimensionMismatchError("row " + std::to_string(i) + " has " +
                                   std::to_string(rows[i].size()) + " entries, expected " +
                                   std::to_string(n));
    }
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> SquareMatrix::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (int i = 0; i < n_; ++i) {
    out[i].resize(n_);
    for (int j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

bool entrywise_leq(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatchError("entrywise_leq: sizes " + std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()));
  }
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (!(a(i, j) <= b(i, j))) return false;
  return true;
}

std::string format_value(double v) {
  if (v == kInf) return "inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace quasiclust
