#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quasiclust/matrix.hpp"

namespace quasiclust {

/// A finite labeled node set with an asymmetric dissimilarity matrix.
/// Entries are non-negative extended reals; +inf marks a missing pair.
/// Invariants (enforced at construction): zero diagonal, strictly
/// positive off-diagonals, pairwise distinct labels.
///
/// Immutable after construction; all operations on networks are pure.
class Network {
 public:
  Network(std::vector<std::string> labels, SquareMatrix dissim);

  /// Every violated invariant, empty when the pair is a valid network.
  /// Throws DimensionMismatchError when the label count does not match
  /// the matrix dimension (nothing else is checkable in that state).
  static std::vector<Violation> check(const std::vector<std::string>& labels,
                                      const SquareMatrix& dissim);

  int size() const { return dissim_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const SquareMatrix& dissim() const { return dissim_; }
  double at(int i, int j) const { return dissim_(i, j); }

  /// Whether every node reaches every other through finite entries.
  /// Quasi-dendrogram boundary guarantees depend on this flag.
  bool strongly_connected() const { return strongly_connected_; }

  int index_of(std::string_view label) const;  // -1 when absent

  bool operator==(const Network& other) const = default;

 private:
  std::vector<std::string> labels_;
  SquareMatrix dissim_;
  bool strongly_connected_ = false;
};

/// A network whose matrix is certified to satisfy the strong triangle
/// inequality u(i,j) <= max(u(i,k), u(k,j)) (with +inf absorbing).
class QuasiUltrametric {
 public:
  /// Throws StrongTriangleError with the first violating triple.
  static QuasiUltrametric certify(Network net);

  /// First violating triple (i,k,j), or nullopt when none exists.
  static std::optional<StrongTriangleViolation> violation(const Network& net);

  const Network& network() const { return net_; }
  int size() const { return net_.size(); }
  const std::vector<std::string>& labels() const { return net_.labels(); }
  double at(int i, int j) const { return net_.at(i, j); }

  bool operator==(const QuasiUltrametric& other) const = default;

 private:
  explicit QuasiUltrametric(Network net) : net_(std::move(net)) {}
  Network net_;
};

/// Minimum off-diagonal dissimilarity. Throws SingletonNetworkError on
/// one-node networks; an all-+inf network yields +inf.
double separation(const Network& net);

/// A change-of-scale map certified by construction: a composition of
/// stages, each a sum of terms a*x^p with a > 0 and p > 0. Every such
/// map is nondecreasing on [0, inf) and zero exactly at zero.
class ScaleMap {
 public:
  struct Term {
    double coeff;
    double exponent;
  };

  static ScaleMap identity();
  static ScaleMap linear(double a);
  static ScaleMap power(double p);
  static ScaleMap polynomial(std::vector<Term> terms);

  /// Composition: apply this map first, then `outer`.
  ScaleMap then(const ScaleMap& outer) const;

  /// Compact spec grammar, one stage per "|"-separated segment, each a
  /// "+"-separated sum of terms like "2x", "x^2", "0.5x^3", or a bare
  /// positive constant coefficient with implied x^1. Examples: "2x",
  /// "x^2", "x+x^3", "3x^0.5|2x". Throws InvalidScaleSpecError.
  static ScaleMap parse(std::string_view spec);

  double operator()(double v) const;
  std::string describe() const;

 private:
  ScaleMap() = default;
  std::vector<std::vector<Term>> stages_;
};

/// Entrywise application of a certified change-of-scale map.
Network scale_transform(const Network& net, const ScaleMap& psi);

/// Largest matrix pointwise <= the input satisfying the directed
/// triangle inequality; min-plus relaxation iterated to a fixed point,
/// so the result is exactly idempotent.
Network metric_closure(const Network& net);

/// Symmetrizes to s(i,j) = max(u(i,j), u(j,i)); the result is a
/// (symmetric) ultrametric network.
Network max_symmetrize(const QuasiUltrametric& u);

}  // namespace quasiclust
