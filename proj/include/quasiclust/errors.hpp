#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace quasiclust {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Square-matrix dimension disagreement (ragged rows, label/matrix size
/// mismatch, operands of different size).
class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

enum class ViolationKind {
  EmptyNetwork,
  DuplicateLabel,
  NegativeEntry,
  NonzeroDiagonal,
  ZeroOffDiagonal,
};

/// One violated network invariant, with the offending indices where they
/// exist (label index for DuplicateLabel, matrix cell otherwise).
struct Violation {
  ViolationKind kind;
  int i = -1;
  int j = -1;

  std::string describe(const std::vector<std::string>& labels) const;
  std::string describe() const;
};

/// Raised when a dissimilarity matrix fails validation. Carries every
/// violated invariant, not just the first one found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// A strong triangle inequality failure: u(i,j) > max(u(i,k), u(k,j)).
struct StrongTriangleViolation {
  int i = -1;
  int k = -1;
  int j = -1;
  double u_ij = 0.0;
  double u_ik = 0.0;
  double u_kj = 0.0;

  std::string describe() const;
};

class StrongTriangleError : public Error {
 public:
  explicit StrongTriangleError(StrongTriangleViolation v);
  const StrongTriangleViolation& violation() const { return violation_; }

 private:
  StrongTriangleViolation violation_;
};

class SingletonNetworkError : public Error {
 public:
  SingletonNetworkError() : Error("operation requires at least two nodes") {}
};

class InvalidScaleSpecError : public Error {
 public:
  explicit InvalidScaleSpecError(const std::string& what) : Error(what) {}
};

class OracleSizeExceededError : public Error {
 public:
  OracleSizeExceededError(int n, int cap);
};

class NotDissimilarityReducingError : public Error {
 public:
  NotDissimilarityReducingError(int i, int j, double ax, double ay);
  int i() const { return i_; }
  int j() const { return j_; }

 private:
  int i_;
  int j_;
};

/// Relation fails reflexivity or transitivity; indices give the witness.
class QuasiEquivalenceError : public Error {
 public:
  static QuasiEquivalenceError not_reflexive(int i);
  static QuasiEquivalenceError not_transitive(int i, int j, int k);

 private:
  explicit QuasiEquivalenceError(const std::string& what) : Error(what) {}
};

/// Block structure fails one of the quasi-partition conditions.
class QuasiPartitionError : public Error {
 public:
  explicit QuasiPartitionError(const std::string& what) : Error(what) {}
};

/// Event list fails one of the nested-family conditions; `condition()`
/// names the failed requirement ("D1".."D4", "QP1", "QP2", "events").
class DendrogramError : public Error {
 public:
  DendrogramError(std::string condition, const std::string& detail);
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

class NotACorrespondenceError : public Error {
 public:
  explicit NotACorrespondenceError(const std::string& what) : Error(what) {}
};

class SizeCapExceededError : public Error {
 public:
  SizeCapExceededError(long long cells, long long cap);
};

class NegativeFlowError : public Error {
 public:
  NegativeFlowError(int i, int j, double value);
};

/// File-level ingestion failure with position context.
class IngestError : public Error {
 public:
  IngestError(const std::string& path, int line, const std::string& message);
};

}  // namespace quasiclust
