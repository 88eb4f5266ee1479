#include "quasiclust/errors.hpp"

#include <sstream>

#include "quasiclust/matrix.hpp"

namespace quasiclust {

namespace {

std::string cell(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string join_violations(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "invalid network:";
  for (const auto& v : violations) out << " " << v.describe() << ";";
  return out.str();
}

}  // namespace

std::string Violation::describe() const {
  switch (kind) {
    case ViolationKind::EmptyNetwork:
      return "network has no nodes";
    case ViolationKind::DuplicateLabel:
      return "duplicate label at index " + std::to_string(i);
    case ViolationKind::NegativeEntry:
      return "negative entry at " + cell(i, j);
    case ViolationKind::NonzeroDiagonal:
      return "nonzero diagonal at index " + std::to_string(i);
    case ViolationKind::ZeroOffDiagonal:
      return "zero off-diagonal entry at " + cell(i, j);
  }
  return "unknown violation";
}

std::string Violation::describe(const std::vector<std::string>& labels) const {
  std::string base = describe();
  if (i >= 0 && i < static_cast<int>(labels.size())) {
    base += " [" + labels[i];
    if (j >= 0 && j < static_cast<int>(labels.size())) base += " -> " + labels[j];
    base += "]";
  }
  return base;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

std::string StrongTriangleViolation::describe() const {
  std::ostringstream out;
  out << "u" << cell(i, j) << "=" << format_value(u_ij) << " > max(u" << cell(i, k) << "="
      << format_value(u_ik) << ", u" << cell(k, j) << "=" << format_value(u_kj) << ")";
  return out.str();
}

StrongTriangleError::StrongTriangleError(StrongTriangleViolation v)
    : Error("strong triangle inequality violated: " + v.describe()), violation_(v) {}

OracleSizeExceededError::OracleSizeExceededError(int n, int cap)
    : Error("chain oracle limited to " + std::to_string(cap) + " nodes, got " +
            std::to_string(n)) {}

NotDissimilarityReducingError::NotDissimilarityReducingError(int i, int j, double ax, double ay)
    : Error("map is not dissimilarity-reducing at " + cell(i, j) + ": " + format_value(ax) +
            " < " + format_value(ay)),
      i_(i),
      j_(j) {}

QuasiEquivalenceError QuasiEquivalenceError::not_reflexive(int i) {
  return QuasiEquivalenceError("relation is not reflexive at index " + std::to_string(i));
}

QuasiEquivalenceError QuasiEquivalenceError::not_transitive(int i, int j, int k) {
  return QuasiEquivalenceError("relation is not transitive: " + std::to_string(i) + "~" +
                               std::to_string(j) + " and " + std::to_string(j) + "~" +
                               std::to_string(k) + " but not " + std::to_string(i) + "~" +
                               std::to_string(k));
}

DendrogramError::DendrogramError(std::string condition, const std::string& detail)
    : Error("invalid quasi-dendrogram (" + condition + "): " + detail),
      condition_(std::move(condition)) {}

SizeCapExceededError::SizeCapExceededError(long long cells, long long cap)
    : Error("exact search over " + std::to_string(cells) + " correspondence cells exceeds cap " +
            std::to_string(cap)) {}

NegativeFlowError::NegativeFlowError(int i, int j, double value)
    : Error("negative flow at " + cell(i, j) + ": " + format_value(value)) {}

IngestError::IngestError(const std::string& path, int line, const std::string& message)
    : Error(path + ":" + std::to_string(line) + ": " + message) {}

}  // namespace quasiclust
