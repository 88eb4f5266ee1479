#include "quasiclust/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <utility>

namespace quasiclust {

namespace {

// Single BFS sweep; used forward and transposed.
void reach(const SquareMatrix& m, int start, bool transposed, std::vector<char>& seen) {
  const int n = m.size();
  std::vector<int> queue{start};
  seen.assign(n, 0);
  seen[start] = 1;
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    for (int w = 0; w < n; ++w) {
      const double d = transposed ? m(w, v) : m(v, w);
      if (!seen[w] && d < kInf) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
}

bool compute_strongly_connected(const SquareMatrix& m) {
  if (m.size() <= 1) return true;
  std::vector<char> seen;
  reach(m, 0, false, seen);
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
  reach(m, 0, true, seen);
  return std::find(seen.begin(), seen.end(), 0) == seen.end();
}

}  // namespace

std::vector<Violation> Network::check(const std::vector<std::string>& labels,
                                      const SquareMatrix& dissim) {
  const int n = dissim.size();
  if (static_cast<int>(labels.size()) != n) {
    throw DimensionMismatchError("label count " + std::to_string(labels.size()) +
                                 " does not match matrix dimension " + std::to_string(n));
  }
  std::vector<Violation> out;
  if (n == 0) {
    out.push_back({ViolationKind::EmptyNetwork});
    return out;
  }
  std::unordered_map<std::string_view, int> seen;
  for (int i = 0; i < n; ++i) {
    if (!seen.emplace(labels[i], i).second) {
      out.push_back({ViolationKind::DuplicateLabel, i, -1});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = dissim(i, j);
      if (!(v >= 0.0)) {  // catches negatives and NaN
        out.push_back({ViolationKind::NegativeEntry, i, j});
      } else if (i == j && v != 0.0) {
        out.push_back({ViolationKind::NonzeroDiagonal, i, -1});
      } else if (i != j && v == 0.0) {
        out.push_back({ViolationKind::ZeroOffDiagonal, i, j});
      }
    }
  }
  return out;
}

Network::Network(std::vector<std::string> labels, SquareMatrix dissim)
    : labels_(std::move(labels)), dissim_(std::move(dissim)) {
  auto violations = check(labels_, dissim_);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  strongly_connected_ = compute_strongly_connected(dissim_);
}

int Network::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  return -1;
}

std::optional<StrongTriangleViolation> QuasiUltrametric::violation(const Network& net) {
  const int n = net.size();
  const auto& u = net.dissim();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        if (u(i, j) > std::max(u(i, k), u(k, j)))
          return StrongTriangleViolation{i, k, j, u(i, j), u(i, k), u(k, j)};
  return std::nullopt;
}

QuasiUltrametric QuasiUltrametric::certify(Network net) {
  if (auto v = violation(net)) throw StrongTriangleError(*v);
  return QuasiUltrametric(std::move(net));
}

double separation(const Network& net) {
  if (net.size() < 2) throw SingletonNetworkError();
  double best = kInf;
  for (int i = 0; i < net.size(); ++i)
    for (int j = 0; j < net.size(); ++j)
      if (i != j) best = std::min(best, net.at(i, j));
  return best;
}

// ---------------------------------------------------------------------------
// ScaleMap

namespace {

void require_valid_term(double coeff, double exponent) {
  if (!(coeff > 0.0) || coeff == kInf)
    throw InvalidScaleSpecError("coefficient must be positive and finite, got " +
                                format_value(coeff));
  if (!(exponent > 0.0) || exponent == kInf)
    throw InvalidScaleSpecError("exponent must be positive and finite, got " +
                                format_value(exponent));
}

double eval_power(double v, double p) {
  if (p == 1.0) return v;
  if (p == 2.0) return v * v;
  if (p == 3.0) return v * v * v;
  return std::pow(v, p);
}

double parse_positive(std::string_view text, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw InvalidScaleSpecError(std::string("cannot parse ") + what + " '" + std::string(text) +
                                "'");
  return value;
}

}  // namespace

ScaleMap ScaleMap::identity() { return linear(1.0); }

ScaleMap ScaleMap::linear(double a) { return polynomial({{a, 1.0}}); }

ScaleMap ScaleMap::power(double p) { return polynomial({{1.0, p}}); }

ScaleMap ScaleMap::polynomial(std::vector<Term> terms) {
  if (terms.empty()) throw InvalidScaleSpecError("a stage needs at least one term");
  for (const auto& t : terms) require_valid_term(t.coeff, t.exponent);
  ScaleMap m;
  m.stages_.push_back(std::move(terms));
  return m;
}

ScaleMap ScaleMap::then(const ScaleMap& outer) const {
  ScaleMap m = *this;
  m.stages_.insert(m.stages_.end(), outer.stages_.begin(), outer.stages_.end());
  return m;
}

ScaleMap ScaleMap::parse(std::string_view spec) {
  std::vector<std::vector<Term>> stages;
  size_t stage_start = 0;
  auto next_piece = [&](std::string_view text, size_t& pos, char sep) -> std::string_view {
    size_t end = text.find(sep, pos);
    if (end == std::string_view::npos) end = text.size();
    auto piece = text.substr(pos, end - pos);
    pos = end + 1;
    return piece;
  };
  while (stage_start <= spec.size()) {
    auto stage_text = next_piece(spec, stage_start, '|');
    std::vector<Term> terms;
    size_t term_start = 0;
    while (term_start <= stage_text.size()) {
      auto term = next_piece(stage_text, term_start, '+');
      if (term.empty()) throw InvalidScaleSpecError("empty term in '" + std::string(spec) + "'");
      double coeff = 1.0;
      double exponent = 1.0;
      const size_t x = term.find('x');
      if (x == std::string_view::npos) {
        coeff = parse_positive(term, "coefficient");
      } else {
        if (x > 0) coeff = parse_positive(term.substr(0, x), "coefficient");
        auto rest = term.substr(x + 1);
        if (!rest.empty()) {
          if (rest.front() != '^')
            throw InvalidScaleSpecError("expected '^' after x in '" + std::string(term) + "'");
          exponent = parse_positive(rest.substr(1), "exponent");
        }
      }
      require_valid_term(coeff, exponent);
      terms.push_back({coeff, exponent});
      if (term_start > stage_text.size()) break;
    }
    stages.push_back(std::move(terms));
    if (stage_start > spec.size()) break;
  }
  ScaleMap m;
  for (auto& terms : stages) m = m.stages_.empty() ? polynomial(std::move(terms))
                                                   : m.then(polynomial(std::move(terms)));
  return m;
}

double ScaleMap::operator()(double v) const {
  for (const auto& stage : stages_) {
    if (stage.size() == 1 && stage[0].coeff == 1.0) {
      v = eval_power(v, stage[0].exponent);
      continue;
    }
    double sum = 0.0;
    for (const auto& t : stage) sum += t.coeff * eval_power(v, t.exponent);
    v = sum;
  }
  return v;
}

std::string ScaleMap::describe() const {
  std::string out;
  for (size_t s = 0; s < stages_.size(); ++s) {
    if (s > 0) out += "|";
    for (size_t t = 0; t < stages_[s].size(); ++t) {
      if (t > 0) out += "+";
      const auto& term = stages_[s][t];
      if (term.coeff != 1.0) out += format_value(term.coeff);
      out += "x";
      if (term.exponent != 1.0) out += "^" + format_value(term.exponent);
    }
  }
  return out;
}

Network scale_transform(const Network& net, const ScaleMap& psi) {
  const int n = net.size();
  SquareMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = i == j ? 0.0 : psi(net.at(i, j));
  return Network(net.labels(), std::move(out));
}

// ---------------------------------------------------------------------------

Network metric_closure(const Network& net) {
  const int n = net.size();
  SquareMatrix d = net.dissim();
  // Relax until no entry moves; a plain single pass can leave float
  // outputs that a second pass would still lower.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        const double dik = d(i, k);
        if (dik == kInf) continue;
        for (int j = 0; j < n; ++j) {
          const double via = dik + d(k, j);
          if (via < d(i, j)) {
            d(i, j) = via;
            changed = true;
          }
        }
      }
  }
  return Network(net.labels(), std::move(d));
}

Network max_symmetrize(const QuasiUltrametric& u) {
  const int n = u.size();
  SquareMatrix s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = std::max(u.at(i, j), u.at(j, i));
  return Network(u.labels(), std::move(s));
}

}  // namespace quasiclust
