#include "quasiclust/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "quasiclust/dioid.hpp"

namespace quasiclust {

namespace {

// |a - b| on the extended reals: +inf entries compare equal to each
// other, so matched missing pairs cost nothing.
double ext_abs_diff(double a, double b) { return a == b ? 0.0 : std::fabs(a - b); }

double distortion_of_pairs(const Network& net_x, const Network& net_y,
                           const std::vector<std::pair<int, int>>& pairs, double stop_at) {
  double dis = 0.0;
  for (size_t p = 0; p < pairs.size(); ++p) {
    for (size_t q = 0; q < pairs.size(); ++q) {
      const double d = ext_abs_diff(net_x.at(pairs[p].first, pairs[q].first),
                                    net_y.at(pairs[p].second, pairs[q].second));
      if (d > dis) {
        dis = d;
        if (dis >= stop_at) return dis;
      }
    }
  }
  return dis;
}

}  // namespace

void Correspondence::validate(int nx, int ny) const {
  std::vector<char> covered_x(nx, 0);
  std::vector<char> covered_y(ny, 0);
  for (const auto& [x, y] : pairs) {
    if (x < 0 || x >= nx || y < 0 || y >= ny)
      throw NotACorrespondenceError("pair (" + std::to_string(x) + "," + std::to_string(y) +
                                    ") is out of range");
    covered_x[x] = 1;
    covered_y[y] = 1;
  }
  for (int x = 0; x < nx; ++x)
    if (!covered_x[x])
      throw NotACorrespondenceError("node " + std::to_string(x) +
                                    " of the first network is unmatched");
  for (int y = 0; y < ny; ++y)
    if (!covered_y[y])
      throw NotACorrespondenceError("node " + std::to_string(y) +
                                    " of the second network is unmatched");
}

double distortion(const Network& net_x, const Network& net_y, const Correspondence& r) {
  r.validate(net_x.size(), net_y.size());
  return distortion_of_pairs(net_x, net_y, r.pairs, kInf);
}

double network_distance_exact(const Network& net_x, const Network& net_y, int cell_cap) {
  const int nx = net_x.size();
  const int ny = net_y.size();
  const long long cells = static_cast<long long>(nx) * ny;
  if (cells > cell_cap || cells > 62) throw SizeCapExceededError(cells, cell_cap);

  // Bit c of a mask selects the pair (c / ny, c % ny).
  std::vector<std::uint64_t> x_mask(nx, 0);
  std::vector<std::uint64_t> y_mask(ny, 0);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      const int c = x * ny + y;
      x_mask[x] |= std::uint64_t{1} << c;
      y_mask[y] |= std::uint64_t{1} << c;
    }

  double best = kInf;
  std::vector<std::pair<int, int>> pairs;
  const std::uint64_t all = (cells == 62) ? ~std::uint64_t{0} >> 2
                                          : (std::uint64_t{1} << cells) - 1;
  for (std::uint64_t mask = 1; mask <= all; ++mask) {
    bool covers = true;
    for (int x = 0; x < nx && covers; ++x) covers = (mask & x_mask[x]) != 0;
    for (int y = 0; y < ny && covers; ++y) covers = (mask & y_mask[y]) != 0;
    if (!covers) continue;
    pairs.clear();
    for (int c = 0; c < cells; ++c)
      if (mask & (std::uint64_t{1} << c)) pairs.emplace_back(c / ny, c % ny);
    best = std::min(best, distortion_of_pairs(net_x, net_y, pairs, best));
    if (best == 0.0) break;
  }
  return best / 2.0;
}

double network_distance_upper(const Network& net_x, const Network& net_y, int tries,
                              std::uint64_t seed) {
  const int nx = net_x.size();
  const int ny = net_y.size();
  double best = kInf;
  auto consider = [&](const std::vector<std::pair<int, int>>& pairs) {
    best = std::min(best, distortion_of_pairs(net_x, net_y, pairs, best));
  };

  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) pairs.emplace_back(x, y);
  consider(pairs);  // full product: always a correspondence

  if (nx == ny) {
    pairs.clear();
    for (int x = 0; x < nx; ++x) pairs.emplace_back(x, x);
    consider(pairs);
  }

  std::mt19937_64 rng(seed);
  std::vector<int> xs(nx), ys(ny);
  std::iota(xs.begin(), xs.end(), 0);
  std::iota(ys.begin(), ys.end(), 0);
  for (int t = 0; t < tries; ++t) {
    // Random matching: pair off shuffled nodes, then wrap the longer
    // side around so both projections stay surjective.
    std::shuffle(xs.begin(), xs.end(), rng);
    std::shuffle(ys.begin(), ys.end(), rng);
    pairs.clear();
    const int m = std::max(nx, ny);
    for (int i = 0; i < m; ++i) pairs.emplace_back(xs[i % nx], ys[i % ny]);
    consider(pairs);
  }
  return best / 2.0;
}

StabilityCheckResult stability_check(const Network& net_x, const Network& net_y, int cell_cap) {
  StabilityCheckResult result;
  result.input_distance = network_distance_exact(net_x, net_y, cell_cap);
  result.output_distance =
      network_distance_exact(dsl(net_x).network(), dsl(net_y).network(), cell_cap);
  result.pass = result.output_distance <= result.input_distance;
  return result;
}

bool isomorphic(const Network& net_x, const Network& net_y) {
  const int n = net_x.size();
  if (net_y.size() != n) return false;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool match = true;
    for (int i = 0; i < n && match; ++i)
      for (int j = 0; j < n && match; ++j)
        if (net_x.at(i, j) != net_y.at(perm[i], perm[j])) match = false;
    if (match) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

MetricAxiomReport metric_axiom_suite(const std::vector<Network>& nets, int cell_cap) {
  MetricAxiomReport report;
  report.networks = static_cast<int>(nets.size());
  const int n = report.networks;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) d[a][b] = network_distance_exact(nets[a], nets[b], cell_cap);

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ++report.pair_checks;
      if (!(d[a][b] >= 0.0))
        report.failures.push_back("negative distance between networks " + std::to_string(a) +
                                  " and " + std::to_string(b));
      if (d[a][b] != d[b][a])
        report.failures.push_back("asymmetric distance between networks " + std::to_string(a) +
                                  " and " + std::to_string(b));
      const bool zero = d[a][b] == 0.0;
      if (zero != isomorphic(nets[a], nets[b]))
        report.failures.push_back("zero distance and isomorphism disagree for networks " +
                                  std::to_string(a) + " and " + std::to_string(b));
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        ++report.triangle_checks;
        if (d[a][b] > d[a][c] + d[c][b])
          report.failures.push_back("triangle inequality fails on networks " + std::to_string(a) +
                                    ", " + std::to_string(b) + ", " + std::to_string(c));
      }
  return report;
}

}  // namespace quasiclust
