#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sebot/graph.hpp"

namespace sebot {

std::vector<double> average_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    // positions i..j-1 share the mean of ranks i+1..j
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double spearman_weight(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::domain_error("spearman_weight: dimension mismatch");
  const std::size_t d = a.size();
  if (d < 2) throw std::domain_error("spearman_weight: dimension must be >= 2");

  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  double sq = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = ra[i] - rb[i];
    sq += diff * diff;
  }
  const double dd = static_cast<double>(d);
  const double w = 1.0 - 6.0 * sq / (dd * (dd * dd - 1.0));
  return std::clamp(w, -1.0, 1.0);
}

}  // namespace sebot
