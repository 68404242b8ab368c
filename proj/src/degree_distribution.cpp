#include "epicure/degree_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "epicure/errors.hpp"

namespace epicure {

DegreeDistribution::DegreeDistribution(std::vector<double> pmf) : pmf_(std::move(pmf)) {
  double sum = 0.0;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    const double p = pmf_[k];
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(Errc::ValidationError, "pmf[k] >= 0 violated at k=" + std::to_string(k));
    }
    sum += p;
    mean_ += static_cast<double>(k) * p;
    second_ += static_cast<double>(k) * static_cast<double>(k) * p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(Errc::ValidationError, "pmf does not sum to 1 (sum=" + std::to_string(sum) + ")");
  }
  if (!(mean_ > 0.0)) {
    throw Error(Errc::AllIsolated, "all probability mass on degree 0; mean degree must be positive");
  }
}

DegreeDistribution DegreeDistribution::from_pmf(std::vector<double> pmf) {
  if (pmf.empty()) throw Error(Errc::Empty, "empty pmf");
  return DegreeDistribution(std::move(pmf));
}

DegreeDistribution DegreeDistribution::from_histogram(const std::vector<std::uint64_t>& counts) {
  const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total == 0) throw Error(Errc::Empty, "histogram has zero total count");

  bool has_connected = false;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] > 0) { has_connected = true; break; }
  }
  if (!has_connected) {
    throw Error(Errc::AllIsolated, "histogram has only degree-0 nodes");
  }

  std::vector<double> pmf(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    pmf[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
  }
  return DegreeDistribution(std::move(pmf));
}

DegreeDistribution DegreeDistribution::power_law(int k_min, int k_max, double exponent) {
  if (k_min < 1) throw Error(Errc::InvalidRange, "k_min must be >= 1");
  if (k_min > k_max) throw Error(Errc::InvalidRange, "k_min > k_max");

  std::vector<double> pmf(static_cast<std::size_t>(k_max) + 1, 0.0);
  double z = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    z += std::pow(static_cast<double>(k), -exponent);
  }
  for (int k = k_min; k <= k_max; ++k) {
    pmf[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k), -exponent) / z;
  }
  return DegreeDistribution(std::move(pmf));
}

DegreeDistribution DegreeDistribution::ba_degree_sequence(int n, int m, std::uint64_t seed) {
  if (m < 1) throw Error(Errc::InvalidSize, "m must be >= 1");
  if (n <= m) throw Error(Errc::InvalidSize, "n must exceed m");

  std::mt19937_64 rng(seed);
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  // Endpoint list: each node appears once per incident edge, so uniform
  // sampling from it is degree-proportional.
  std::vector<int> endpoints;
  endpoints.reserve(2u * static_cast<std::size_t>(m) * static_cast<std::size_t>(n));

  // Seed graph: star on nodes 0..m with hub 0.
  for (int v = 1; v <= m; ++v) {
    degree[0]++;
    degree[static_cast<std::size_t>(v)]++;
    endpoints.push_back(0);
    endpoints.push_back(v);
  }

  std::vector<int> targets(static_cast<std::size_t>(m));
  for (int v = m + 1; v < n; ++v) {
    int picked = 0;
    while (picked < m) {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      const int cand = endpoints[pick(rng)];
      bool dup = false;
      for (int j = 0; j < picked; ++j) {
        if (targets[static_cast<std::size_t>(j)] == cand) { dup = true; break; }
      }
      if (!dup) targets[static_cast<std::size_t>(picked++)] = cand;
    }
    for (int j = 0; j < m; ++j) {
      const int t = targets[static_cast<std::size_t>(j)];
      degree[static_cast<std::size_t>(t)]++;
      degree[static_cast<std::size_t>(v)]++;
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }

  const int max_deg = *std::max_element(degree.begin(), degree.end());
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_deg) + 1, 0);
  for (int d : degree) counts[static_cast<std::size_t>(d)]++;
  return from_histogram(counts);
}

nlohmann::json DegreeDistribution::to_json() const {
  return nlohmann::json{{"pmf", pmf_}, {"k_max", k_max()}};
}

DegreeDistribution DegreeDistribution::from_json(const nlohmann::json& j) {
  std::vector<double> pmf = j.at("pmf").get<std::vector<double>>();
  auto dist = from_pmf(std::move(pmf));
  if (j.contains("k_max") && j.at("k_max").get<int>() != dist.k_max()) {
    throw Error(Errc::ValidationError, "stored k_max inconsistent with pmf length");
  }
  return dist;
}

}  // namespace epicure
