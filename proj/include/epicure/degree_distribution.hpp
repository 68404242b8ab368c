#ifndef EPICURE_DEGREE_DISTRIBUTION_HPP
#define EPICURE_DEGREE_DISTRIBUTION_HPP

#include <cstdint>
#include <vector>

#include <json.hpp>

namespace epicure {

/// Degree statistics of a complex network: pmf P(k) over k = 0..k_max with
/// cached first and second moments. Immutable after construction.
class DegreeDistribution {
 public:
  static DegreeDistribution from_pmf(std::vector<double> pmf);
  static DegreeDistribution from_histogram(const std::vector<std::uint64_t>& counts);

  /// pmf[k] = k^(-exponent) / Z on [k_min, k_max], zero elsewhere.
  static DegreeDistribution power_law(int k_min, int k_max, double exponent);

  /// Empirical degree histogram of a Barabasi-Albert preferential-attachment
  /// graph: start from a star of m+1 nodes, each new node attaches m edges
  /// (no self-loops, no multi-edges). Deterministic for a fixed seed.
  static DegreeDistribution ba_degree_sequence(int n, int m, std::uint64_t seed);

  int k_max() const noexcept { return static_cast<int>(pmf_.size()) - 1; }
  const std::vector<double>& pmf() const noexcept { return pmf_; }
  double mean_degree() const noexcept { return mean_; }
  double second_moment() const noexcept { return second_; }

  /// second_moment / mean_degree, the quantity multiplying every ESR.
  double moment_ratio() const noexcept { return second_ / mean_; }

  nlohmann::json to_json() const;
  static DegreeDistribution from_json(const nlohmann::json& j);

 private:
  explicit DegreeDistribution(std::vector<double> pmf);

  std::vector<double> pmf_;
  double mean_ = 0.0;
  double second_ = 0.0;
};

}  // namespace epicure

#endif
