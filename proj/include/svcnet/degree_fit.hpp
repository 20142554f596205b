#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "svcnet/error.hpp"
#include "svcnet/network.hpp"
#include "svcnet/rng.hpp"

namespace svcnet {

enum class DegreeSide : std::uint8_t { In, Out, Total };

constexpr std::string_view to_string(DegreeSide s) {
  switch (s) {
    case DegreeSide::In: return "in";
    case DegreeSide::Out: return "out";
    case DegreeSide::Total: return "total";
  }
  return "?";
}

inline DegreeSide parse_degree_side(std::string_view s) {
  if (s == "in") return DegreeSide::In;
  if (s == "out") return DegreeSide::Out;
  if (s == "total") return DegreeSide::Total;
  throw ParseError("unknown degree side '" + std::string(s) + "': expected in|out|total");
}

inline std::vector<std::size_t> degree_sequence(const InteractionNetwork& net, DegreeSide side) {
  const Digraph g = net.digraph();
  switch (side) {
    case DegreeSide::In: return g.in_degrees();
    case DegreeSide::Out: return g.out_degrees();
    case DegreeSide::Total: return g.total_degrees();
  }
  return {};
}

/// Cumulative tail P(K >= k) over the distinct observed degrees, ascending k.
/// Starts at 1 for the minimum observed degree and is non-increasing.
inline std::vector<std::pair<std::size_t, double>> cumulative_degree_series(
    std::span<const std::size_t> degrees) {
  if (degrees.empty()) throw ValidationError("cumulative degree series of an empty network");
  std::map<std::size_t, std::size_t> hist;
  for (const std::size_t k : degrees) ++hist[k];
  std::vector<std::pair<std::size_t, double>> series;
  std::size_t at_least = degrees.size();
  for (const auto& [k, count] : hist) {
    series.emplace_back(k, static_cast<double>(at_least) / static_cast<double>(degrees.size()));
    at_least -= count;
  }
  return series;
}

inline std::vector<std::pair<std::size_t, double>> cumulative_degree_series(
    const InteractionNetwork& net, DegreeSide side) {
  const auto degs = degree_sequence(net, side);
  return cumulative_degree_series(degs);
}

namespace detail {

/// Discrete power-law variate with tail P(K >= k) = ((k-1/2)/(xmin-1/2))^-(gamma-1),
/// k >= xmin, by inverse CDF of the continuous Pareto and rounding.
inline std::size_t power_law_variate(Rng& rng, double gamma, std::size_t xmin) {
  const double u = rng.unit();
  const double x = (static_cast<double>(xmin) - 0.5) * std::pow(1.0 - u, -1.0 / (gamma - 1.0));
  const double k = std::floor(x + 0.5);
  return static_cast<std::size_t>(std::min(k, 1e15));
}

/// MLE of the power-law exponent over degrees >= xmin:
/// gamma = 1 + n / sum(ln(k/(xmin - 1/2))).
inline double power_law_mle(std::span<const std::size_t> tail, std::size_t xmin) {
  double log_sum = 0.0;
  for (const std::size_t k : tail)
    log_sum += std::log(static_cast<double>(k) / (static_cast<double>(xmin) - 0.5));
  if (log_sum <= 0.0) throw ValidationError("degenerate degree data: zero log-sum");
  return 1.0 + static_cast<double>(tail.size()) / log_sum;
}

/// KS distance between the empirical tail CDF and a model CDF F(k),
/// evaluated on both sides of each empirical step.
template <typename ModelCdf>
double ks_statistic(std::span<const std::size_t> sorted_tail, ModelCdf&& model_cdf) {
  const double n = static_cast<double>(sorted_tail.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted_tail.size()) {
    std::size_t j = i;
    while (j < sorted_tail.size() && sorted_tail[j] == sorted_tail[i]) ++j;
    const double f = model_cdf(sorted_tail[i]);
    d = std::max(d, std::abs(static_cast<double>(j) / n - f));
    d = std::max(d, std::abs(static_cast<double>(i) / n - f));
    i = j;
  }
  return d;
}

inline double power_law_cdf(std::size_t k, double gamma, std::size_t xmin) {
  return 1.0 - std::pow((static_cast<double>(k) + 0.5) / (static_cast<double>(xmin) - 0.5),
                        -(gamma - 1.0));
}

}  // namespace detail

struct PowerLawFit {
  double gamma = 0.0;
  std::size_t xmin = 1;
  double ks = 0.0;
  double p_value = 0.0;
  unsigned bootstrap_n = 0;
  std::size_t n_tail = 0;
};

struct ExponentialFit {
  double rate = 0.0;  // lambda
  std::size_t xmin = 1;
  double ks = 0.0;
  std::size_t n_tail = 0;
};

struct FitOptions {
  std::size_t xmin = 1;
  bool select_xmin_by_ks = false;  // pick xmin minimizing the KS distance
  unsigned bootstrap_n = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

namespace detail {

struct PlEstimate {
  double gamma;
  std::size_t xmin;
  double ks;
  std::size_t n_tail;
};

inline std::vector<std::size_t> tail_of(std::span<const std::size_t> degrees, std::size_t xmin) {
  std::vector<std::size_t> tail;
  for (const std::size_t k : degrees)
    if (k >= xmin) tail.push_back(k);
  std::sort(tail.begin(), tail.end());
  return tail;
}

inline PlEstimate estimate_power_law(std::span<const std::size_t> degrees, std::size_t xmin,
                                     bool select_xmin, std::size_t min_tail) {
  std::vector<std::size_t> candidates;
  if (select_xmin) {
    std::vector<std::size_t> distinct(degrees.begin(), degrees.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const std::size_t k : distinct)
      if (k >= 1) candidates.push_back(k);
  } else {
    candidates.push_back(xmin);
  }

  std::optional<PlEstimate> best;
  for (const std::size_t cand : candidates) {
    const auto tail = tail_of(degrees, cand);
    if (tail.size() < min_tail) continue;
    if (tail.front() == tail.back()) continue;  // single-point support
    const double gamma = power_law_mle(tail, cand);
    const double ks = ks_statistic(tail, [&](std::size_t k) {
      return power_law_cdf(k, gamma, cand);
    });
    if (!best || ks < best->ks) best = PlEstimate{gamma, cand, ks, tail.size()};
  }
  if (!best) {
    const auto tail = tail_of(degrees, select_xmin ? 1 : xmin);
    if (tail.size() < min_tail)
      throw ValidationError("insufficient tail data for power-law fit");
    if (!tail.empty() && tail.front() == tail.back())
      throw ValidationError("degenerate degree data: all tail degrees equal");
    throw ValidationError("insufficient tail data for power-law fit");
  }
  return *best;
}

}  // namespace detail

/// Discrete power-law fit by MLE with a Kolmogorov-Smirnov goodness test.
/// The p-value is a semiparametric bootstrap: each replicate redraws the tail
/// from the fitted model (and resamples the observed sub-xmin data), refits,
/// and the p-value is the fraction of replicates whose KS distance reaches
/// the observed one. Replicates use per-index RNG streams.
inline PowerLawFit fit_power_law(std::span<const std::size_t> degrees,
                                 const FitOptions& opt = {}) {
  constexpr std::size_t kMinTail = 10;
  const auto est = detail::estimate_power_law(degrees, opt.xmin, opt.select_xmin_by_ks, kMinTail);

  std::vector<std::size_t> below;
  for (const std::size_t k : degrees)
    if (k < est.xmin) below.push_back(k);

  PowerLawFit fit;
  fit.gamma = est.gamma;
  fit.xmin = est.xmin;
  fit.ks = est.ks;
  fit.n_tail = est.n_tail;
  fit.bootstrap_n = opt.bootstrap_n;
  if (opt.bootstrap_n == 0) return fit;

  const std::size_t n_total = degrees.size();
  const double tail_prob = static_cast<double>(est.n_tail) / static_cast<double>(n_total);
  const Rng root(opt.seed);
  std::vector<std::uint8_t> exceeds(opt.bootstrap_n, 0);
  detail::parallel_for(opt.bootstrap_n, opt.threads, [&](std::size_t b) {
    Rng rng = root.stream("pl-bootstrap", b);
    std::vector<std::size_t> replicate;
    replicate.reserve(n_total);
    for (std::size_t i = 0; i < n_total; ++i) {
      if (below.empty() || rng.unit() < tail_prob)
        replicate.push_back(detail::power_law_variate(rng, est.gamma, est.xmin));
      else
        replicate.push_back(below[rng.index(below.size())]);
    }
    try {
      const auto rep = detail::estimate_power_law(replicate, est.xmin,
                                                  opt.select_xmin_by_ks, kMinTail);
      exceeds[b] = rep.ks >= est.ks ? 1 : 0;
    } catch (const ValidationError&) {
      exceeds[b] = 1;  // un-fittable replicate counts against the model
    }
  });
  std::size_t count = 0;
  for (const std::uint8_t e : exceeds) count += e;
  fit.p_value = static_cast<double>(count) / static_cast<double>(opt.bootstrap_n);
  return fit;
}

/// Exponential tail fit: lambda = 1 / (mean(k) - xmin) over degrees >= xmin,
/// with the same KS machinery against P(K >= k) = exp(-lambda (k - xmin)).
inline ExponentialFit fit_exponential(std::span<const std::size_t> degrees, std::size_t xmin) {
  const auto tail = detail::tail_of(degrees, xmin);
  if (tail.size() < 10) throw ValidationError("insufficient tail data for exponential fit");
  double mean = 0.0;
  for (const std::size_t k : tail) mean += static_cast<double>(k);
  mean /= static_cast<double>(tail.size());
  if (mean <= static_cast<double>(xmin))
    throw ValidationError("degenerate degree data: all tail degrees equal");
  ExponentialFit fit;
  fit.rate = 1.0 / (mean - static_cast<double>(xmin));
  fit.xmin = xmin;
  fit.n_tail = tail.size();
  fit.ks = detail::ks_statistic(tail, [&](std::size_t k) {
    return 1.0 - std::exp(-fit.rate * (static_cast<double>(k) + 1.0 - static_cast<double>(xmin)));
  });
  return fit;
}

/// Degree histograms, cumulative tail, and both tail fits for one network.
struct DegreeDistributionFit {
  DegreeSide side = DegreeSide::Total;
  std::map<std::size_t, std::size_t> histogram_in, histogram_out, histogram_total;
  std::vector<std::pair<std::size_t, double>> cumulative;  // for the chosen side
  PowerLawFit power_law;
  ExponentialFit exponential;
};

inline DegreeDistributionFit fit_degree_distribution(const InteractionNetwork& net,
                                                     DegreeSide side,
                                                     const FitOptions& opt = {}) {
  DegreeDistributionFit out;
  out.side = side;
  const Digraph g = net.digraph();
  for (const std::size_t k : g.in_degrees()) ++out.histogram_in[k];
  for (const std::size_t k : g.out_degrees()) ++out.histogram_out[k];
  for (const std::size_t k : g.total_degrees()) ++out.histogram_total[k];
  const auto degs = degree_sequence(net, side);
  out.cumulative = cumulative_degree_series(degs);
  out.power_law = fit_power_law(degs, opt);
  out.exponential = fit_exponential(degs, opt.xmin);
  return out;
}

}  // namespace svcnet
