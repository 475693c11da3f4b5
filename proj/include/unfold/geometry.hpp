#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unfold/scalar.hpp"

namespace unfold::geometry {

enum class Chart { Cartesian5d, Lightcone5d, Doubled8dCartesian, Doubled8dLightcone, Reduced4d };

std::string_view chart_name(Chart chart);
Chart parse_chart(std::string_view name);
std::vector<std::string> axis_names(Chart chart);

// Two readings of the light-cone metric. `EqSixExact` is the exact pushforward
// of diag(1,-1,-1,-1,-1) (g_ts = 1/2, so g^ts = 2). `Prose` uses g^ts = 1, the
// normalization under which the symbol reads 2 p_t p_s - |p|^2.
enum class LightconeConvention { Prose, EqSixExact };

std::string_view convention_name(LightconeConvention c);
LightconeConvention parse_convention(std::string_view name);

class Metric {
 public:
  // Validates symmetry and non-degeneracy; caches the exact inverse.
  Metric(Chart chart, RationalMatrix components, std::string convention = "exact");

  std::size_t dim() const { return components_.rows(); }
  Chart chart() const { return chart_; }
  const std::string& convention() const { return convention_; }
  const RationalMatrix& components() const { return components_; }
  const RationalMatrix& inverse() const { return inverse_; }
  const Rational& determinant() const { return det_; }
  // (positive, negative) counts via congruence diagonalization.
  std::pair<int, int> signature() const;

  friend bool operator==(const Metric& a, const Metric& b) {
    return a.chart_ == b.chart_ && a.components_ == b.components_;
  }

 private:
  Chart chart_;
  std::string convention_;
  RationalMatrix components_;
  RationalMatrix inverse_;
  Rational det_;
};

// Linear change of coordinates y = forward * x.
class ChartMap {
 public:
  ChartMap(std::string name, Chart source, Chart target, RationalMatrix forward);

  const std::string& name() const { return name_; }
  Chart source() const { return source_; }
  Chart target() const { return target_; }
  const RationalMatrix& forward() const { return forward_; }
  const RationalMatrix& inverse() const { return inverse_; }

  std::vector<Rational> apply(const std::vector<Rational>& point) const;
  // Components of the same bilinear form in the target coordinates:
  // g' = F^{-T} g F^{-1}.
  Metric pushforward(const Metric& metric) const;
  Metric pullback(const Metric& metric) const;
  ChartMap inverted() const;

 private:
  std::string name_;
  Chart source_;
  Chart target_;
  RationalMatrix forward_;
  RationalMatrix inverse_;
};

// Applies `first`, then `second`.
ChartMap compose(const ChartMap& first, const ChartMap& second);

Metric minkowski5();
Metric minkowski4();
ChartMap lightcone_chart();
Metric lightcone5(LightconeConvention convention);
Metric doubled8();
ChartMap doubled8_lightcone_chart();
Metric doubled8_lightcone();

// Coefficients g^{mu nu} of sum g^{mu nu} d_mu d_nu.
RationalMatrix laplace_beltrami_coeffs(const Metric& metric);

}  // namespace unfold::geometry
