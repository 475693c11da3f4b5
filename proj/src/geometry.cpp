#include "unfold/geometry.hpp"

namespace unfold::geometry {

std::string_view chart_name(Chart chart) {
  switch (chart) {
    case Chart::Cartesian5d: return "cartesian-5d";
    case Chart::Lightcone5d: return "lightcone-5d";
    case Chart::Doubled8dCartesian: return "doubled-8d-cartesian";
    case Chart::Doubled8dLightcone: return "doubled-8d-lightcone";
    case Chart::Reduced4d: return "reduced-4d";
  }
  return "unknown";
}

Chart parse_chart(std::string_view name) {
  for (Chart c : {Chart::Cartesian5d, Chart::Lightcone5d, Chart::Doubled8dCartesian, Chart::Doubled8dLightcone,
                  Chart::Reduced4d})
    if (chart_name(c) == name) return c;
  throw Error(ErrorKind::InvalidArgument, "unknown chart '" + std::string(name) + "'");
}

std::vector<std::string> axis_names(Chart chart) {
  switch (chart) {
    case Chart::Cartesian5d: return {"x0", "x1", "x2", "x3", "x4"};
    case Chart::Lightcone5d: return {"t", "x1", "x2", "x3", "s"};
    case Chart::Doubled8dCartesian: return {"y0", "y1", "y2", "y3", "yb0", "yb1", "yb2", "yb3"};
    case Chart::Doubled8dLightcone: return {"x0", "x1", "x2", "x3", "s", "xi1", "xi2", "xi3"};
    case Chart::Reduced4d: return {"x0", "x1", "x2", "x3"};
  }
  return {};
}

std::string_view convention_name(LightconeConvention c) {
  return c == LightconeConvention::Prose ? "prose" : "eq6-exact";
}

LightconeConvention parse_convention(std::string_view name) {
  if (name == "prose") return LightconeConvention::Prose;
  if (name == "eq6-exact") return LightconeConvention::EqSixExact;
  throw Error(ErrorKind::InvalidArgument, "unknown convention '" + std::string(name) + "'");
}

Metric::Metric(Chart chart, RationalMatrix components, std::string convention)
    : chart_(chart), convention_(std::move(convention)), components_(std::move(components)) {
  if (components_.rows() == 0 || components_.rows() != components_.cols())
    throw Error(ErrorKind::DimensionMismatch, "metric must be square");
  if (!components_.is_symmetric()) throw Error(ErrorKind::InvalidArgument, "metric must be symmetric");
  det_ = unfold::determinant(components_);
  if (det_ == 0) throw Error(ErrorKind::SingularMetric, "metric determinant is zero");
  inverse_ = unfold::inverse(components_);
}

std::pair<int, int> Metric::signature() const {
  // Symmetric elimination keeps the inertia (Sylvester). A zero pivot with a
  // nonzero off-diagonal entry is fixed by x_i -> x_i + x_j first.
  RationalMatrix a = components_;
  const std::size_t n = dim();
  int pos = 0, neg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) == 0) {
      std::size_t d = i + 1;
      while (d < n && a(d, d) == 0) ++d;
      if (d < n) {
        for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(d, k));
        for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, d));
      }
    }
    if (a(i, i) == 0) {
      std::size_t j = i + 1;
      while (j < n && a(i, j) == 0) ++j;
      if (j == n) continue;
      for (std::size_t k = 0; k < n; ++k) a(i, k) += a(j, k);
      for (std::size_t k = 0; k < n; ++k) a(k, i) += a(k, j);
    }
    Rational p = a(i, i);
    if (p == 0) continue;
    (p > 0 ? pos : neg)++;
    for (std::size_t r = i + 1; r < n; ++r) {
      if (a(r, i) == 0) continue;
      Rational f = a(r, i) / p;
      for (std::size_t k = i; k < n; ++k) a(r, k) -= f * a(i, k);
      for (std::size_t k = i; k < n; ++k) a(k, r) = a(r, k);
    }
  }
  return {pos, neg};
}

ChartMap::ChartMap(std::string name, Chart source, Chart target, RationalMatrix forward)
    : name_(std::move(name)), source_(source), target_(target), forward_(std::move(forward)) {
  inverse_ = unfold::inverse(forward_);
}

std::vector<Rational> ChartMap::apply(const std::vector<Rational>& point) const {
  if (point.size() != forward_.cols()) throw Error(ErrorKind::DimensionMismatch, "chart point dimension");
  std::vector<Rational> out(forward_.rows(), Rational(0));
  for (std::size_t r = 0; r < forward_.rows(); ++r)
    for (std::size_t c = 0; c < forward_.cols(); ++c) out[r] += forward_(r, c) * point[c];
  return out;
}

Metric ChartMap::pushforward(const Metric& metric) const {
  if (metric.dim() != forward_.rows()) throw Error(ErrorKind::DimensionMismatch, "pushforward dimension");
  if (metric.chart() != source_) throw Error(ErrorKind::ChartMismatch, "metric is not on the source chart");
  return Metric(target_, inverse_.transpose() * metric.components() * inverse_, metric.convention());
}

Metric ChartMap::pullback(const Metric& metric) const { return inverted().pushforward(metric); }

ChartMap ChartMap::inverted() const { return ChartMap(name_ + "^-1", target_, source_, inverse_); }

ChartMap compose(const ChartMap& first, const ChartMap& second) {
  if (first.target() != second.source()) throw Error(ErrorKind::ChartMismatch, "charts do not compose");
  return ChartMap(second.name() + " o " + first.name(), first.source(), second.target(),
                  second.forward() * first.forward());
}

Metric minkowski5() {
  return Metric(Chart::Cartesian5d, RationalMatrix::diagonal({1, -1, -1, -1, -1}));
}

Metric minkowski4() { return Metric(Chart::Reduced4d, RationalMatrix::diagonal({1, -1, -1, -1})); }

ChartMap lightcone_chart() {
  RationalMatrix f(5, 5);
  f(0, 0) = 1;
  f(0, 4) = -1;
  f(1, 1) = 1;
  f(2, 2) = 1;
  f(3, 3) = 1;
  f(4, 0) = 1;
  f(4, 4) = 1;
  return ChartMap("lightcone", Chart::Cartesian5d, Chart::Lightcone5d, f);
}

Metric lightcone5(LightconeConvention convention) {
  Metric exact = lightcone_chart().pushforward(minkowski5());
  if (convention == LightconeConvention::EqSixExact)
    return Metric(Chart::Lightcone5d, exact.components(), "eq6-exact");
  // g^ts = 1 corresponds to g_ts = 1.
  RationalMatrix g = exact.components();
  g(0, 4) = 1;
  g(4, 0) = 1;
  return Metric(Chart::Lightcone5d, g, "prose");
}

Metric doubled8() {
  return Metric(Chart::Doubled8dCartesian, RationalMatrix::diagonal({1, -1, -1, -1, -1, 1, 1, 1}));
}

ChartMap doubled8_lightcone_chart() {
  // x^mu = y^mu - yb^mu, (s, xi^k) = y + yb.
  RationalMatrix f(8, 8);
  for (std::size_t mu = 0; mu < 4; ++mu) {
    f(mu, mu) = 1;
    f(mu, mu + 4) = -1;
    f(mu + 4, mu) = 1;
    f(mu + 4, mu + 4) = 1;
  }
  return ChartMap("doubled-lightcone", Chart::Doubled8dCartesian, Chart::Doubled8dLightcone, f);
}

Metric doubled8_lightcone() { return doubled8_lightcone_chart().pushforward(doubled8()); }

RationalMatrix laplace_beltrami_coeffs(const Metric& metric) { return metric.inverse(); }

}  // namespace unfold::geometry
