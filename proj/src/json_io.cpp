#include "unfold/json_io.hpp"

#include <charconv>
#include <fstream>

namespace unfold::io {

namespace {

Json rational_pair(const Rational& r) {
  return Json::array({boost::multiprecision::numerator(r).str(), boost::multiprecision::denominator(r).str()});
}

Rational rational_from(const Json& pair) {
  if (!pair.is_array() || pair.size() != 2) throw Error(ErrorKind::InvalidArgument, "metric entry is not [num, den]");
  auto part = [](const Json& v) {
    return v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long long>());
  };
  Rational den = part(pair[1]);
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in metric entry");
  return part(pair[0]) / den;
}

}  // namespace

Json metric_to_json(const geometry::Metric& metric) {
  Json j;
  j["dim"] = metric.dim();
  j["chart"] = std::string(geometry::chart_name(metric.chart()));
  j["convention"] = metric.convention();
  Json comps = Json::array();
  for (std::size_t r = 0; r < metric.dim(); ++r)
    for (std::size_t c = 0; c < metric.dim(); ++c) comps.push_back(rational_pair(metric.components()(r, c)));
  j["components"] = comps;
  auto [pos, neg] = metric.signature();
  j["signature"] = Json::array({pos, neg});
  return j;
}

geometry::Metric metric_from_json(const Json& j) {
  const std::size_t dim = j.at("dim").get<std::size_t>();
  const Json& comps = j.at("components");
  if (comps.size() != dim * dim) throw Error(ErrorKind::DimensionMismatch, "metric component count");
  RationalMatrix g(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = rational_from(comps[r * dim + c]);
  return geometry::Metric(geometry::parse_chart(j.at("chart").get<std::string>()), g,
                          j.value("convention", std::string("exact")));
}

Json operator_to_json(const oracle::LinearOperator& op, const std::vector<std::string>& names) {
  Json j;
  j["name"] = op.name;
  j["terms"] = op.term_strings(names);
  j["expression"] = op.to_string(names);
  return j;
}

Json certificate_to_json(const oracle::IdentityCertificate& c) {
  Json j;
  j["metric_convention"] = c.metric_convention;
  j["ansatz"] = c.ansatz;
  j["winner"] = c.winner;
  j["winner_factor"] = c.winner.empty() ? "" : to_string(c.winner_factor);
  j["verdict"] = c.verdict;
  j["lhs"] = c.lhs_description;
  j["rhs"] = c.rhs_description;
  j["reduced_operator"] = operator_to_json(c.reduced, c.reduced_axis_names);
  j["residuals"] = c.residual_terms();
  Json cands = Json::array();
  for (const auto& o : c.candidates) {
    Json k;
    k["name"] = o.name;
    k["matches"] = o.matches;
    k["factor"] = o.matches ? to_string(o.factor) : "";
    k["mismatch_terms"] = o.mismatch_terms;
    cands.push_back(k);
  }
  j["candidates"] = cands;
  j["notes"] = c.convention_notes;
  return j;
}

Json dirac_certificate_to_json(const dirac::DiracCertificate& c) {
  Json j;
  j["metric_convention"] = c.convention;
  j["normalization"] = c.normalization;
  j["ansatz"] = "Phi = exp(i m (s g0 - xi^k gk)) Psi";
  j["winner"] = c.degree0_matches ? to_string(c.degree0_factor) + " * (i dslash - m)" : "";
  j["verdict"] = c.verdict;
  j["lhs"] = c.lhs_description;
  j["rhs"] = c.rhs_description;
  j["truncation_order"] = c.truncation_order;
  j["degree0_matches"] = c.degree0_matches;
  j["dirac_squared"] = c.dirac_squared;
  j["residuals"] = c.residual_terms;
  j["obstruction"] = c.obstruction_terms;
  j["notes"] = c.convention_notes;
  return j;
}

Json gamma_to_json(const dirac::GammaSet& g) {
  Json j;
  j["normalization"] = std::string(dirac::normalization_name(g.normalization));
  Json mats = Json::array();
  Json exact = Json::array();
  for (const auto& m : g.gamma) {
    Json rows = Json::array();
    Json erows = Json::array();
    for (std::size_t r = 0; r < 4; ++r) {
      Json row = Json::array();
      Json erow = Json::array();
      for (std::size_t c = 0; c < 4; ++c) {
        auto z = m(r, c).to_complex();
        row.push_back(Json::array({z.real(), z.imag()}));
        erow.push_back(to_string(m(r, c)));
      }
      rows.push_back(row);
      erows.push_back(erow);
    }
    mats.push_back(rows);
    exact.push_back(erows);
  }
  j["gamma"] = mats;
  j["exact"] = exact;
  return j;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error(ErrorKind::InvalidArgument, "cannot format number");
  return std::string(buf, end);
}

std::string grid_csv(const fields::GridField& f) {
  const auto& spec = f.spec();
  std::string out;
  for (const auto& n : spec.axis_names) out += n + ",";
  out += "re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto idx = spec.unravel(i);
    for (std::size_t a = 0; a < spec.dim(); ++a) out += format_double(spec.coordinate(a, idx[a])) + ",";
    out += format_double(f[i].real()) + "," + format_double(f[i].imag()) + "\n";
  }
  return out;
}

Json grid_sidecar(const fields::GridField& f) {
  const auto& s = f.spec();
  Json j;
  j["label"] = f.label();
  j["axis_names"] = s.axis_names;
  j["lower"] = s.lower;
  j["upper"] = s.upper;
  j["points"] = s.points;
  std::vector<bool> periodic(s.periodic.begin(), s.periodic.end());
  j["periodic"] = periodic;
  j["layout"] = "row-major, last axis fastest";
  return j;
}

std::string shell_csv(const symbol::ShellSpec& spec, const std::vector<std::vector<double>>& points) {
  std::string out;
  for (const auto& n : spec.momentum_names) out += n + ",";
  out += "sigma\n";
  for (const auto& p : points) {
    for (double v : p) out += format_double(v) + ",";
    out += format_double(symbol::sigma(spec.symbol_coeffs, p)) + "\n";
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open " + tmp.string());
    f << content;
    if (!f.flush()) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace unfold::io
