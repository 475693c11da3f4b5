#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "unfold/dirac.hpp"
#include "unfold/geometry.hpp"
#include "unfold/grid.hpp"
#include "unfold/oracle.hpp"
#include "unfold/symbol.hpp"

namespace unfold::io {

using Json = nlohmann::ordered_json;

// {dim, chart, convention, components: [[num, den], ...]} row-major.
Json metric_to_json(const geometry::Metric& metric);
geometry::Metric metric_from_json(const Json& j);

Json operator_to_json(const oracle::LinearOperator& op, const std::vector<std::string>& names);
Json certificate_to_json(const oracle::IdentityCertificate& cert);
Json dirac_certificate_to_json(const dirac::DiracCertificate& cert);
// Four 4x4 arrays of [re, im] pairs, plus the exact entries as strings.
Json gamma_to_json(const dirac::GammaSet& g);

// Shortest round-tripping decimal form.
std::string format_double(double v);

// Header row of axis names then re, im; one row per node in storage order.
std::string grid_csv(const fields::GridField& f);
Json grid_sidecar(const fields::GridField& f);

// One row per point: momentum components then the symbol value.
std::string shell_csv(const symbol::ShellSpec& spec, const std::vector<std::vector<double>>& points);

// Writes to a sibling temporary and renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace unfold::io
