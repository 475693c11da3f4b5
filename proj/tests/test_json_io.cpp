#include <gtest/gtest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "unfold/json_io.hpp"

using namespace unfold;
using namespace unfold::io;
using unfold::testing::Gen;

TEST(JsonIo, MetricRoundTrip) {
  for (const auto& m : {geometry::minkowski5(), geometry::lightcone5(geometry::LightconeConvention::EqSixExact),
                        geometry::doubled8_lightcone()}) {
    const Json j = metric_to_json(m);
    EXPECT_EQ(metric_from_json(j), m);
    EXPECT_EQ(metric_from_json(Json::parse(j.dump())), m);
  }
  const Json j = metric_to_json(geometry::lightcone5(geometry::LightconeConvention::EqSixExact));
  EXPECT_EQ(j["components"][4], (Json::array({"1", "2"})));
}

TEST(JsonIo, FormatDoubleRoundTrips) {
  Gen g(101);
  for (int k = 0; k < 500; ++k) {
    const double v = g.real(-1.0, 1.0) * std::pow(10.0, g.integer(-300, 300));
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(JsonIo, CertificateCarriesWinner) {
  const auto cert = oracle::certify_reduction(geometry::minkowski5(), oracle::kg_ansatz(1, oracle::Orientation::Paper),
                                              oracle::kg_candidates(1));
  const Json j = certificate_to_json(cert);
  EXPECT_EQ(j["winner"], "d0^2 - lap - m^2");
  EXPECT_EQ(j["verdict"], true);
  EXPECT_TRUE(j.contains("candidates"));
}

TEST(JsonIo, GridCsvLayout) {
  const auto spec = fields::GridSpec::box({"a", "b"}, {0, 0}, {1, 1}, {3, 3});
  fields::GridField f(spec);
  f[4] = {1.5, -2.0};
  const std::string csv = grid_csv(f);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "a,b,re,im");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 9);
  EXPECT_NE(csv.find("0.5,0.5,1.5,-2"), std::string::npos);
}

TEST(JsonIo, AtomicWriteReplacesContent) {
  const auto dir = std::filesystem::temp_directory_path() / "unfold-json-io-test";
  std::filesystem::remove_all(dir);
  write_atomic(dir / "x.txt", "first");
  write_atomic(dir / "x.txt", "second");
  std::ifstream in(dir / "x.txt");
  std::string s((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(s, "second");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1u);
  std::filesystem::remove_all(dir);
}
