#include <doctest.h>

#include <sstream>

#include "bbs/report_io.hpp"

using namespace bbs;

TEST_CASE("spectrum json") {
  const nlohmann::json j = spectrum_to_json(exact_spectrum_k1(2), {});
  CHECK(j["system"] == "bbs");
  CHECK(j["k"] == 1);
  CHECK(j["n"] == 2);
  CHECK(j["scale"] == 4);
  CHECK(j["eigenvalues"].size() == 4);
  CHECK(j["eigenvalues"][0]["label"] == "cos(2/3*pi)");
  CHECK(j["eigenvalues"][0]["p"] == 2);
  CHECK(j["eigenvalues"][0]["q"] == 3);
  CHECK(j["eigenvalues"][1]["value"] == 0.0);
  CHECK(j["eigenvalues"][3]["label"] == "1");
  CHECK_FALSE(j["eigenvalues"][3].contains("p"));
  CHECK(j["settings"]["cluster_gap"] == 1e-8);
}

TEST_CASE("number formatting") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(round_significant(0.70710678118654757) == 0.707106781187);
}

TEST_CASE("table rows") {
  const auto rows = table_rows(exact_spectrum_k1(4));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].label == "cos(1/2*pi)");
  CHECK(rows[0].multiplicity == 5);
  CHECK(rows[1].label == "cos(1/3*pi)");
  CHECK(rows[3].label == "cos(1/5*pi)");
  CHECK(rows[4].label == "cos(2/5*pi)");
  std::ostringstream out;
  write_table_csv(out, rows, {});
  CHECK(out.str().find("n,label,multiplicity\n4,cos(1/2*pi),5\n") != std::string::npos);
  CHECK(out.str().rfind("# cluster_gap=1e-08", 0) == 0);
}

TEST_CASE("histogram") {
  const Histogram h = histogram(exact_spectrum_k1(7), 200);
  std::uint64_t total = 0;
  for (auto c : h.counts) total += c;
  CHECK(total == 128);
  CHECK(h.counts[100] == 43);
  CHECK(h.counts[199] >= 1);
  const Histogram one = histogram(exact_spectrum_k1(0), 1);
  CHECK(one.counts == std::vector<std::uint64_t>{1});
}

TEST_CASE("triplets and gasket text") {
  std::ostringstream t;
  write_triplets(t, build_transition(System::bbs(1), 1).integer_part(), 1);
  CHECK(t.str() == "dim 2^1\n0 0 2\n1 0 2\n0 1 2\n1 1 2\n");
  std::ostringstream g;
  write_gasket_rows(g, 4);
  CHECK(g.str() == "1\n11\n101\n1111\n");
  std::ostringstream s;
  write_sigma_csv(s, sigma(2));
  CHECK(s.str() == "index,image\n0,2\n1,1\n2,0\n3,3\n");
}
