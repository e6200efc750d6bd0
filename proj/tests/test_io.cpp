#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "qbg/error.hpp"
#include "qbg/extremal.hpp"
#include "qbg/io.hpp"
#include "qbg/sampling.hpp"

using namespace qbg;
using qbg::io::Json;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("format_real uses 12 significant digits") {
  CHECK(io::format_real(0.1) == "0.1");
  CHECK(io::format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_real(2.0) == "2");
  CHECK(io::format_real(1.23456789012345e-20) == "1.23456789012e-20");
}

TEST_CASE("matrix JSON round-trips exactly") {
  std::mt19937_64 rng(61);
  for (int d = 2; d <= 6; ++d) {
    const ComplexMatrix m = test::random_state_matrix(d, rng);
    const Json j = Json::parse(io::matrix_to_json(m).dump());
    CHECK(j.at("dim").get<int>() == d);
    CHECK(test::max_abs_diff(io::matrix_from_json(j), m) == 0.0);
  }
}

TEST_CASE("matrix JSON parse errors") {
  CHECK(kind_of([] { (void)io::matrix_from_json(Json::parse(R"({"re": [[1]]})")); }) ==
        ErrorKind::Parse);
  CHECK(kind_of([] {
          (void)io::matrix_from_json(
              Json::parse(R"({"dim": 2, "re": [[1, 0], [0]], "im": [[0, 0], [0, 0]]})"));
        }) == ErrorKind::Parse);
  CHECK(kind_of([] {
          (void)io::matrix_from_json(Json::parse(R"({"dim": 1, "re": "x", "im": [[0]]})"));
        }) == ErrorKind::Parse);
  CHECK(kind_of([] { (void)io::matrix_from_json(Json::parse("[1, 2]")); }) == ErrorKind::Parse);
}

TEST_CASE("Bloch JSON round-trips and checks lengths") {
  std::mt19937_64 rng(62);
  const auto rho = test::random_state(4, rng);
  const auto v = bloch_vector(rho, gellmann_basis(4));
  const auto back = io::bloch_from_json(Json::parse(io::bloch_to_json(v).dump()));
  CHECK(back.v_d == v.v_d);
  CHECK(back.v_x == v.v_x);
  CHECK(back.v_i == v.v_i);
  Json bad = io::bloch_to_json(v);
  bad["v_x"].erase(0);
  CHECK(kind_of([&] { (void)io::bloch_from_json(bad); }) == ErrorKind::Parse);
}

TEST_CASE("extremal spec JSON omits unused fields and round-trips") {
  ExtremalSpec spec;
  spec.family = ExtremalFamily::OddLinear;
  spec.dim = 5;
  spec.alpha = 0.22;
  const Json j = io::extremal_spec_to_json(spec);
  CHECK_FALSE(j.contains("alphas"));
  CHECK_FALSE(j.contains("beta"));
  const auto back = io::extremal_spec_from_json(j);
  CHECK(back.family == spec.family);
  CHECK(back.dim == 5);
  CHECK(*back.alpha == 0.22);
  CHECK_FALSE(back.alphas.has_value());

  const Json blocks = Json::parse(R"({"family": "EVEN_BLOCK", "dim": 4, "alphas": [0.25, 0.25]})");
  CHECK(io::extremal_spec_from_json(blocks).alphas->size() == 2);
  CHECK(kind_of([] {
          (void)io::extremal_spec_from_json(Json::parse(R"({"family": "EVEN_BLOCK"})"));
        }) == ErrorKind::Parse);
  CHECK(kind_of([] {
          (void)io::extremal_spec_from_json(
              Json::parse(R"({"family": "EVEN_BLOCK", "dim": 4, "alphas": "x"})"));
        }) == ErrorKind::Parse);
}

TEST_CASE("report JSON shapes") {
  const auto rep = saturation_report(odd_linear(5, 0.22));
  const Json j = io::to_json(rep);
  CHECK(j.at("region").get<std::string>() == "LINEAR");
  CHECK(j.at("bounds").at("linear_applicable").get<bool>());
  CHECK(std::abs(j.at("bounds").at("linear_margin").get<double>()) < 1e-10);
  CHECK(j.at("landmarks").size() == rep.landmarks.size());

  const Json mm = io::to_json(evaluate_bounds(coordinates(maximally_mixed(4))));
  CHECK(mm.at("linear_margin").is_null());

  const Json lm = io::to_json(landmarks(4));
  CHECK(lm.at("odd_tangent").is_null());
  CHECK(lm.at("even_intersection").at("s_i").get<double>() == doctest::Approx(std::sqrt(2.0)));

  const Json parts = io::to_json(decompose(even_block(std::vector<double>{0.5})));
  CHECK(parts.at("I_im")[0][1].get<double>() == doctest::Approx(-1.0));
  CHECK(parts.at("D").size() == 2);
}

TEST_CASE("step log round-trips exactly") {
  std::mt19937_64 rng(63);
  const auto steps = test::random_steps(5, 30, rng);
  std::stringstream ss;
  io::write_step_log(ss, steps);
  CHECK(io::read_step_log(ss) == steps);

  std::stringstream empty;
  CHECK(io::read_step_log(empty).empty());
  std::stringstream bad("{\"k\": 0, \"l\": 1}\n");
  CHECK(kind_of([&] { (void)io::read_step_log(bad); }) == ErrorKind::Parse);
  std::stringstream garbage("not json\n");
  CHECK(kind_of([&] { (void)io::read_step_log(garbage); }) == ErrorKind::Parse);
}

TEST_CASE("boundary CSV round-trips at 12 digits") {
  const auto curve = boundary_samples(5, 300);
  std::stringstream first;
  io::write_boundary_csv(first, curve);
  const std::string text = first.str();
  const auto back = io::read_boundary_csv(first, 5);
  REQUIRE(back.samples.size() == curve.samples.size());
  for (std::size_t k = 0; k < back.samples.size(); ++k) {
    CHECK(back.samples[k].region == curve.samples[k].region);
    CHECK(std::abs(back.samples[k].s_r - curve.samples[k].s_r) <= 1e-11);
    CHECK(std::abs(back.samples[k].s_i_max - curve.samples[k].s_i_max) <= 1e-11);
  }
  std::stringstream second;
  io::write_boundary_csv(second, back);
  CHECK(second.str() == text);

  std::stringstream bad_header("a,b,c\n");
  CHECK(kind_of([&] { (void)io::read_boundary_csv(bad_header, 5); }) == ErrorKind::Parse);
  std::stringstream bad_region("s_r,s_i_max,region\n0,1,CIRCLE\n");
  CHECK_THROWS_AS((void)io::read_boundary_csv(bad_region, 5), Error);
}

TEST_CASE("cloud CSV round-trips at 12 digits") {
  for (bool with_rob : {false, true}) {
    CloudConfig cfg{3, 200, Measure::HsMixed, 64, 2, with_rob};
    const auto recs = coordinate_cloud(cfg);
    std::stringstream first;
    io::write_cloud_header(first, with_rob);
    for (const auto& r : recs) io::write_cloud_row(first, r);
    const std::string text = first.str();
    const auto back = io::read_cloud_csv(first, 3);
    REQUIRE(back.size() == recs.size());
    for (std::size_t k = 0; k < recs.size(); ++k) {
      CHECK(back[k].seed_index == recs[k].seed_index);
      CHECK(std::abs(back[k].s_i - recs[k].s_i) <= 1e-11);
      CHECK(back[k].robustness.has_value() == with_rob);
    }
    std::stringstream second;
    io::write_cloud_header(second, with_rob);
    for (const auto& r : back) io::write_cloud_row(second, r);
    CHECK(second.str() == text);
  }
  std::stringstream short_row("idx,s_d,s_x,s_i,s_r,purity\n0,1,2\n");
  CHECK(kind_of([&] { (void)io::read_cloud_csv(short_row, 2); }) == ErrorKind::Parse);
  std::stringstream bad_idx("idx,s_d,s_x,s_i,s_r,purity\nx,1,2,3,4,5\n");
  CHECK(kind_of([&] { (void)io::read_cloud_csv(bad_idx, 2); }) == ErrorKind::Parse);
  std::stringstream bad_num("idx,s_d,s_x,s_i,s_r,purity\n0,1,2,3,4,5z\n");
  CHECK(kind_of([&] { (void)io::read_cloud_csv(bad_num, 2); }) == ErrorKind::Parse);
}

TEST_CASE("empirical CSV skips empty bins") {
  EmpiricalCurve curve;
  curve.dim = 2;
  curve.bins = {{0.0, 0.5, 0.25, 3, 0.9, 0.2}, {0.5, 1.0, 0.75, 0, std::nullopt, 0.0}};
  std::stringstream ss;
  io::write_empirical_csv(ss, curve);
  CHECK(ss.str() == "s_r_bin_center,s_i_max_empirical\n0.25,0.9\n");
}

TEST_CASE("svg output is a single polyline") {
  const std::string svg = io::boundary_svg(boundary_samples(3, 10));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("files and sidecars") {
  CHECK(io::sidecar_path("out/boundary.csv", ".landmarks.json") == "out/boundary.landmarks.json");
  CHECK(io::sidecar_path("state", ".steps.jsonl") == "state.steps.jsonl");

  const auto dir = std::filesystem::temp_directory_path() / "qbg_test_io";
  std::filesystem::create_directories(dir);
  io::write_text_file(dir / "m.json", io::matrix_to_json(maximally_mixed(2).matrix()).dump());
  CHECK(io::read_json_file(dir / "m.json").at("dim").get<int>() == 2);

  io::write_text_file(dir / "bad.json", "{ not json");
  CHECK(kind_of([&] { (void)io::read_json_file(dir / "bad.json"); }) == ErrorKind::Parse);
  CHECK(kind_of([&] { (void)io::read_json_file(dir / "absent.json"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { io::write_text_file(dir / "no" / "such" / "dir.txt", "x"); }) ==
        ErrorKind::InvalidArgument);
  std::filesystem::remove_all(dir);
}
