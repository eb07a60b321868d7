#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "softtorus/cli.hpp"
#include "softtorus/io.hpp"
#include "test_util.hpp"

using namespace softtorus;
using nlohmann::json;
using softtorus::testing::branch_safe_unitary;
using softtorus::testing::dist;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("softtorus_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

// run_cli writes through stdout; capture it around the call
std::string capture_stdout(const std::function<int()>& body, int& exit_code) {
  std::fflush(stdout);
  const int saved = ::dup(1);
  const fs::path sink =
      fs::temp_directory_path() / ("softtorus_capture_" +
                                   std::to_string(::getpid()) + ".txt");
  FILE* f = std::fopen(sink.c_str(), "w");
  REQUIRE(f != nullptr);
  ::dup2(fileno(f), 1);
  exit_code = body();
  std::fflush(stdout);
  ::dup2(saved, 1);
  ::close(saved);
  std::fclose(f);
  const std::string out = read_text_file(sink);
  fs::remove(sink);
  return out;
}

void write_scalar_matrix(const std::string& path, double re, double im = 0.0) {
  json j = {{"dim", 1}, {"re", {{re}}}, {"im", {{im}}}};
  write_json_atomic(path, j);
}

}  // namespace

TEST_CASE("matrix json round trip is exact") {
  SeededRng rng(301);
  const Matrix u = branch_safe_unitary(rng, 5);
  const Matrix back = matrix_from_json(matrix_to_json(u));
  CHECK((u - back).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix json rejects bad shapes") {
  const auto expect_bad = [](const json& j) {
    try {
      matrix_from_json(j);
      FAIL("expected BadFormat");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadFormat);
    }
  };
  expect_bad(json{{"dim", 2}, {"re", {{1.0, 0.0}}}, {"im", {{0.0, 0.0}}}});
  expect_bad(json{{"dim", 2},
                  {"re", {{1.0, 0.0}, {0.0, 1.0}}},
                  {"im", {{0.0}, {0.0}}}});
  expect_bad(json{{"dim", 2}, {"re", {{1.0, 0.0}, {0.0, 1.0}}}});
  expect_bad(json{{"dim", 0}, {"re", json::array()}, {"im", json::array()}});
  const json text_entry = json::array({json::array({"x"})});
  expect_bad(json{{"dim", 1}, {"re", text_entry}, {"im", {{0.0}}}});
}

TEST_CASE("family json round trip") {
  const BFamily f = random_brep(0.7, 3, -1, 2, 17);
  const BFamily back = bfamily_from_json(bfamily_to_json(f));
  CHECK(back.eps() == f.eps());
  CHECK(back.lo() == f.lo());
  CHECK(back.hi() == f.hi());
  for (int n = f.lo(); n <= f.hi(); ++n) {
    CHECK((f.unit(n) - back.unit(n)).cwiseAbs().maxCoeff() == 0.0);
  }

  json j = bfamily_to_json(f);
  j["units"][0]["index"] = 99;
  try {
    bfamily_from_json(j);
    FAIL("expected BadFormat");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadFormat);
  }
}

TEST_CASE("periodic family json round trip") {
  const PeriodicFamily pf = periodize(random_brep(0.9, 2, -1, 1, 23));
  const PeriodicFamily back =
      periodic_family_from_json(periodic_family_to_json(pf));
  CHECK(back.period() == pf.period());
  CHECK(back.core_radius() == pf.core_radius());
  for (int j = 0; j < pf.period(); ++j) {
    CHECK((pf.unit_slot(j) - back.unit_slot(j)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("certificate json round trip is exact") {
  SearchParams params;
  params.dims = {1};
  params.restarts = 4;
  params.seed = 11;
  params.ascent_steps = 60;
  const Certificate c = certify(parse_poly("u*v - v*u"), 0.5, params);
  const Certificate back = certificate_from_json(certificate_to_json(c));
  CHECK(back.eps == c.eps);
  CHECK(back.poly == c.poly);
  CHECK(back.n == c.n);
  CHECK(back.p == c.p);
  CHECK(back.m == c.m);
  CHECK(back.q == c.q);
  CHECK(back.seed == c.seed);
  CHECK(back.lambda == c.lambda);
  CHECK(back.achieved_norm == c.achieved_norm);
  CHECK(back.commutator_norm == c.commutator_norm);
  CHECK(back.lower_bound == c.lower_bound);
  CHECK((back.u - c.u).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.v - c.v).cwiseAbs().maxCoeff() == 0.0);
  CHECK(verify_certificate(back, 1e-8).all_pass());
}

TEST_CASE("atomic write leaves no temporary behind") {
  TempDir dir;
  const std::string path = dir.file("out.json");
  write_json_atomic(path, json{{"x", 1}});
  CHECK(fs::exists(path));
  CHECK_FALSE(fs::exists(path + ".tmp"));
  CHECK(read_json_file(path)["x"] == 1);
}

TEST_CASE("cli certify and verify round trip") {
  TempDir dir;
  const std::string cert = dir.file("c.json");
  int code = 0;
  const std::string out = capture_stdout(
      [&] {
        return run_cli({"certify", "--eps", "0.5", "--poly", "u*v - v*u",
                        "--dims", "1,2", "--restarts", "8", "--seed", "7",
                        "--out", cert});
      },
      code);
  CHECK(code == 0);
  CHECK(out.find("achieved_norm") != std::string::npos);
  CHECK(fs::exists(cert));

  int vcode = 0;
  const std::string vout =
      capture_stdout([&] { return run_cli({"verify", "--in", cert}); }, vcode);
  CHECK(vcode == 0);
  CHECK(vout.find("FAIL") == std::string::npos);

  // tampering flips the exit code to 3
  json j = read_json_file(cert);
  j["achieved_norm"] = j["achieved_norm"].get<double>() + 0.5;
  write_json_atomic(cert, j);
  int tcode = 0;
  const std::string tout =
      capture_stdout([&] { return run_cli({"verify", "--in", cert}); }, tcode);
  CHECK(tcode == 3);
  CHECK(tout.find("FAIL AchievedNormMatchesStored") != std::string::npos);
}

TEST_CASE("cli certify is deterministic at the byte level") {
  TempDir dir;
  const std::string c1 = dir.file("c1.json");
  const std::string c2 = dir.file("c2.json");
  int code = 0;
  capture_stdout(
      [&] {
        return run_cli({"certify", "--eps", "0.5", "--poly", "u*v - v*u",
                        "--dims", "1,2", "--restarts", "8", "--seed", "7",
                        "--out", c1});
      },
      code);
  REQUIRE(code == 0);
  capture_stdout(
      [&] {
        return run_cli({"certify", "--eps", "0.5", "--poly", "u*v - v*u",
                        "--dims", "1,2", "--restarts", "8", "--seed", "7",
                        "--out", c2});
      },
      code);
  REQUIRE(code == 0);
  CHECK(read_text_file(c1) == read_text_file(c2));
}

TEST_CASE("cli error exit codes") {
  TempDir dir;
  int code = 0;
  capture_stdout(
      [&] {
        return run_cli({"certify", "--eps", "0.5", "--poly", "u - u", "--out",
                        dir.file("x.json")});
      },
      code);
  CHECK(code == 1);

  capture_stdout(
      [&] {
        return run_cli({"certify", "--eps", "2.5", "--poly", "u", "--out",
                        dir.file("x.json")});
      },
      code);
  CHECK(code == 1);

  capture_stdout(
      [&] { return run_cli({"verify", "--in", dir.file("missing.json")}); },
      code);
  CHECK(code == 1);

  capture_stdout([&] { return run_cli({"frobnicate"}); }, code);
  CHECK(code == 1);
}

TEST_CASE("cli order prints the crossed form") {
  int code = 0;
  const std::string out = capture_stdout(
      [&] { return run_cli({"order", "--poly", "u*v - v*u"}); }, code);
  CHECK(code == 0);
  CHECK(out == "(u_0 - u_1)*v\n");
}

TEST_CASE("cli interp writes the expected path") {
  TempDir dir;
  const std::string in = dir.file("w.json");
  const std::string out_path = dir.file("path.json");
  write_scalar_matrix(in, -1.0);
  int code = 0;
  const std::string out = capture_stdout(
      [&] {
        return run_cli(
            {"interp", "--eps", "1", "--in", in, "--out", out_path});
      },
      code);
  CHECK(code == 0);
  CHECK(out.find("length 4 (M = 3)") != std::string::npos);
  const json j = read_json_file(out_path);
  CHECK(j["window"]["lo"] == 0);
  CHECK(j["window"]["hi"] == 3);
  CHECK(j["units"].size() == 4);
}

TEST_CASE("cli dilate matches the closed form") {
  TempDir dir;
  const std::string in = dir.file("t.json");
  const std::string out_path = dir.file("v.json");
  write_scalar_matrix(in, 0.5);
  int code = 0;
  capture_stdout(
      [&] { return run_cli({"dilate", "--in", in, "--out", out_path}); },
      code);
  CHECK(code == 0);
  const Matrix v = matrix_from_json(read_json_file(out_path));
  Matrix expected(2, 2);
  expected << 0.5, std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0, -0.5;
  CHECK(dist(v, expected) <= 1e-12);
}

TEST_CASE("cli rand is reproducible byte for byte") {
  TempDir dir;
  const std::string f1 = dir.file("f1.json");
  const std::string f2 = dir.file("f2.json");
  int code = 0;
  capture_stdout(
      [&] {
        return run_cli({"rand", "--eps", "0.5", "--dim", "3", "--lo", "-2",
                        "--hi", "2", "--seed", "5", "--out", f1});
      },
      code);
  REQUIRE(code == 0);
  capture_stdout(
      [&] {
        return run_cli({"rand", "--eps", "0.5", "--dim", "3", "--lo", "-2",
                        "--hi", "2", "--seed", "5", "--out", f2});
      },
      code);
  REQUIRE(code == 0);
  CHECK(read_text_file(f1) == read_text_file(f2));
  const BFamily f = bfamily_from_json(read_json_file(f1));
  CHECK(f.max_step() <= 0.5 + 1e-9);
}
