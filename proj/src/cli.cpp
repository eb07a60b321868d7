#include "softtorus/cli.hpp"

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "softtorus/certify.hpp"
#include "softtorus/io.hpp"

namespace softtorus {

namespace {

void print_value(const char* name, double v) {
  std::printf("%-15s = %.12g\n", name, v);
}

int cmd_certify(double eps, const std::string& poly_text,
                const SearchParams& params, const std::string& out_path,
                double tol) {
  const NCPoly a = parse_poly(poly_text);
  const Certificate cert = certify(a, eps, params);
  write_json_atomic(out_path, certificate_to_json(cert, tol));
  print_value("achieved_norm", cert.achieved_norm);
  print_value("lower_bound", cert.lower_bound);
  print_value("commutator_norm", cert.commutator_norm);
  std::printf("%-15s = %d\n", "n", cert.n);
  std::printf("certificate written to %s\n", out_path.c_str());
  return 0;
}

int cmd_verify(const std::string& in_path, double tol) {
  const Certificate cert = certificate_from_json(read_json_file(in_path));
  const VerifyReport report = verify_certificate(cert, tol);
  int passed = 0;
  for (const VerifyCheck& check : report.checks) {
    std::printf("%s %s  (%s)\n", check.pass ? "PASS" : "FAIL",
                check.name.c_str(), check.detail.c_str());
    if (check.pass) ++passed;
  }
  std::printf("%d/%zu checks passed\n", passed, report.checks.size());
  return report.all_pass() ? 0 : 3;
}

int cmd_interp(double eps, const std::string& in_path,
               const std::string& out_path) {
  const Matrix w = matrix_from_json(read_json_file(in_path));
  const auto path = path_to_identity(w, eps);
  const BFamily family(eps, 0, static_cast<int>(path.size()) - 1, path);
  write_json_atomic(out_path, bfamily_to_json(family));
  std::printf("path of length %zu (M = %zu) written to %s\n", path.size(),
              path.size() - 1, out_path.c_str());
  return 0;
}

int cmd_dilate(const std::string& in_path, const std::string& out_path) {
  const Matrix t = matrix_from_json(read_json_file(in_path));
  const Matrix v = halmos_dilate(t);
  write_json_atomic(out_path, matrix_to_json(v));
  std::printf("unitary dilation of dimension %td written to %s\n", v.rows(),
              out_path.c_str());
  return 0;
}

int cmd_order(const std::string& poly_text, const std::string& out_path) {
  const CrossedForm cf = normal_order(parse_poly(poly_text));
  const std::string text = cf.to_string();
  if (out_path.empty()) {
    std::printf("%s\n", text.c_str());
  } else {
    write_text_atomic(out_path, text + "\n");
    std::printf("crossed form written to %s\n", out_path.c_str());
  }
  return 0;
}

int cmd_rand(double eps, int dim, int lo, int hi, std::uint64_t seed,
             const std::string& out_path) {
  const BFamily family = random_brep(eps, dim, lo, hi, seed);
  write_json_atomic(out_path, bfamily_to_json(family));
  std::printf("family on [%d, %d] written to %s\n", lo, hi, out_path.c_str());
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "finite dimensional pairs of almost-commuting unitaries with "
      "verifiable non-vanishing certificates"};
  app.require_subcommand(1);

  double eps = 0.5;
  std::string poly_text;
  std::string in_path;
  std::string out_path;
  double tol = kDefaultTol.verify_tol;
  SearchParams params;
  int dim = 2;
  int lo = 0;
  int hi = 0;

  auto* certify_cmd =
      app.add_subcommand("certify", "build a certificate for a *-polynomial");
  certify_cmd->add_option("--eps", eps, "commutator bound in (0, 2)")
      ->required();
  certify_cmd->add_option("--poly", poly_text, "*-polynomial in u, v, u_n")
      ->required();
  certify_cmd->add_option("--dims", params.dims, "block sizes to try")
      ->delimiter(',');
  certify_cmd->add_option("--restarts", params.restarts, "seeded restarts");
  certify_cmd->add_option("--seed", params.seed, "master seed");
  certify_cmd->add_option("--ascent-steps", params.ascent_steps,
                          "local ascent steps per restart");
  certify_cmd->add_option("--q", params.q, "averaging order (0 = auto)");
  certify_cmd->add_option("--tol", tol,
                          "verification tolerance recorded in the file");
  certify_cmd->add_option("--out", out_path, "certificate file")->required();

  auto* verify_cmd =
      app.add_subcommand("verify", "re-check a certificate file");
  verify_cmd->add_option("--in", in_path, "certificate file")->required();
  verify_cmd->add_option("--tol", tol, "verification tolerance");

  auto* interp_cmd = app.add_subcommand(
      "interp", "spectral path from a unitary to the identity");
  interp_cmd->add_option("--eps", eps, "step bound in (0, 2]")->required();
  interp_cmd->add_option("--in", in_path, "unitary matrix file")->required();
  interp_cmd->add_option("--out", out_path, "path file")->required();

  auto* dilate_cmd =
      app.add_subcommand("dilate", "unitary block dilation of a contraction");
  dilate_cmd->add_option("--in", in_path, "contraction matrix file")
      ->required();
  dilate_cmd->add_option("--out", out_path, "dilation matrix file")
      ->required();

  auto* order_cmd = app.add_subcommand(
      "order", "normal-ordered crossed form of a *-polynomial");
  order_cmd->add_option("--poly", poly_text, "*-polynomial")->required();
  order_cmd->add_option("--out", out_path, "optional output file");

  auto* rand_cmd =
      app.add_subcommand("rand", "seeded random family with step bound eps");
  rand_cmd->add_option("--eps", eps, "step bound in (0, 2)")->required();
  rand_cmd->add_option("--dim", dim, "matrix dimension")->required();
  rand_cmd->add_option("--lo", lo, "window start");
  rand_cmd->add_option("--hi", hi, "window end");
  rand_cmd->add_option("--seed", params.seed, "seed");
  rand_cmd->add_option("--out", out_path, "family file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (certify_cmd->parsed()) {
      return cmd_certify(eps, poly_text, params, out_path, tol);
    }
    if (verify_cmd->parsed()) return cmd_verify(in_path, tol);
    if (interp_cmd->parsed()) return cmd_interp(eps, in_path, out_path);
    if (dilate_cmd->parsed()) return cmd_dilate(in_path, out_path);
    if (order_cmd->parsed()) return cmd_order(poly_text, out_path);
    if (rand_cmd->parsed()) {
      return cmd_rand(eps, dim, lo, hi, params.seed, out_path);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == ErrorCode::NoWitnessFound ? 2 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("softtorus");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace softtorus
