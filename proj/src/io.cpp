#include "softtorus/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace softtorus {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) {
    raise(ErrorCode::BadFormat, std::string("missing field '") + name + "'");
  }
  return *it;
}

double require_number(const json& j, const char* name) {
  const json& f = require_field(j, name);
  if (!f.is_number()) {
    raise(ErrorCode::BadFormat, std::string("field '") + name +
                                    "' must be a number");
  }
  return f.get<double>();
}

std::int64_t require_integer(const json& j, const char* name) {
  const json& f = require_field(j, name);
  if (!f.is_number_integer()) {
    raise(ErrorCode::BadFormat, std::string("field '") + name +
                                    "' must be an integer");
  }
  return f.get<std::int64_t>();
}

// dim x dim numeric grid, row-major
Eigen::MatrixXd grid_from_json(const json& j, Eigen::Index dim,
                               const char* name) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(dim)) {
    raise(ErrorCode::BadFormat, std::string("field '") + name + "' must hold " +
                                    std::to_string(dim) + " rows");
  }
  Eigen::MatrixXd out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
      raise(ErrorCode::BadFormat,
            std::string("row ") + std::to_string(r) + " of '" + name +
                "' must hold " + std::to_string(dim) + " numbers");
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      const json& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_number()) {
        raise(ErrorCode::BadFormat,
              std::string("non-numeric entry in '") + name + "'");
      }
      out(r, c) = cell.get<double>();
    }
  }
  return out;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    raise(ErrorCode::InvalidArgument, "only nonempty square matrices are written");
  }
  const Eigen::Index dim = m.rows();
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < dim; ++r) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index c = 0; c < dim; ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", dim}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) raise(ErrorCode::BadFormat, "matrix must be an object");
  const std::int64_t dim = require_integer(j, "dim");
  if (dim < 1 || dim > 1 << 16) {
    raise(ErrorCode::BadFormat, "dim must be a positive integer");
  }
  const Eigen::MatrixXd re =
      grid_from_json(require_field(j, "re"), dim, "re");
  const Eigen::MatrixXd im =
      grid_from_json(require_field(j, "im"), dim, "im");
  Matrix out(dim, dim);
  out.real() = re;
  out.imag() = im;
  if (!out.allFinite()) raise(ErrorCode::BadFormat, "non-finite matrix entry");
  return out;
}

json bfamily_to_json(const BFamily& f) {
  json units = json::array();
  for (int n = f.lo(); n <= f.hi(); ++n) {
    units.push_back(json{{"index", n}, {"matrix", matrix_to_json(f.unit(n))}});
  }
  return json{{"eps", f.eps()},
              {"dim", f.dim()},
              {"window", {{"lo", f.lo()}, {"hi", f.hi()}}},
              {"units", std::move(units)}};
}

BFamily bfamily_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_object()) raise(ErrorCode::BadFormat, "family must be an object");
  const double eps = require_number(j, "eps");
  const json& window = require_field(j, "window");
  const int lo = static_cast<int>(require_integer(window, "lo"));
  const int hi = static_cast<int>(require_integer(window, "hi"));
  if (hi < lo) raise(ErrorCode::BadFormat, "window is empty");
  const json& units = require_field(j, "units");
  if (!units.is_array() ||
      units.size() != static_cast<std::size_t>(hi - lo + 1)) {
    raise(ErrorCode::BadFormat, "units must list one matrix per index");
  }
  std::vector<Matrix> mats(static_cast<std::size_t>(hi - lo + 1));
  std::vector<bool> seen(mats.size(), false);
  for (const json& entry : units) {
    const int idx = static_cast<int>(require_integer(entry, "index"));
    if (idx < lo || idx > hi) {
      raise(ErrorCode::BadFormat, "unit index outside the window");
    }
    if (seen[static_cast<std::size_t>(idx - lo)]) {
      raise(ErrorCode::BadFormat, "duplicate unit index");
    }
    seen[static_cast<std::size_t>(idx - lo)] = true;
    mats[static_cast<std::size_t>(idx - lo)] =
        matrix_from_json(require_field(entry, "matrix"));
  }
  try {
    return BFamily(eps, lo, hi, std::move(mats), tol);
  } catch (const Error& e) {
    raise(ErrorCode::BadFormat, std::string("invalid family: ") + e.what());
  }
}

json periodic_family_to_json(const PeriodicFamily& f) {
  json units = json::array();
  for (int jx = 0; jx < f.period(); ++jx) {
    units.push_back(
        json{{"index", jx}, {"matrix", matrix_to_json(f.unit_slot(jx))}});
  }
  return json{{"eps", f.eps()},
              {"dim", f.dim()},
              {"period", f.period()},
              {"core_radius", f.core_radius()},
              {"units", std::move(units)}};
}

PeriodicFamily periodic_family_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_object()) raise(ErrorCode::BadFormat, "family must be an object");
  const double eps = require_number(j, "eps");
  const int period = static_cast<int>(require_integer(j, "period"));
  const int core = j.contains("core_radius")
                       ? static_cast<int>(require_integer(j, "core_radius"))
                       : 0;
  const json& units = require_field(j, "units");
  if (!units.is_array() || units.size() != static_cast<std::size_t>(period) ||
      period < 1) {
    raise(ErrorCode::BadFormat, "units must list one matrix per slot");
  }
  std::vector<Matrix> mats(static_cast<std::size_t>(period));
  std::vector<bool> seen(mats.size(), false);
  for (const json& entry : units) {
    const int idx = static_cast<int>(require_integer(entry, "index"));
    if (idx < 0 || idx >= period || seen[static_cast<std::size_t>(idx)]) {
      raise(ErrorCode::BadFormat, "bad or duplicate slot index");
    }
    seen[static_cast<std::size_t>(idx)] = true;
    mats[static_cast<std::size_t>(idx)] =
        matrix_from_json(require_field(entry, "matrix"));
  }
  try {
    return PeriodicFamily(eps, period, core, std::move(mats), tol);
  } catch (const Error& e) {
    raise(ErrorCode::BadFormat, std::string("invalid family: ") + e.what());
  }
}

json certificate_to_json(const Certificate& c, double verify_tol) {
  return json{
      {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
      {"eps", c.eps},
      {"poly", c.poly},
      {"n", c.n},
      {"p", c.p},
      {"m", c.m},
      {"q", c.q},
      {"seed", c.seed},
      {"lambda", {{"re", c.lambda.real()}, {"im", c.lambda.imag()}}},
      {"achieved_norm", c.achieved_norm},
      {"commutator_norm", c.commutator_norm},
      {"lower_bound", c.lower_bound},
      {"u", matrix_to_json(c.u)},
      {"v", matrix_to_json(c.v)},
      {"tolerances",
       {{"verify_tol", verify_tol},
        {"unitary_tol", kDefaultTol.unitary_tol},
        {"hermitian_tol", kDefaultTol.hermitian_tol},
        {"branch_margin", kDefaultTol.branch_margin},
        {"psd_clip", kDefaultTol.psd_clip}}}};
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) raise(ErrorCode::BadFormat, "certificate must be an object");
  Certificate c;
  c.eps = require_number(j, "eps");
  const json& poly = require_field(j, "poly");
  if (!poly.is_string()) raise(ErrorCode::BadFormat, "poly must be a string");
  c.poly = poly.get<std::string>();
  c.n = static_cast<int>(require_integer(j, "n"));
  c.p = static_cast<int>(require_integer(j, "p"));
  c.m = static_cast<int>(require_integer(j, "m"));
  c.q = static_cast<int>(require_integer(j, "q"));
  const json& seed = require_field(j, "seed");
  if (!seed.is_number_integer() && !seed.is_number_unsigned()) {
    raise(ErrorCode::BadFormat, "seed must be an integer");
  }
  c.seed = seed.get<std::uint64_t>();
  const json& lambda = require_field(j, "lambda");
  c.lambda = Complex(require_number(lambda, "re"), require_number(lambda, "im"));
  c.achieved_norm = require_number(j, "achieved_norm");
  c.commutator_norm = require_number(j, "commutator_norm");
  c.lower_bound = require_number(j, "lower_bound");
  c.u = matrix_from_json(require_field(j, "u"));
  c.v = matrix_from_json(require_field(j, "v"));
  return c;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) {
    raise(ErrorCode::IoError, "read failure on " + path.string());
  }
  return ss.str();
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    raise(ErrorCode::BadFormat, "malformed JSON in " + path.string());
  }
  return j;
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::IoError, "cannot open " + tmp.string());
    out << content;
    if (!out.good()) raise(ErrorCode::IoError, "write failure on " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    raise(ErrorCode::IoError,
          "cannot rename " + tmp.string() + ": " + ec.message());
  }
}

void write_json_atomic(const std::filesystem::path& path, const json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

}  // namespace softtorus
