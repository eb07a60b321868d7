#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "softtorus/brep.hpp"
#include "softtorus/certify.hpp"

namespace softtorus {

inline constexpr const char* kToolName = "softtorus";
inline constexpr const char* kToolVersion = "0.1.0";

// Matrix documents carry dim plus row-major dim x dim arrays of the
// real and imaginary parts. Readers reject non-square and mismatched
// shapes with BadFormat.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json bfamily_to_json(const BFamily& f);
BFamily bfamily_from_json(const nlohmann::json& j,
                          const Tolerances& tol = kDefaultTol);

nlohmann::json periodic_family_to_json(const PeriodicFamily& f);
PeriodicFamily periodic_family_from_json(const nlohmann::json& j,
                                         const Tolerances& tol = kDefaultTol);

nlohmann::json certificate_to_json(
    const Certificate& c, double verify_tol = kDefaultTol.verify_tol);
Certificate certificate_from_json(const nlohmann::json& j);

std::string read_text_file(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

// write to a temporary in the same directory, then rename
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);
void write_json_atomic(const std::filesystem::path& path,
                       const nlohmann::json& j);

}  // namespace softtorus
