#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "arcmub/arcs.hpp"
#include "arcmub/mub.hpp"
#include "arcmub/plane.hpp"
#include "json.hpp"

namespace arcmub::cert {

using nlohmann::json;

/// How to rebuild a plane: {"builtin":"pg2","field":"GF ..."},
/// {"builtin":"hall9"} or {"file":"path"}. Imported planes need the file.
json plane_source(const plane::Plane& p, const std::optional<std::string>& file = std::nullopt);

/// Relative file paths resolve against base_dir. Throws ParseError.
plane::Plane plane_from_source(const json& source, const std::filesystem::path& base_dir);

/// {"type":"oval","plane","plane_source","points","class","nucleus","conic_coeffs"};
/// class, nucleus and conic are null where the plane has no field coordinates.
json oval_certificate(const plane::Plane& p, const json& source, std::span<const plane::PointId> oval);

json desargues_certificate(const plane::Plane& p, const json& source, const plane::DesarguesConfig& cfg);

/// The MUB file format with "type":"mub".
json mub_certificate(const mub::MubSet& s);

struct Verdict {
  bool ok = true;
  std::string detail;
};

/// Re-runs the checks behind one certificate, or every entry of a
/// "certificates" array. Throws ParseError for malformed input.
Verdict verify_certificate(const json& doc, const std::filesystem::path& base_dir);

}  // namespace arcmub::cert
