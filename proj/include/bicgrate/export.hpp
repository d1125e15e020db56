// CSV and JSON output plus the run manifest that every output file points to.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bicgrate/bound_states.hpp"
#include "bicgrate/fields.hpp"
#include "bicgrate/scattering.hpp"

namespace bicgrate {

/// %.17g, with "nan" / "inf" spelled out.
std::string fmt(double v);

nlohmann::json to_json(const ArrayConfig& cfg);
nlohmann::json to_json(const BoundStateRecord& rec);
nlohmann::json to_json(const ScatteringSolution& sol);
nlohmann::json to_json(const DiophantineTuple& t);

/// Header x,z,re,im,abs; one row per sample, z fastest; samples inside a
/// cylinder are written as nan.
void write_field_csv(const FieldGrid& g, std::ostream& out);

struct RunManifest {
  std::string schema = "v1";
  std::string command;
  nlohmann::json config;
  nlohmann::json tolerances;
  std::string input_hash;  // SHA-1 of the canonical input dump
  std::string timestamp;   // UTC, ISO 8601
  std::vector<std::string> outputs;
};

std::string sha1_hex(const std::string& data);

/// Hash covers command, config and tolerances; the timestamp is excluded.
RunManifest make_manifest(const std::string& command, const nlohmann::json& config,
                          const nlohmann::json& tolerances);
nlohmann::json to_json(const RunManifest& m);

/// Writes `path.manifest.json` next to an output file.
void write_manifest(const RunManifest& m, const std::string& output_path);

}  // namespace bicgrate
