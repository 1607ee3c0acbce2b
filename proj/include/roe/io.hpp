#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "roe/coarse.hpp"
#include "roe/schur.hpp"

namespace roe::io {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line_number, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  std::size_t line;
};

/// Raw .emx content: a points header plus a pair-value table. Validation is
/// a separate concern (validate_metric), so semantic defects in a
/// syntactically fine file surface as violations, not parse errors.
struct EmxFile {
  PointSet points;
  std::vector<RawDistance> table;
};

EmxFile parse_emx(std::string_view text);
std::string write_emx(const ExtMetric& metric);

SparseOp parse_smx(std::string_view text);
std::string write_smx(const SparseOp& op);

HRFamily parse_hrf(std::string_view text);
std::string write_hrf(const HRFamily& family);

/// Raw .map content by ids; bind_map resolves against the two point sets.
struct MapFile {
  std::vector<std::pair<std::string, std::string>> f;
  std::optional<std::vector<std::pair<std::string, std::string>>> g;
  std::optional<double> C;
};

MapFile parse_map(std::string_view text);
CoarseMapData bind_map(const MapFile& file, const PointSet& X, const PointSet& Y);
std::string write_map(const CoarseMapData& data);

/// Block representation descriptor (.grp), a JSON document with keys
/// "points", "elements", "table", "blocks" (each block: "points",
/// "actions"). Group axioms are validated on construction.
BlockRep parse_grp(std::string_view text);
std::string write_grp(const BlockRep& rep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace roe::io
