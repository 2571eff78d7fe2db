#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "simplexcover/bound_verify.hpp"
#include "simplexcover/covering.hpp"
#include "simplexcover/ddp_search.hpp"
#include "simplexcover/lattice.hpp"
#include "simplexcover/tile.hpp"

namespace simplexcover {

using json = nlohmann::json;

/// Round to 12 significant digits so emitted floats are stable.
double round_significant(double x);

json bigint_to_json(const BigInt& x);
BigInt bigint_from_json(const json& j);
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

/// {"n": int, "basis": [[int, ...], ...]}; the basis may be any generating set.
json lattice_to_json(const IntegerLattice& lattice);
IntegerLattice lattice_from_json(const json& j);
IntegerLattice read_lattice_file(const std::filesystem::path& path);

/// Flat export form of a tile.
struct TileRecord {
  int n = 0;
  std::int64_t det = 0;
  std::int64_t diameter = 0;
  std::vector<IntVec> points;  // graded order
  std::optional<IntVec> notch;

  bool operator==(const TileRecord&) const = default;
};

TileRecord to_record(const CayleyTile& tile);
json to_json(const TileRecord& record);
TileRecord tile_record_from_json(const json& j);
/// 2-D tiles only: '#' tile cell, 'v' notch, '.' empty; top row is the largest x2.
std::string render_ascii(const CayleyTile& tile);

json to_json(const CoveringVerdict& verdict);
CoveringVerdict covering_verdict_from_json(const json& j);

json to_json(const SearchReport& report);
SearchReport search_report_from_json(const json& j);

json to_json(const BoundCheck& check);
BoundCheck bound_check_from_json(const json& j);

/// Header plus one row per d: d,best_density_num,best_density_den,witness_lattice.
std::string density_csv(const std::vector<DensityRow>& rows);

/// Sorted keys, two-space indent, trailing newline.
std::string dump_stable(const json& j);

/// Whole-file write. Throws IoError.
void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace simplexcover
