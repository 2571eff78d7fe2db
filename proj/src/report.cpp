#include "simplexcover/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace simplexcover {

double round_significant(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json bigint_to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return x.convert_to<std::int64_t>();
  return x.str();
}

BigInt bigint_from_json(const json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::int64_t>());
}

json rational_to_json(const Rational& r) {
  return json{{"num", bigint_to_json(numerator(r))}, {"den", bigint_to_json(denominator(r))}};
}

Rational rational_from_json(const json& j) {
  return make_rational(bigint_from_json(j.at("num")), bigint_from_json(j.at("den")));
}

json lattice_to_json(const IntegerLattice& lattice) {
  return json{{"n", lattice.dim()}, {"basis", lattice.rows()}};
}

IntegerLattice lattice_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  std::vector<std::vector<BigInt>> rows;
  for (const auto& row : j.at("basis")) {
    std::vector<BigInt> r;
    for (const auto& x : row) r.push_back(bigint_from_json(x));
    rows.push_back(std::move(r));
  }
  return IntegerLattice::from_generators(rows, n);
}

IntegerLattice read_lattice_file(const std::filesystem::path& path) {
  return lattice_from_json(json::parse(read_file(path)));
}

TileRecord to_record(const CayleyTile& tile) {
  TileRecord r;
  r.n = tile.dim;
  r.det = tile.source_lattice.index();
  r.diameter = tile.m_diameter;
  for (const auto& p : tile.points) r.points.push_back(p.coords());
  if (tile.notch) r.notch = tile.notch->coords();
  return r;
}

json to_json(const TileRecord& record) {
  return json{{"n", record.n},
              {"det", record.det},
              {"diameter", record.diameter},
              {"points", record.points},
              {"notch", record.notch ? json(*record.notch) : json(nullptr)}};
}

TileRecord tile_record_from_json(const json& j) {
  TileRecord r;
  r.n = j.at("n").get<int>();
  r.det = j.at("det").get<std::int64_t>();
  r.diameter = j.at("diameter").get<std::int64_t>();
  r.points = j.at("points").get<std::vector<IntVec>>();
  if (!j.at("notch").is_null()) r.notch = j.at("notch").get<IntVec>();
  return r;
}

std::string render_ascii(const CayleyTile& tile) {
  if (tile.dim != 2) throw std::invalid_argument("ASCII rendering needs a 2-D tile");
  const IntVec top = tile.axis_max();
  std::string out;
  for (std::int64_t y = top[1] + 1; y >= 0; --y) {
    for (std::int64_t x = 0; x <= top[0] + 1; ++x) {
      const IntVec p{x, y};
      if (tile.contains(p))
        out += '#';
      else if (tile.notch && tile.notch->coords() == p)
        out += 'v';
      else
        out += '.';
    }
    out += '\n';
  }
  return out;
}

json to_json(const CoveringVerdict& verdict) {
  return json{{"covered", verdict.covered},
              {"density", verdict.density ? rational_to_json(*verdict.density) : json(nullptr)},
              {"witness", verdict.witness ? json(*verdict.witness) : json(nullptr)},
              {"tile_diameter", verdict.tile_diameter}};
}

CoveringVerdict covering_verdict_from_json(const json& j) {
  CoveringVerdict v;
  v.covered = j.at("covered").get<bool>();
  if (!j.at("density").is_null()) v.density = rational_from_json(j.at("density"));
  if (!j.at("witness").is_null()) v.witness = j.at("witness").get<IntVec>();
  v.tile_diameter = j.at("tile_diameter").get<std::int64_t>();
  return v;
}

json to_json(const SearchReport& report) {
  return json{{"n", report.n},
              {"d", report.d},
              {"f", bigint_to_json(report.f_value)},
              {"witness_basis", report.witness.rows()},
              {"binomial_cap", bigint_to_json(report.binomial_cap)},
              {"upper_bound", rational_to_json(report.upper_bound)},
              {"candidates_scanned", report.candidates_scanned},
              {"exhaustive", report.exhaustive},
              {"elapsed_ms", round_significant(report.elapsed_ms)}};
}

SearchReport search_report_from_json(const json& j) {
  SearchReport r;
  r.n = j.at("n").get<int>();
  r.d = j.at("d").get<std::int64_t>();
  r.f_value = bigint_from_json(j.at("f"));
  r.witness = IntegerLattice::from_rows(j.at("witness_basis").get<std::vector<IntVec>>());
  r.binomial_cap = bigint_from_json(j.at("binomial_cap"));
  r.upper_bound = rational_from_json(j.at("upper_bound"));
  r.candidates_scanned = j.at("candidates_scanned").get<std::uint64_t>();
  r.exhaustive = j.at("exhaustive").get<bool>();
  r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

json to_json(const BoundCheck& check) {
  return json{{"name", check.name},
              {"estimate", round_significant(check.estimate)},
              {"closed_form", round_significant(check.closed_form)},
              {"abs_err", round_significant(check.abs_err)},
              {"rel_err", round_significant(check.rel_err)},
              {"std_err", round_significant(check.std_err)},
              {"pass", check.pass}};
}

BoundCheck bound_check_from_json(const json& j) {
  BoundCheck c;
  c.name = j.at("name").get<std::string>();
  c.estimate = j.at("estimate").get<double>();
  c.closed_form = j.at("closed_form").get<double>();
  c.abs_err = j.at("abs_err").get<double>();
  c.rel_err = j.at("rel_err").get<double>();
  c.std_err = j.at("std_err").get<double>();
  c.pass = j.at("pass").get<bool>();
  return c;
}

std::string density_csv(const std::vector<DensityRow>& rows) {
  std::ostringstream out;
  out << "d,best_density_num,best_density_den,witness_lattice\n";
  for (const auto& row : rows) {
    out << row.d << ',' << numerator(row.min_density) << ',' << denominator(row.min_density) << ",\""
        << json(row.witness.rows()).dump() << "\"\n";
  }
  return out.str();
}

std::string dump_stable(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace simplexcover
