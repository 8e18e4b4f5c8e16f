#pragma once

// Command-line front end: JSON run configurations, presets, sweep execution
// and deterministic CSV/JSON emission.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lfs/numerics.hpp"

namespace lfs::cli {

enum class Command { amp2d, amp3d, exact2d, kernels_check, cloak, dyson1d, sweep };
enum class Format { csv, json };

const char* command_name(Command c) noexcept;

struct CloakSettings {
  std::string mode = "moments";  // moments | profiled
  Complex z1;
  Complex z2;
  double z0 = 0.0;        // profiled mode
  double g_length = 0.0;  // profiled mode: g(y) = exp(-y^2 / 2 L^2)
  std::vector<double> y;
  bool verify = true;
};

struct DysonSettings {
  std::string mode = "series";  // series | stepping
  int max_terms = 40;
  double tol = 1e-14;
};

/// A validated run. Grids are fully expanded.
struct RunConfig {
  Command command = Command::sweep;
  int dimension = 2;
  nlohmann::json profile;
  double ell = 1.0;
  std::vector<double> kl;
  std::vector<double> theta;
  double phi = 0.0;
  double theta0 = 0.0;
  double phi0 = 0.0;
  std::optional<double> alpha;  // Born-exact threshold for the generic exact method
  std::vector<std::string> methods;
  std::string quantity = "amplitude";  // amplitude | normalized_cross_section
  QuadratureSpec quadrature;
  std::size_t nodes = 201;
  CloakSettings cloak;
  DysonSettings dyson;
  std::string out_path;
  Format format = Format::csv;
  /// Points dropped from theta ranges because they sit on cos(theta) = 0.
  std::size_t skipped = 0;
  /// Case label when the configuration came from a "cases" list.
  std::string label;
};

/// Parses and validates one configuration; every violation found is appended
/// to `errors`. `base_dir` resolves relative profile paths.
RunConfig parse_config(const nlohmann::json& j, const std::string& base_dir,
                       std::vector<std::string>& errors);

/// Expands an optional "cases" array (each entry merge-patched onto the base).
std::vector<RunConfig> parse_cases(const nlohmann::json& j, const std::string& base_dir,
                                   std::vector<std::string>& errors);

/// Number, "pi/3", "4pi/3", "-0.5*pi", ...
double parse_angle(const nlohmann::json& v);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json meta = nlohmann::json::object();

  /// Column index by name; throws std::out_of_range.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  std::string text(std::size_t row, const std::string& name) const;
};

/// Concatenates case tables (all of the same shape), prefixing a "case" column
/// when labels are present.
Table merge_tables(const std::vector<Table>& parts, const std::vector<std::string>& labels);

void write_csv(const Table& t, std::ostream& out);
void write_json(const Table& t, std::ostream& out);

/// Runs one configuration; `threads` workers evaluate the grid points.
Table execute(const RunConfig& config, unsigned threads);

/// Runs every case of a configuration document.
Table run_document(const nlohmann::json& doc, const std::string& base_dir, unsigned threads,
                   std::optional<double> rel_tol = std::nullopt);

const std::map<std::string, std::string>& presets();
/// Preset document by name; throws ValidationError for unknown names.
nlohmann::json preset_document(const std::string& name);

/// Full CLI: lfscat run|validate [--config P | --preset N] [--out P]
/// [--format csv|json] [--threads N] [--tol R]. Exit codes: 0 ok,
/// 2 validation, 3 numerical failure.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lfs::cli
