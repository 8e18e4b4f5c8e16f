#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "lfs/error.hpp"

namespace lfs::cli {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config;
  std::string preset;
  std::string out;
  std::string format;
  unsigned threads = 1;
  std::optional<double> tol;
};

void add_options(CLI::App* cmd, Options& o) {
  auto* cfg = cmd->add_option("--config", o.config, "run configuration (JSON)");
  auto* pre = cmd->add_option("--preset", o.preset, "built-in configuration (fig3, fig4, fig6, fig7, fig8)");
  cfg->excludes(pre);
  cmd->add_option("--out", o.out, "output path (default: standard output)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--tol", o.tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
}

void report(std::ostream& err, const std::string& kind, const std::vector<std::string>& errors) {
  json j{{"status", "error"}, {"kind", kind}, {"errors", errors}};
  err << j.dump() << '\n';
}

// Loads the document named by --config/--preset; base_dir receives the
// directory used for relative profile paths.
json load_document(const Options& o, std::string& base_dir) {
  if (!o.preset.empty()) return preset_document(o.preset);
  if (o.config.empty()) throw ValidationError("one of --config or --preset is required");
  std::ifstream in(o.config);
  if (!in) throw ValidationError("cannot read config file '" + o.config + "'");
  base_dir = std::filesystem::path(o.config).parent_path().string();
  return json::parse(in);
}

std::vector<std::string> split_errors(const std::string& joined) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = joined.find("; ", start);
    out.push_back(joined.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 2;
  }
  return out;
}

int do_validate(const Options& o, std::ostream& out, std::ostream& err) {
  std::string base_dir;
  json doc = load_document(o, base_dir);
  if (o.tol && doc.is_object()) doc["numerics"]["rel_tol"] = *o.tol;
  std::vector<std::string> errors;
  const std::vector<RunConfig> configs = parse_cases(doc, base_dir, errors);
  if (!errors.empty()) {
    report(err, "validation", errors);
    return kExitValidation;
  }
  json summary{{"status", "ok"}, {"cases", configs.size()}};
  for (const RunConfig& c : configs) summary["commands"].push_back(command_name(c.command));
  out << summary.dump() << '\n';
  return kExitOk;
}

int do_run(const Options& o, std::ostream& out) {
  std::string base_dir;
  const json doc = load_document(o, base_dir);
  const Table t = run_document(doc, base_dir, o.threads, o.tol);

  const json output = doc.value("output", json::object());
  std::string path = o.out.empty() ? output.value("path", std::string()) : o.out;
  std::string format = o.format.empty() ? output.value("format", std::string("csv")) : o.format;

  std::ostringstream buf;
  if (format == "json") {
    write_json(t, buf);
  } else {
    write_csv(t, buf);
  }
  if (path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write output file '" + path + "'");
    f << buf.str();
  }
  return kExitOk;
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Low-frequency scattering amplitudes, cloaks and transfer matrices"};
  app.require_subcommand(1);
  Options run_opts, validate_opts;
  CLI::App* run = app.add_subcommand("run", "execute a configuration and write the results");
  CLI::App* validate = app.add_subcommand("validate", "check a configuration without running it");
  add_options(run, run_opts);
  add_options(validate, validate_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report(err, "validation", {e.what()});
    return kExitValidation;
  }

  try {
    if (validate->parsed()) return do_validate(validate_opts, out, err);
    return do_run(run_opts, out);
  } catch (const ValidationError& e) {
    report(err, "validation", split_errors(e.what()));
    return kExitValidation;
  } catch (const DomainError& e) {
    report(err, "validation", {e.what()});
    return kExitValidation;
  } catch (const json::exception& e) {
    report(err, "validation", {std::string("config: ") + e.what()});
    return kExitValidation;
  } catch (const NumericalError& e) {
    json j{{"status", "error"},
           {"kind", "numerical"},
           {"errors", {e.what()}},
           {"estimate", {e.estimate().real(), e.estimate().imag()}},
           {"error_estimate", e.error_estimate()}};
    err << j.dump() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    report(err, "numerical", {e.what()});
    return kExitNumerical;
  }
}

}  // namespace lfs::cli
