#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>

#include "cli/cli.hpp"
#include "lfs/dyson1d.hpp"
#include "lfs/error.hpp"
#include "lfs/profiles.hpp"

namespace lfs::cli {
namespace {

using nlohmann::json;

constexpr double kCosFloor = 1e-12;

const std::map<std::string, json>& catalog() {
  static const std::map<std::string, json> names = {
      {"ex1_fig3", {{"type", "ex1"}, {"params", {{"z", 0.1}, {"alpha", 500.0}, {"L", 0.01}}}}},
      {"gaussian_fig4", {{"type", "gaussian_y"}, {"params", {{"z0", 0.5}, {"L", 2.0}}}}},
      {"gaussian3d_fig6", {{"type", "gaussian3d"}, {"params", {{"z", 10.0}, {"L", 10.0}}}}},
  };
  return names;
}

struct Ctx {
  std::vector<std::string>& errors;
  void fail(const std::string& where, const std::string& what) { errors.push_back(where + ": " + what); }
};

std::optional<double> number(Ctx& ctx, const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_number()) {
    ctx.fail(where + "." + key, "must be a number");
    return std::nullopt;
  }
  return v.get<double>();
}

std::optional<double> angle(Ctx& ctx, const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) return std::nullopt;
  try {
    return parse_angle(obj.at(key));
  } catch (const std::exception& e) {
    ctx.fail(where + "." + key, e.what());
    return std::nullopt;
  }
}

struct Grid {
  std::vector<double> values;
  std::size_t skipped = 0;
};

// Scalars and explicit lists are taken as given; ranges may drop points
// rejected by `keep`.
template <class Keep>
Grid grid(Ctx& ctx, const json& v, const std::string& where, bool angles, Keep keep) {
  Grid g;
  auto scalar = [&](const json& x) { return angles ? parse_angle(x) : x.get<double>(); };
  try {
    if (v.is_object()) {
      const double a = scalar(v.at("start"));
      const double b = scalar(v.at("stop"));
      if (!(b >= a)) {
        ctx.fail(where, "range is empty (stop < start)");
        return g;
      }
      std::size_t n = 0;
      if (v.contains("count")) {
        const long long c = v.at("count").get<long long>();
        if (c < 1) {
          ctx.fail(where, "range is empty (count < 1)");
          return g;
        }
        n = static_cast<std::size_t>(c);
      } else if (v.contains("step")) {
        const double h = scalar(v.at("step"));
        if (!(h > 0.0)) {
          ctx.fail(where, "step must be > 0");
          return g;
        }
        n = static_cast<std::size_t>(std::floor((b - a) / h * (1 + 1e-12))) + 1;
      } else {
        ctx.fail(where, "range needs count or step");
        return g;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double x = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        if (keep(x)) {
          g.values.push_back(x);
        } else {
          ++g.skipped;
        }
      }
      if (g.values.empty()) ctx.fail(where, "range is empty after removing excluded points");
      return g;
    }
    if (v.is_array()) {
      if (v.empty()) ctx.fail(where, "list is empty");
      for (const json& x : v) g.values.push_back(scalar(x));
    } else {
      g.values.push_back(scalar(v));
    }
  } catch (const std::exception& e) {
    ctx.fail(where, e.what());
  }
  return g;
}

bool on_forbidden_line(double theta) { return std::abs(std::cos(theta)) < kCosFloor; }

json resolve_profile(Ctx& ctx, const json& ref, const std::string& base_dir) {
  if (ref.is_object()) return ref;
  if (!ref.is_string()) {
    ctx.fail("profile", "must be an object, a catalog name or a path");
    return {};
  }
  const std::string s = ref.get<std::string>();
  if (auto it = catalog().find(s); it != catalog().end()) return it->second;
  std::filesystem::path p(s);
  if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
  std::ifstream in(p);
  if (!in) {
    ctx.fail("profile", "unknown catalog name or unreadable file '" + s + "'");
    return {};
  }
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    ctx.fail("profile", std::string("invalid JSON in '") + s + "': " + e.what());
    return {};
  }
}

Command command_from(const std::string& s, bool& ok) {
  ok = true;
  if (s == "amp2d") return Command::amp2d;
  if (s == "amp3d") return Command::amp3d;
  if (s == "exact2d") return Command::exact2d;
  if (s == "kernels-check") return Command::kernels_check;
  if (s == "cloak") return Command::cloak;
  if (s == "dyson1d") return Command::dyson1d;
  if (s == "sweep") return Command::sweep;
  ok = false;
  return Command::sweep;
}

void check_profile(Ctx& ctx, RunConfig& c) {
  if (c.profile.is_null()) return;
  try {
    if (c.command == Command::dyson1d) {
      (void)profile_1d_from_json(c.profile);
    } else if (c.dimension == 3) {
      (void)profile_3d_from_json(c.profile);
    } else {
      (void)profile_2d_from_json(c.profile);
    }
  } catch (const std::exception& e) {
    ctx.fail("profile", e.what());
  }
}

void parse_methods(Ctx& ctx, const json& j, RunConfig& c) {
  std::vector<std::string> allowed;
  if (c.dimension == 3) {
    allowed = {"order1", "order2", "closed_form"};
    c.methods = {"order1", "order2"};
  } else {
    allowed = {"order1", "order2", "exact", "kernels"};
    c.methods = c.command == Command::exact2d ? std::vector<std::string>{"exact"}
                                              : std::vector<std::string>{"order1", "order2"};
  }
  if (j.contains("methods")) {
    if (!j.at("methods").is_array() || j.at("methods").empty()) {
      ctx.fail("methods", "must be a nonempty array");
      return;
    }
    c.methods.clear();
    for (const json& m : j.at("methods")) {
      const std::string s = m.is_string() ? m.get<std::string>() : std::string("?");
      if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
        ctx.fail("methods", "unknown method '" + s + "' for this command");
      } else {
        c.methods.push_back(s);
      }
    }
  }
  const bool wants_exact = std::find(c.methods.begin(), c.methods.end(), "exact") != c.methods.end();
  const bool is_ex1 = c.profile.is_object() && c.profile.value("type", "") == "ex1";
  if (wants_exact && !is_ex1 && !c.alpha) {
    ctx.fail("methods", "exact needs an ex1 profile or physics.alpha");
  }
  const bool wants_closed =
      std::find(c.methods.begin(), c.methods.end(), "closed_form") != c.methods.end();
  if (wants_closed && !(c.profile.is_object() && c.profile.value("type", "") == "gaussian3d")) {
    ctx.fail("methods", "closed_form needs a gaussian3d profile");
  }
}

}  // namespace

const char* command_name(Command c) noexcept {
  switch (c) {
    case Command::amp2d: return "amp2d";
    case Command::amp3d: return "amp3d";
    case Command::exact2d: return "exact2d";
    case Command::kernels_check: return "kernels-check";
    case Command::cloak: return "cloak";
    case Command::dyson1d: return "dyson1d";
    case Command::sweep: return "sweep";
  }
  return "?";
}

double parse_angle(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw ValidationError("angle must be a number or a string such as \"pi/3\"");
  static const std::regex re(R"(^\s*([+-]?)\s*([0-9]*\.?[0-9]*(?:[eE][+-]?[0-9]+)?)\s*\*?\s*(pi)?\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
  const std::string s = v.get<std::string>();
  std::smatch m;
  if (!std::regex_match(s, m, re) || (m[2].length() == 0 && !m[3].matched)) {
    throw ValidationError("cannot parse angle '" + s + "'");
  }
  double x = m[2].length() > 0 ? std::stod(m[2].str()) : 1.0;
  if (m[3].matched) x *= kPi;
  if (m[4].matched) x /= std::stod(m[4].str());
  return m[1].str() == "-" ? -x : x;
}

RunConfig parse_config(const json& j, const std::string& base_dir,
                       std::vector<std::string>& errors) {
  Ctx ctx{errors};
  RunConfig c;
  if (!j.is_object()) {
    ctx.fail("config", "must be a JSON object");
    return c;
  }
  if (!j.contains("command") || !j.at("command").is_string()) {
    ctx.fail("command", "missing");
  } else {
    bool ok = false;
    c.command = command_from(j.at("command").get<std::string>(), ok);
    if (!ok) ctx.fail("command", "unknown command '" + j.at("command").get<std::string>() + "'");
  }
  if (j.contains("label") && j.at("label").is_string()) c.label = j.at("label").get<std::string>();

  c.dimension = c.command == Command::amp3d ? 3 : 2;
  if (c.command == Command::sweep && j.contains("dimension")) {
    const json& d = j.at("dimension");
    if (!d.is_number_integer() || (d.get<int>() != 2 && d.get<int>() != 3)) {
      ctx.fail("dimension", "must be 2 or 3");
    } else {
      c.dimension = d.get<int>();
    }
  }

  if (!j.contains("profile")) {
    ctx.fail("profile", "missing");
  } else {
    c.profile = resolve_profile(ctx, j.at("profile"), base_dir);
  }

  const json physics = j.value("physics", json::object());
  if (!physics.is_object()) ctx.fail("physics", "must be an object");
  const std::string pw = "physics";
  if (auto ell = number(ctx, physics, "ell", pw)) {
    c.ell = *ell;
    if (!(c.ell > 0.0)) ctx.fail("physics.ell", "must be > 0");
  } else if (!physics.contains("ell")) {
    ctx.fail("physics.ell", "missing");
  }
  auto positive = [](double x) { return x > 0.0; };
  if (physics.contains("kl") == physics.contains("k")) {
    ctx.fail("physics", "give exactly one of kl or k");
  } else if (physics.contains("kl")) {
    c.kl = grid(ctx, physics.at("kl"), "physics.kl", false, positive).values;
  } else {
    for (double k : grid(ctx, physics.at("k"), "physics.k", false, positive).values) {
      c.kl.push_back(k * c.ell);
    }
  }
  for (double v : c.kl) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      ctx.fail("physics.kl", "k ell must be finite and > 0");
      break;
    }
  }
  if (auto a = number(ctx, physics, "alpha", pw)) c.alpha = *a;
  c.theta0 = angle(ctx, physics, "theta0", pw).value_or(0.0);
  c.phi0 = angle(ctx, physics, "phi0", pw).value_or(0.0);
  c.phi = angle(ctx, physics, "phi", pw).value_or(0.0);
  const bool uses_angles = c.command != Command::cloak && c.command != Command::dyson1d;
  if (uses_angles) {
    if (on_forbidden_line(c.theta0)) ctx.fail("physics.theta0", "cos(theta0) must not vanish");
    if (!physics.contains("theta")) {
      ctx.fail("physics.theta", "missing");
    } else {
      const bool range = physics.at("theta").is_object();
      Grid g = grid(ctx, physics.at("theta"), "physics.theta", true,
                    [](double t) { return !on_forbidden_line(t); });
      c.theta = std::move(g.values);
      c.skipped = g.skipped;
      if (!range) {
        for (double t : c.theta) {
          if (on_forbidden_line(t)) {
            ctx.fail("physics.theta", "detector angle " + std::to_string(t) +
                                          " lies on the excluded cos(theta) = 0 line");
          }
        }
      }
    }
  }

  if (j.contains("quantity")) {
    c.quantity = j.at("quantity").is_string() ? j.at("quantity").get<std::string>() : "?";
    if (c.quantity != "amplitude" && c.quantity != "normalized_cross_section") {
      ctx.fail("quantity", "must be amplitude or normalized_cross_section");
    } else if (c.quantity == "normalized_cross_section" && c.dimension != 3) {
      ctx.fail("quantity", "normalized_cross_section is defined for 3D runs");
    }
  }

  const json numerics = j.value("numerics", json::object());
  const std::string nw = "numerics";
  if (auto v = number(ctx, numerics, "rel_tol", nw)) c.quadrature.rel_tol = *v;
  if (auto v = number(ctx, numerics, "abs_tol", nw)) c.quadrature.abs_tol = *v;
  if (auto v = number(ctx, numerics, "max_subdivisions", nw)) {
    c.quadrature.max_subdivisions = static_cast<int>(*v);
  }
  try {
    c.quadrature.validate();
  } catch (const std::exception& e) {
    ctx.fail("numerics", e.what());
  }
  if (auto v = number(ctx, numerics, "nodes", nw)) {
    if (!(*v >= 2.0)) {
      ctx.fail("numerics.nodes", "must be >= 2");
    } else {
      c.nodes = static_cast<std::size_t>(*v);
    }
  }

  if (c.command == Command::cloak) {
    const json cl = j.value("cloak", json::object());
    const std::string cw = "cloak";
    c.cloak.mode = cl.value("mode", std::string("moments"));
    if (c.cloak.mode != "moments" && c.cloak.mode != "profiled") {
      ctx.fail("cloak.mode", "must be moments or profiled");
    }
    try {
      c.cloak.z1 = complex_from_json(cl.at("z1"));
      c.cloak.z2 = complex_from_json(cl.at("z2"));
      if (c.cloak.z1 == c.cloak.z2) ctx.fail("cloak", "z1 and z2 must differ");
      if (c.cloak.z1 == Complex{}) ctx.fail("cloak.z1", "must be nonzero");
    } catch (const std::exception& e) {
      ctx.fail("cloak", std::string("z1/z2: ") + e.what());
    }
    if (c.cloak.mode == "profiled") {
      c.cloak.z0 = number(ctx, cl, "z0", cw).value_or(-1.0);
      c.cloak.g_length = number(ctx, cl, "g_L", cw).value_or(-1.0);
      if (!(c.cloak.z0 >= 0.0)) ctx.fail("cloak.z0", "must be given and >= 0");
      if (!(c.cloak.g_length > 0.0)) ctx.fail("cloak.g_L", "must be given and > 0");
    }
    if (!cl.contains("y")) {
      ctx.fail("cloak.y", "missing");
    } else {
      c.cloak.y = grid(ctx, cl.at("y"), "cloak.y", false, [](double) { return true; }).values;
    }
    c.cloak.verify = cl.value("verify", true);
    if (c.kl.size() > 1) ctx.fail("physics", "cloak runs take a single k");
  }

  if (c.command == Command::dyson1d) {
    const json dy = j.value("dyson", json::object());
    c.dyson.mode = dy.value("mode", std::string("series"));
    if (c.dyson.mode != "series" && c.dyson.mode != "stepping") {
      ctx.fail("dyson.mode", "must be series or stepping");
    }
    c.dyson.max_terms = dy.value("max_terms", 40);
    c.dyson.tol = dy.value("tol", 1e-14);
    if (c.dyson.max_terms < 1) ctx.fail("dyson.max_terms", "must be >= 1");
  }

  if (c.command != Command::cloak && c.command != Command::dyson1d &&
      c.command != Command::kernels_check) {
    parse_methods(ctx, j, c);
  }
  check_profile(ctx, c);

  const json output = j.value("output", json::object());
  c.out_path = output.value("path", std::string());
  const std::string fmt = output.value("format", std::string("csv"));
  if (fmt == "csv") {
    c.format = Format::csv;
  } else if (fmt == "json") {
    c.format = Format::json;
  } else {
    ctx.fail("output.format", "must be csv or json");
  }
  return c;
}

std::vector<RunConfig> parse_cases(const json& j, const std::string& base_dir,
                                   std::vector<std::string>& errors) {
  std::vector<RunConfig> out;
  if (!j.is_object() || !j.contains("cases")) {
    out.push_back(parse_config(j, base_dir, errors));
    return out;
  }
  const json& cases = j.at("cases");
  if (!cases.is_array() || cases.empty()) {
    errors.push_back("cases: must be a nonempty array");
    return out;
  }
  json base = j;
  base.erase("cases");
  for (std::size_t i = 0; i < cases.size(); ++i) {
    json merged = base;
    merged.merge_patch(cases[i]);
    std::vector<std::string> local;
    RunConfig c = parse_config(merged, base_dir, local);
    if (c.label.empty()) c.label = "case" + std::to_string(i);
    for (const std::string& e : local) errors.push_back("cases[" + std::to_string(i) + "]." + e);
    out.push_back(std::move(c));
  }
  return out;
}

nlohmann::json preset_document(const std::string& name) {
  const auto& table = presets();
  const auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& [n, _] : table) known += (known.empty() ? "" : ", ") + n;
    throw ValidationError("unknown preset '" + name + "' (known: " + known + ")");
  }
  return json::parse(it->second);
}

}  // namespace lfs::cli
