#include <cmath>
#include <string>

#include "lfs/error.hpp"
#include "lfs/profiles.hpp"

namespace lfs {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

double real_field(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw ValidationError(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

std::vector<Complex> complex_list(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ValidationError(where + ": expected an array");
  std::vector<Complex> out;
  out.reserve(arr.size());
  for (const json& v : arr) out.push_back(complex_from_json(v));
  return out;
}

}  // namespace

XFactor x_factor_from_json(const json& j) {
  const std::string kind = require(j, "kind", "x factor").get<std::string>();
  if (kind == "constant") return x_constant(complex_from_json(require(j, "value", "x factor")));
  if (kind == "polynomial") {
    return x_polynomial(complex_list(require(j, "coeffs", "x factor"), "x factor coeffs"));
  }
  if (kind == "layers") {
    const json& e = require(j, "edges", "x factor");
    if (!e.is_array()) throw ValidationError("x factor: edges must be an array");
    return x_layers(e.get<std::vector<double>>(),
                    complex_list(require(j, "values", "x factor"), "x factor values"));
  }
  throw ValidationError("x factor: unknown kind '" + kind + "'");
}

namespace {

YEnvelope y_envelope_from_json(const json& j) {
  const std::string kind = require(j, "kind", "y envelope").get<std::string>();
  if (kind == "gaussian") return y_gaussian(real_field(j, "L", "y envelope"));
  if (kind == "ex1") {
    return y_ex1(real_field(j, "alpha", "y envelope"), real_field(j, "L", "y envelope"));
  }
  throw ValidationError("y envelope: unknown kind '" + kind + "'");
}

template <class P>
void apply_sampling_overrides(P& w, const json& j) {
  if (j.contains("decay_radius")) {
    const double r = j.at("decay_radius").get<double>();
    if (!(r > 0.0)) throw ValidationError("profile: decay_radius must be > 0");
    w.decay_radius = r;
    w.transform.truncation_radius = r;
  }
  if (j.contains("sample_count")) {
    w.transform.sample_count = j.at("sample_count").get<std::size_t>();
  }
  w.transform.validate();
}

}  // namespace

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ValidationError("expected a number or a [re, im] pair");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Profile2D profile_2d_from_json(const json& j) {
  const std::string type = require(j, "type", "profile").get<std::string>();
  const json params = j.value("params", json::object());
  Profile2D w;
  if (type == "zero") {
    w = zero_profile_2d();
  } else if (type == "ex1") {
    w = ex1_profile(complex_from_json(require(params, "z", "ex1")),
                    real_field(params, "alpha", "ex1"), real_field(params, "L", "ex1"));
  } else if (type == "gaussian_y") {
    w = gaussian_y_profile(complex_from_json(require(params, "z0", "gaussian_y")),
                           real_field(params, "L", "gaussian_y"));
  } else if (type == "separable") {
    w = separable_profile(x_factor_from_json(require(params, "x", "separable")),
                          y_envelope_from_json(require(params, "y", "separable")));
  } else if (type == "sampled") {
    w = sampled_profile(require(params, "nx", "sampled").get<std::size_t>(),
                        require(params, "ny", "sampled").get<std::size_t>(),
                        real_field(params, "y_extent", "sampled"),
                        complex_list(require(params, "values", "sampled"), "sampled values"));
  } else {
    throw ValidationError("unknown 2D profile type '" + type + "'");
  }
  apply_sampling_overrides(w, j);
  return w;
}

Profile3D profile_3d_from_json(const json& j) {
  const std::string type = require(j, "type", "profile").get<std::string>();
  const json params = j.value("params", json::object());
  Profile3D w;
  if (type == "zero") {
    w = zero_profile_3d();
  } else if (type == "gaussian3d") {
    w = gaussian_profile_3d(complex_from_json(require(params, "z", "gaussian3d")),
                            real_field(params, "L", "gaussian3d"));
  } else {
    throw ValidationError("unknown 3D profile type '" + type + "'");
  }
  apply_sampling_overrides(w, j);
  return w;
}

}  // namespace lfs
