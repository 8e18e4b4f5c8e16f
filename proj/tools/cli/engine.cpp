#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

#include "cli/cli.hpp"
#include "lfs/amp2d.hpp"
#include "lfs/amp3d.hpp"
#include "lfs/cloak.hpp"
#include "lfs/dyson1d.hpp"
#include "lfs/error.hpp"
#include "lfs/exactborn.hpp"
#include "lfs/kernels.hpp"

namespace lfs::cli {
namespace {

using Rows = std::vector<std::vector<Cell>>;

// Runs task(i) for i < n on up to `threads` workers. Results are written by
// index, so the caller's output order never depends on scheduling; the
// exception of the lowest failing index is rethrown.
template <class Task>
void parallel_for(std::size_t n, unsigned threads, Task task) {
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

const char* order_tag(const std::string& method) {
  if (method == "order1") return "1";
  if (method == "exact") return "exact";
  return "2";
}

std::vector<Cell> amplitude_row(double kl, double theta, Complex f, const std::string& method) {
  return {kl, theta, f.real(), f.imag(), std::norm(f), std::string(order_tag(method)), method};
}

nlohmann::json base_meta(const RunConfig& c) {
  nlohmann::json m;
  m["command"] = command_name(c.command);
  m["profile"] = c.profile;
  m["ell"] = c.ell;
  if (c.command != Command::cloak && c.command != Command::dyson1d) {
    m["theta0"] = c.theta0;
    if (c.dimension == 3) {
      m["phi0"] = c.phi0;
      m["phi"] = c.phi;
    }
  }
  if (c.skipped) m["skipped_forbidden_angles"] = c.skipped;
  return m;
}

// Rows are grouped by theta, then k ell.
Table sweep_2d(const RunConfig& c, unsigned threads) {
  const Profile2D profile = profile_2d_from_json(c.profile);
  const bool is_ex1 = c.profile.value("type", "") == "ex1";
  std::optional<Ex1Params> ex1;
  if (is_ex1) {
    const auto& p = c.profile.at("params");
    ex1 = Ex1Params{complex_from_json(p.at("z")), p.at("alpha").get<double>(), p.at("L").get<double>()};
  }
  const double alpha = c.alpha ? *c.alpha : (ex1 ? ex1->alpha : 0.0);
  std::vector<std::vector<Rows>> per_k(c.kl.size(), std::vector<Rows>(c.theta.size()));
  parallel_for(c.kl.size(), threads, [&](std::size_t ik) {
    const ScatteringConfig2D cfg{c.kl[ik] / c.ell, c.ell, c.theta0};
    cfg.validate();
    const MomentSet2D m = amplitude_moments(profile, cfg);
    std::unique_ptr<BornExactProfile> born;
    for (std::size_t it = 0; it < c.theta.size(); ++it) {
      const double theta = c.theta[it];
      for (const std::string& method : c.methods) {
        Complex f;
        if (method == "order1" || method == "order2") {
          f = amplitude_2d(m, cfg, theta, method == "order1" ? 1 : 2, c.quadrature,
                           profile.momentum_kinks)
                  .truncated;
        } else if (method == "kernels") {
          f = amplitude_from_kernels(profile, cfg, theta, 2, c.nodes);
        } else {
          if (cfg.k > alpha) continue;  // the exact form holds for k <= alpha only
          if (ex1) {
            f = ex1_exact(*ex1, cfg, theta);
          } else {
            if (!born) born = std::make_unique<BornExactProfile>(profile, alpha, cfg.k);
            f = exact_amplitude(*born, cfg, theta, c.quadrature);
          }
        }
        per_k[ik][it].push_back(amplitude_row(c.kl[ik], theta, f, method));
      }
    }
  });
  Table t;
  t.columns = {"kl", "theta", "re_f", "im_f", "abs2_f", "order", "method"};
  t.meta = base_meta(c);
  t.meta["methods"] = c.methods;
  // Regroup: theta outer, k ell inner, methods innermost.
  for (std::size_t it = 0; it < c.theta.size(); ++it) {
    for (std::size_t ik = 0; ik < c.kl.size(); ++ik) {
      for (const auto& row : per_k[ik][it]) t.rows.push_back(row);
    }
  }
  return t;
}

Table sweep_3d(const RunConfig& c, unsigned threads) {
  const Profile3D profile = profile_3d_from_json(c.profile);
  const bool normalized = c.quantity == "normalized_cross_section";
  std::vector<std::vector<Rows>> cells(c.kl.size(), std::vector<Rows>(c.theta.size()));
  parallel_for(c.kl.size() * c.theta.size(), threads, [&](std::size_t idx) {
    const std::size_t ik = idx / c.theta.size(), it = idx % c.theta.size();
    const ScatteringConfig3D cfg{c.kl[ik] / c.ell, c.ell, c.theta0, c.phi0};
    cfg.validate();
    const MomentSet3D m = amplitude_moments_3d(profile, cfg);
    const Direction3D dir{c.theta[it], c.phi};
    const Direction3D forward{0.0, 0.0};
    for (const std::string& method : c.methods) {
      Complex f;
      double sigma = 0.0;
      if (method == "closed_form") {
        const auto& p = c.profile.at("params");
        const Complex z = complex_from_json(p.at("z"));
        const double L = p.at("L").get<double>();
        f = gaussian_amplitude_3d(z, L, cfg, dir, 2, c.quadrature).truncated;
        if (normalized) {
          sigma = std::norm(f) /
                  std::norm(gaussian_amplitude_3d(z, L, cfg, forward, 2, c.quadrature).truncated);
        }
      } else {
        const int order = method == "order1" ? 1 : 2;
        f = amplitude_3d(m, cfg, dir, order, c.quadrature).truncated;
        if (normalized) sigma = normalized_cross_section(m, cfg, dir, order, c.quadrature);
      }
      std::vector<Cell> row = amplitude_row(c.kl[ik], c.theta[it], f, method);
      if (normalized) row.insert(row.begin() + 5, Cell{sigma});
      cells[ik][it].push_back(std::move(row));
    }
  });
  Table t;
  t.columns = {"kl", "theta", "re_f", "im_f", "abs2_f", "order", "method"};
  if (normalized) t.columns.insert(t.columns.begin() + 5, "sigma_hat");
  t.meta = base_meta(c);
  t.meta["methods"] = c.methods;
  t.meta["quantity"] = c.quantity;
  for (std::size_t it = 0; it < c.theta.size(); ++it) {
    for (std::size_t ik = 0; ik < c.kl.size(); ++ik) {
      for (auto& row : cells[ik][it]) t.rows.push_back(row);
    }
  }
  return t;
}

Table kernels_check(const RunConfig& c, unsigned threads) {
  const Profile2D profile = profile_2d_from_json(c.profile);
  std::vector<Rows> cells(c.kl.size() * c.theta.size());
  parallel_for(cells.size(), threads, [&](std::size_t idx) {
    const std::size_t ik = idx / c.theta.size(), it = idx % c.theta.size();
    const ScatteringConfig2D cfg{c.kl[ik] / c.ell, c.ell, c.theta0};
    cfg.validate();
    const double theta = c.theta[it];
    const Complex direct = amplitude_2d(profile, cfg, theta, 2, c.quadrature).truncated;
    const Complex viak = amplitude_from_kernels(profile, cfg, theta, 2, c.nodes);
    const double scale = std::abs(direct);
    const double diff = scale > 0.0 ? std::abs(viak - direct) / scale : std::abs(viak - direct);
    cells[idx].push_back({c.kl[ik], theta, direct.real(), direct.imag(), viak.real(), viak.imag(), diff});
  });
  Table t;
  t.columns = {"kl", "theta", "re_direct", "im_direct", "re_kernels", "im_kernels", "rel_diff"};
  t.meta = base_meta(c);
  t.meta["nodes"] = c.nodes;
  double worst = 0.0;
  for (std::size_t it = 0; it < c.theta.size(); ++it) {
    for (std::size_t ik = 0; ik < c.kl.size(); ++ik) {
      for (auto& row : cells[ik * c.theta.size() + it]) {
        worst = std::max(worst, std::get<double>(row.back()));
        t.rows.push_back(row);
      }
    }
  }
  t.meta["max_rel_diff"] = worst;
  return t;
}

Table cloak(const RunConfig& c) {
  const double k = c.kl.front() / c.ell;
  const CoatingMaterials mat{c.cloak.z1, c.cloak.z2};
  Profile2D slab = profile_2d_from_json(c.profile);
  LayerDesigner designer;
  if (c.cloak.mode == "profiled") {
    const double z0 = c.cloak.z0, L = c.cloak.g_length, ell = c.ell;
    auto g = [L](double y) { return std::exp(-y * y / (2.0 * L * L)); };
    designer = [g, z0, mat, ell](double y) { return design_profiled(g, z0, mat, ell, y); };
    slab = gaussian_y_profile(z0, L);
  } else {
    const SlabMomentPair m = slab_moments(slab, k, c.quadrature);
    const double ell = c.ell;
    designer = [m, mat, ell](double y) { return design_bilayer(m, mat, ell, y); };
  }
  const CloakDesign d = design_cloak(designer, mat, c.ell, k, c.cloak.y);
  Table t;
  t.columns = {"y", "ell1", "ell2", "feasible"};
  for (std::size_t i = 0; i < d.y_grid.size(); ++i) {
    t.rows.push_back({d.y_grid[i], d.samples[i].ell1, d.samples[i].ell2,
                      static_cast<long long>(d.samples[i].feasible ? 1 : 0)});
  }
  t.meta = base_meta(c);
  t.meta["geometry"] = geometry_header(d);
  if (c.cloak.verify && d.geometry.feasible) {
    const Profile2D coated = coated_profile(slab, c.ell, d.geometry, mat.z1, mat.z2, d.y_grid);
    std::vector<AnglePair> angles;
    // Offset grid; (i + 1/2) / 12 never lands on cos = 0.
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 12; ++j) {
        angles.push_back({2 * kPi * (i + 0.5) / 12, 2 * kPi * (j + 0.5) / 12});
      }
    }
    const InvisibilityReport r =
        verify_invisibility(coated, d.geometry.ell_c, slab, c.ell, k, d.y_grid, angles, c.quadrature);
    t.meta["verification"] = {{"residual_m0", r.residual_m0}, {"residual_m1", r.residual_m1},
                              {"max_abs_w", r.max_abs_w},     {"coated_f1", r.coated_f1},
                              {"coated_f2", r.coated_f2},     {"bare_f1", r.bare_f1},
                              {"bare_f2", r.bare_f2}};
  }
  return t;
}

Table dyson(const RunConfig& c, unsigned threads) {
  const Profile1D w = profile_1d_from_json(c.profile);
  std::vector<std::vector<Cell>> rows(c.kl.size());
  parallel_for(c.kl.size(), threads, [&](std::size_t i) {
    const double k = c.kl[i] / c.ell;
    TransferMatrix1D m;
    long long terms = 0;
    if (c.dyson.mode == "series") {
      DysonOptions o;
      o.max_terms = c.dyson.max_terms;
      o.tol = c.dyson.tol;
      const DysonSeries s = dyson_series_1d(w, k, c.ell, o);
      if (!s.converged) {
        throw NumericalError("dyson1d: series not converged at kl=" + std::to_string(c.kl[i]),
                             s.matrix.m22, s.term_norms.back());
      }
      m = s.matrix;
      terms = s.terms_used;
    } else {
      m = transfer_matrix_1d_stepping(w, k, c.ell);
    }
    const Scattering1D s = scattering_1d(m);
    rows[i] = {c.kl[i], s.r_left.real(), s.r_left.imag(), s.r_right.real(), s.r_right.imag(),
               s.t.real(), s.t.imag(), std::abs(m.det() - 1.0), terms,
               static_cast<long long>(s.near_singular ? 1 : 0)};
  });
  Table t;
  t.columns = {"kl", "re_r_left", "im_r_left", "re_r_right", "im_r_right", "re_t", "im_t",
               "det_error", "terms", "near_singular"};
  t.rows = std::move(rows);
  t.meta = base_meta(c);
  t.meta["mode"] = c.dyson.mode;
  return t;
}

}  // namespace

Table execute(const RunConfig& config, unsigned threads) {
  switch (config.command) {
    case Command::amp2d:
    case Command::exact2d:
      return sweep_2d(config, threads);
    case Command::amp3d:
      return sweep_3d(config, threads);
    case Command::sweep:
      return config.dimension == 3 ? sweep_3d(config, threads) : sweep_2d(config, threads);
    case Command::kernels_check:
      return kernels_check(config, threads);
    case Command::cloak:
      return cloak(config);
    case Command::dyson1d:
      return dyson(config, threads);
  }
  throw ValidationError("unknown command");
}

Table run_document(const nlohmann::json& doc, const std::string& base_dir, unsigned threads,
                   std::optional<double> rel_tol) {
  nlohmann::json d = doc;
  if (rel_tol && d.is_object()) d["numerics"]["rel_tol"] = *rel_tol;
  std::vector<std::string> errors;
  const std::vector<RunConfig> configs = parse_cases(d, base_dir, errors);
  if (!errors.empty()) {
    std::string msg;
    for (const std::string& e : errors) msg += (msg.empty() ? "" : "; ") + e;
    throw ValidationError(msg);
  }
  std::vector<Table> parts;
  std::vector<std::string> labels;
  for (const RunConfig& c : configs) {
    parts.push_back(execute(c, threads));
    labels.push_back(c.label);
  }
  return merge_tables(parts, labels);
}

}  // namespace lfs::cli
