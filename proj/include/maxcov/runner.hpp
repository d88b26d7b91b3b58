#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "maxcov/csv.hpp"
#include "maxcov/maxwell.hpp"
#include "maxcov/quadrature.hpp"
#include "maxcov/rng.hpp"
#include "maxcov/scenario.hpp"

namespace maxcov {

struct RunOptions {
  int frame = -1;  // check: which frame to report, -1 means all four
  std::optional<int> points;
  std::optional<std::uint64_t> seed;
  bool oracle = false;  // covariantize: also emit deltas against direct d
  std::optional<double> tol;
};

struct RunResult {
  std::vector<CsvRow> rows;
  bool pass = true;
};

namespace runner_detail {

template <class Field>
constexpr double backend_tolerance() {
  if constexpr (std::is_same_v<Field, Polynomial>)
    return 0.0;
  else
    return 1e-9;
}

constexpr double kQuadratureTolerance = 1e-10;

inline std::string render(const Rational& v) { return v.str(); }
inline std::string render(double v) { return format_double(v); }

inline bool within(const Rational& v, double tol) {
  if (tol == 0.0) return v.is_zero();
  return v.abs().to_double() <= tol;
}
inline bool within(double v, double tol) { return (v < 0 ? -v : v) <= tol; }

inline std::vector<Point> sample_points(const ScenarioConfig& cfg, const RunOptions& opt) {
  const int count = opt.points.value_or(cfg.sample_count);
  if (count < 1) throw ScenarioError("point count must be positive");
  SplitMix64 rng(opt.seed.value_or(cfg.seed));
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(random_point(rng));
  return pts;
}

template <class V>
void push_row(RunResult& out, int frame, int point_index, const Point& p,
              const std::string& quantity, const std::string& component, const V& value,
              bool checked, double tol) {
  CsvRow row;
  row.frame = frame;
  row.point_index = point_index;
  row.coords = format_point(p);
  row.quantity = quantity;
  row.component = component;
  row.value = render(value);
  row.checked = checked;
  row.ok = !checked || within(value, tol);
  if (!row.ok) out.pass = false;
  out.rows.push_back(std::move(row));
}

template <class Field>
RunResult run_check_impl(const ScenarioConfig& cfg, const RunOptions& opt) {
  if (opt.frame < -1 || opt.frame > 3) throw ScenarioError("frame must be in 0..3");
  const auto family = make_frame_family<Field>(cfg.beta);
  const auto state = build_state<Field>(cfg);
  const auto points = sample_points(cfg, opt);
  const double tol = opt.tol.value_or(backend_tolerance<Field>());

  RunResult out;
  for (int mu = 0; mu < 4; ++mu) {
    if (opt.frame != -1 && opt.frame != mu) continue;
    const auto [magnetic, gauss] = constraint_residuals(family.frame(mu), state);
    const std::pair<const char*, const DifferentialForm<Field>*> residuals[] = {
        {"magnetic_residual", &magnetic}, {"gauss_residual", &gauss}};
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Point& p = points[i];
      for (const auto& [quantity, form] : residuals)
        for (std::uint8_t m : mask::of_grade(3))
          push_row(out, mu, static_cast<int>(i), p, quantity, mask::to_string(m),
                   form->coefficient(m).value(p), true, tol);
    }
  }
  return out;
}

template <class Field>
RunResult run_covariantize_impl(const ScenarioConfig& cfg, const RunOptions& opt) {
  using V = typename Field::value_type;
  const auto family = make_frame_family<Field>(cfg.beta);
  const auto state = build_state<Field>(cfg);
  const auto points = sample_points(cfg, opt);
  const double tol = opt.tol.value_or(backend_tolerance<Field>());

  const auto reconstructed = covariantize_state(family, state, points);
  const auto dF = exterior_derivative(state.F);
  const auto dG_minus_J = exterior_derivative(state.G) - state.J;

  // Component order "012","013","023","123" maps onto the reconstruction
  // slots (Γ,X₁,X₂), (Γ,X₁,X₃), (Γ,X₂,X₃), (X₁,X₂,X₃).
  auto slot_value = [](const Reconstructed3Form<V>& rec, std::uint8_t m) {
    switch (m) {
      case 0b0111: return rec.par_values[2];   // "012"
      case 0b1011: return rec.par_values[1];   // "013"
      case 0b1101: return rec.par_values[0];   // "023"
      default: return rec.perp_value;          // "123"
    }
  };

  RunResult out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    const auto& [rec_dF, rec_dGJ] = reconstructed[i];
    for (std::uint8_t m : mask::of_grade(3)) {
      push_row(out, 0, static_cast<int>(i), p, "dF_residual", mask::to_string(m),
               slot_value(rec_dF, m), true, tol);
    }
    for (std::uint8_t m : mask::of_grade(3)) {
      push_row(out, 0, static_cast<int>(i), p, "dG_minus_J_residual", mask::to_string(m),
               slot_value(rec_dGJ, m), true, tol);
    }
    if (opt.oracle) {
      for (std::uint8_t m : mask::of_grade(3)) {
        const V delta = slot_value(rec_dF, m) - dF.coefficient(m).value(p);
        push_row(out, 0, static_cast<int>(i), p, "dF_oracle_delta", mask::to_string(m), delta,
                 true, tol);
      }
      for (std::uint8_t m : mask::of_grade(3)) {
        const V delta = slot_value(rec_dGJ, m) - dG_minus_J.coefficient(m).value(p);
        push_row(out, 0, static_cast<int>(i), p, "dG_minus_J_oracle_delta", mask::to_string(m),
                 delta, true, tol);
      }
    }
  }
  return out;
}

template <class Field>
RunResult run_report_impl(const ScenarioConfig& cfg, const RunOptions& opt) {
  using V = typename Field::value_type;
  const auto family = make_frame_family<Field>(cfg.beta);
  const auto state = build_state<Field>(cfg);
  const auto points = sample_points(cfg, opt);
  const double tol = opt.tol.value_or(backend_tolerance<Field>());
  const double quad_tol = opt.tol.value_or(runner_detail::kQuadratureTolerance);

  const auto inv = invariants(state);
  const bool check_gg =
      std::find(cfg.checks.begin(), cfg.checks.end(), "GG_zero") != cfg.checks.end();
  const bool check_gstarg =
      std::find(cfg.checks.begin(), cfg.checks.end(), "GstarG_nonneg") != cfg.checks.end();

  RunResult out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    const auto at = [&](const DifferentialForm<Field>& w) {
      return w.coefficient(mask::kVolume).value(p);
    };
    push_row(out, 0, static_cast<int>(i), p, "invariant_FF", "0123", at(inv.FF), false, tol);
    push_row(out, 0, static_cast<int>(i), p, "invariant_FstarF", "0123", at(inv.F_starF), false,
             tol);
    push_row(out, 0, static_cast<int>(i), p, "invariant_FG", "0123", at(inv.FG), false, tol);
    push_row(out, 0, static_cast<int>(i), p, "invariant_GG", "0123", at(inv.GG), false, tol);
    push_row(out, 0, static_cast<int>(i), p, "invariant_GstarG", "0123", at(inv.G_starG), false,
             tol);
    if (check_gg)
      push_row(out, 0, static_cast<int>(i), p, "GG_zero_delta", "0123", at(inv.GG), true, tol);
    if (check_gstarg) {
      const V v = at(inv.G_starG);
      const V defect = v < V(0) ? v : V(0);
      push_row(out, 0, static_cast<int>(i), p, "GstarG_nonneg_delta", "0123", defect, true, tol);
    }
  }

  // Stokes consistency on the fiducial t=0 leaf: for any smooth 2-form the
  // outward box flux equals the volume integral of its leaf differential.
  const auto& fid = family.frame(0);
  const LeafBox box;
  const auto stokes_row = [&](const char* name, const DifferentialForm<Field>& spacetime_2form) {
    const auto leaf = leaf_pullback(fid, Rational::zero(), decompose(fid, spacetime_2form).first);
    const double closed = box_boundary_flux(leaf, box, cfg.quadrature_order);
    const double volume = volume_integral(exterior_derivative(leaf), box, cfg.quadrature_order);
    push_row(out, 0, 0, Point(), name, "unit_box", closed - volume, true, quad_tol);
  };
  stokes_row("stokes_B_delta", state.F);
  stokes_row("stokes_D_delta", state.G);
  return out;
}

}  // namespace runner_detail

inline RunResult run_check(const ScenarioConfig& cfg, const RunOptions& opt = {}) {
  return cfg.backend == "jet" ? runner_detail::run_check_impl<JetField>(cfg, opt)
                              : runner_detail::run_check_impl<Polynomial>(cfg, opt);
}

inline RunResult run_covariantize(const ScenarioConfig& cfg, const RunOptions& opt = {}) {
  return cfg.backend == "jet" ? runner_detail::run_covariantize_impl<JetField>(cfg, opt)
                              : runner_detail::run_covariantize_impl<Polynomial>(cfg, opt);
}

inline RunResult run_report(const ScenarioConfig& cfg, const RunOptions& opt = {}) {
  return cfg.backend == "jet" ? runner_detail::run_report_impl<JetField>(cfg, opt)
                              : runner_detail::run_report_impl<Polynomial>(cfg, opt);
}

}  // namespace maxcov
