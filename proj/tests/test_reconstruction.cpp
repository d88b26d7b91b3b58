#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace maxcov;
using testsup::random_form;

namespace {

using PForm = DifferentialForm<Polynomial>;

// Direct-evaluation oracle: the reconstruction must reproduce what the
// 3-form actually assigns to the fiducial basis triples.
struct DirectSlots {
  Rational perp;
  std::array<Rational, 3> par;
};

DirectSlots direct_slots(const FrameFamily<Polynomial>& family, const PForm& J, const Point& p) {
  const auto& fid = family.frame(0);
  const auto g = fid.gamma_field();
  const auto x1 = fid.spatial_basis(1);
  const auto x2 = fid.spatial_basis(2);
  const auto x3 = fid.spatial_basis(3);
  return {evaluate(J, {x1, x2, x3}, p),
          {evaluate(J, {g, x2, x3}, p), evaluate(J, {g, x1, x3}, p), evaluate(J, {g, x1, x2}, p)}};
}

std::array<TransversalSample3<Rational>, 4> samples_for(const FrameFamily<Polynomial>& family,
                                                        const PForm& J, const Point& p) {
  const auto values = transversal_values(J, family, p);
  return values;
}

}  // namespace

TEST_CASE("transversal values evaluate the form on boosted spatial triples") {
  const auto family = make_frame_family<Polynomial>(Rational(3, 5));
  const Point p = origin();

  const PForm spatial = PForm::unit(0b1110);  // dx∧dy∧dz
  const auto s1 = samples_for(family, spatial, p);
  CHECK(s1[0].value == Rational(1));
  // Frame 1: X₁⁽¹⁾ = (3/4)∂t + (5/4)∂x contributes only through ∂x: γ = 5/4.
  CHECK(s1[1].value == Rational(5, 4));

  const PForm temporal = PForm::unit(0b0111);  // dt∧dx∧dy
  const auto s2 = samples_for(family, temporal, p);
  CHECK(s2[0].value == Rational(0));
  // Frame 3: only X₃⁽³⁾ = (3/4)∂t + (5/4)∂z reaches the dt slot: βγ = 3/4.
  CHECK(s2[3].value == Rational(3, 4));
}

TEST_CASE("transversal sampling requires a 3-form") {
  const auto family = make_frame_family<Polynomial>(Rational(3, 5));
  CHECK_THROWS_WITH(transversal_values(PForm::unit(0b0011), family, origin()),
                    Catch::Matchers::ContainsSubstring("transversal sampling expects a 3-form"));
}

TEST_CASE("printed reconstruction on degenerate inputs") {
  std::array<TransversalSample3<Rational>, 4> zero{};
  for (int mu = 0; mu < 4; ++mu) zero[static_cast<std::size_t>(mu)].frame_label = mu;
  const auto rec = reconstruct_3form_printed(zero, Rational(3, 5), Rational(5, 4));
  CHECK(rec.perp_value == Rational(0));
  for (const auto& v : rec.par_values) CHECK(v == Rational(0));
  CHECK_THROWS_WITH(reconstruct_3form_printed(zero, Rational(0), Rational(1)),
                    Catch::Matchers::ContainsSubstring("degenerate boost"));
}

TEST_CASE("printed reconstruction recovers pure forms") {
  const auto family = make_frame_family<Polynomial>(Rational(3, 5));
  const Point p = origin();

  // Purely spatial: all temporal slots must come out zero.
  const auto spatial = samples_for(family, PForm::unit(0b1110), p);
  const auto rec1 = reconstruct_3form_printed(spatial, family.beta, family.gamma);
  CHECK(rec1.perp_value == Rational(1));
  for (const auto& v : rec1.par_values) CHECK(v == Rational(0));

  // dt∧dx∧dy: only the (Γ,X₁,X₂) slot is hit, with value i_Γ J(X₁,X₂) = 1.
  const auto temporal = samples_for(family, PForm::unit(0b0111), p);
  const auto rec2 = reconstruct_3form_printed(temporal, family.beta, family.gamma);
  CHECK(rec2.perp_value == Rational(0));
  CHECK(rec2.par_values[0] == Rational(0));
  CHECK(rec2.par_values[1] == Rational(0));
  CHECK(rec2.par_values[2] == Rational(1));
}

TEST_CASE("solver reconstruction recovers pure forms") {
  const auto family = make_frame_family<Polynomial>(Rational(3, 5));
  std::array<TransversalSample3<Rational>, 4> zero{};
  const auto rec0 = reconstruct_3form_solve(zero, family);
  CHECK(rec0.perp_value == Rational(0));
  for (const auto& v : rec0.par_values) CHECK(v == Rational(0));

  // dt∧dy∧dz hits only the (Γ,X₂,X₃) slot.
  const auto samples = samples_for(family, PForm::unit(0b1101), origin());
  const auto rec = reconstruct_3form_solve(samples, family);
  CHECK(rec.perp_value == Rational(0));
  CHECK(rec.par_values[0] == Rational(1));
  CHECK(rec.par_values[1] == Rational(0));
  CHECK(rec.par_values[2] == Rational(0));
}

TEST_CASE("printed and solver reconstructions agree on arbitrary samples") {
  // Both must invert the same linear relation, so they agree even on sample
  // vectors that do not come from any actual 3-form.
  const auto family = make_frame_family<Polynomial>(Rational(3, 5));
  SplitMix64 rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<TransversalSample3<Rational>, 4> s{};
    for (int mu = 0; mu < 4; ++mu) {
      s[static_cast<std::size_t>(mu)].frame_label = mu;
      s[static_cast<std::size_t>(mu)].value = random_rational(rng);
    }
    const auto printed = reconstruct_3form_printed(s, family.beta, family.gamma);
    const auto solved = reconstruct_3form_solve(s, family);
    CHECK(printed.perp_value == solved.perp_value);
    for (int k = 0; k < 3; ++k)
      CHECK(printed.par_values[static_cast<std::size_t>(k)] ==
            solved.par_values[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("reconstruction matches direct evaluation on random 3-forms") {
  SplitMix64 rng(42);
  for (const Rational& beta : {Rational(3, 5), Rational(5, 13)}) {
    const auto family = make_frame_family<Polynomial>(beta);
    for (int trial = 0; trial < 20; ++trial) {
      const PForm J = random_form(rng, 3, 1);
      const Point p = random_point(rng);
      const auto rec = reconstruct_3form_solve(samples_for(family, J, p), family);
      const auto direct = direct_slots(family, J, p);
      CHECK(rec.perp_value == direct.perp);
      for (int k = 0; k < 3; ++k)
        CHECK(rec.par_values[static_cast<std::size_t>(k)] ==
              direct.par[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("two-form sampling and reconstruction") {
  const auto family = make_frame_family<Polynomial>(Rational(3, 5));
  const Point p = origin();

  // Purely spatial F: no temporal components to recover.
  const auto s_spatial = transversal_values_2(PForm::unit(0b0110), family, p);
  const auto rec_spatial = reconstruct_2form(s_spatial, family);
  for (const auto& v : rec_spatial) CHECK(v == Rational(0));

  // F = dt∧dx: i_Γ F(X₁) = 1 and the others vanish.
  const auto s_tx = transversal_values_2(PForm::unit(0b0011), family, p);
  const auto rec_tx = reconstruct_2form(s_tx, family);
  CHECK(rec_tx[0] == Rational(1));
  CHECK(rec_tx[1] == Rational(0));
  CHECK(rec_tx[2] == Rational(0));

  // F = dt∧dz: recovered through frames 1 and 2 without any z-boosted frame.
  const auto s_tz = transversal_values_2(PForm::unit(0b1001), family, p);
  const auto rec_tz = reconstruct_2form(s_tz, family);
  CHECK(rec_tz[0] == Rational(0));
  CHECK(rec_tz[1] == Rational(0));
  CHECK(rec_tz[2] == Rational(1));
}

TEST_CASE("two-form reconstruction matches direct evaluation on random forms") {
  SplitMix64 rng(43);
  const auto family = make_frame_family<Polynomial>(Rational(3, 5));
  const auto& fid = family.frame(0);
  for (int trial = 0; trial < 20; ++trial) {
    const PForm F = random_form(rng, 2, 1);
    const Point p = random_point(rng);
    const auto rec = reconstruct_2form(transversal_values_2(F, family, p), family);
    for (int k = 0; k < 3; ++k)
      CHECK(rec[static_cast<std::size_t>(k)] ==
            evaluate(F, {fid.gamma_field(), fid.spatial_basis(k + 1)}, p));
  }
}

TEST_CASE("two-form sampling validates grade") {
  const auto family = make_frame_family<Polynomial>(Rational(3, 5));
  CHECK_THROWS_AS(transversal_values_2(PForm::unit(0b0111), family, origin()), std::domain_error);
}

TEST_CASE("inconsistent sample sets are rejected by the overdetermined solve") {
  const auto family = make_frame_family<Polynomial>(Rational(3, 5));
  auto samples = transversal_values_2(PForm::unit(0b0011), family, origin());
  // Frame 1 shares its (X₂,X₃) pair with frame 0, so disagreeing there can
  // never be explained by any constant 2-form.
  samples[1].values[2] += Rational(1);
  CHECK_THROWS_WITH(reconstruct_2form(samples, family),
                    Catch::Matchers::ContainsSubstring("inconsistent linear system"));
}
