#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tmon/catalysis.hpp"
#include "tmon/secondlaws.hpp"

using namespace tmon;

namespace {

ProbDist random_dist(std::mt19937_64& rng, int d) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<size_t>(d));
  double s = 0;
  for (double& x : w) {
    x = expo(rng);
    s += x;
  }
  for (double& x : w) x /= s;
  return ProbDist(std::move(w), 1e-6);
}

Hamiltonian random_hamiltonian(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  std::vector<double> e(static_cast<size_t>(d));
  for (double& x : e) x = unif(rng);
  return Hamiltonian(std::move(e));
}

const ProbDist kJpP(std::vector<Rational>{Rational(2, 5), Rational(2, 5), Rational(1, 10),
                                          Rational(1, 10)});
const ProbDist kJpQ(std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 4),
                                          Rational(0)});

}  // namespace

TEST_CASE("free energy closed forms") {
  ThermalContext ctx = make_context(0.5);  // kT = 2
  Hamiltonian h({0.0, 1.0, 2.5});
  double kt = ctx.kT();
  double lnz = log_partition_function(h, ctx);
  SUBCASE("gibbs state hits -kT ln Z at every alpha") {
    ProbDist g = gibbs_state(h, ctx);
    for (double a : alpha_grid(true))
      CHECK(free_energy(g, h, ctx, Alpha(a)).value() ==
            doctest::Approx(-kt * lnz).epsilon(1e-10));
    CHECK(free_energy(g, h, ctx, Alpha::inf()).value() == doctest::Approx(-kt * lnz));
  }
  SUBCASE("pure eigenstates hit their energy at every alpha") {
    for (int level = 0; level < 3; ++level) {
      ProbDist e = ProbDist::pure(3, level);
      for (double a : {0.0, 0.5, 1.0, 2.0, 8.0})
        CHECK(free_energy(e, h, ctx, Alpha(a)).value() ==
              doctest::Approx(h[level]).epsilon(1e-10));
      CHECK(free_energy(e, h, ctx, Alpha::inf()).value() == doctest::Approx(h[level]));
    }
  }
  SUBCASE("alpha = 1 is the Helmholtz free energy") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
      ProbDist p = random_dist(rng, 3);
      double avg_e = 0, shannon = 0;
      for (int i = 0; i < 3; ++i) {
        avg_e += p[i] * h[i];
        if (p[i] > 0) shannon -= p[i] * std::log(p[i]);
      }
      CHECK(free_energy(p, h, ctx, Alpha(1.0)).value() ==
            doctest::Approx(avg_e - kt * shannon).epsilon(1e-10));
    }
  }
}

TEST_CASE("check_transition verdicts") {
  ThermalContext ctx = make_context(1.0);
  SUBCASE("identity transition is feasible with zero margin") {
    ProbDist p(std::vector<double>{0.6, 0.3, 0.1});
    Hamiltonian h({0.0, 0.2, 0.9});
    TransitionReport r = check_transition(p, p, h, ctx, CheckMode::kExactAllAlpha);
    CHECK(r.verdict == Verdict::kFeasible);
    CHECK(r.margin.value() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(r.marginal);
  }
  SUBCASE("the catalytic pair is feasible exactly where trumping says") {
    Hamiltonian h = Hamiltonian::trivial(4);
    TransitionReport fwd = check_transition(kJpQ, kJpP, h, ctx, CheckMode::kExactAllAlpha);
    CHECK(fwd.verdict == Verdict::kFeasible);
    TransitionReport rev = check_transition(kJpP, kJpQ, h, ctx, CheckMode::kExactAllAlpha);
    CHECK(rev.verdict == Verdict::kInfeasible);
    // not merely a rank obstruction: the finite nonnegative family fails too
    bool finite_violation = false;
    for (const AlphaSample& s : rev.samples)
      if (s.alpha >= 0 && s.gap.finite() && s.gap.value() < -1e-9) finite_violation = true;
    CHECK(finite_violation);
    TransitionReport rev_nonneg = check_transition(kJpP, kJpQ, h, ctx, CheckMode::kNonnegAlpha);
    CHECK(rev_nonneg.verdict == Verdict::kInfeasible);
  }
  SUBCASE("rank-deficient input satisfies every negative-alpha condition") {
    Hamiltonian h = Hamiltonian::trivial(3);
    ProbDist p(std::vector<double>{0.7, 0.3, 0.0});
    ProbDist full(std::vector<double>{0.5, 0.3, 0.2});
    TransitionReport r = check_transition(p, full, h, ctx, CheckMode::kExactAllAlpha);
    for (const AlphaSample& s : r.samples)
      if (s.alpha < 0) CHECK(s.gap.is_pos_inf());
  }
  SUBCASE("rank decrease is caught at alpha = 0 and blows up below") {
    Hamiltonian h = Hamiltonian::trivial(2);
    ProbDist full(std::vector<double>{0.9, 0.1});
    ProbDist target(std::vector<double>{1.0, 0.0});
    TransitionReport nonneg = check_transition(full, target, h, ctx,
                                               CheckMode::kNonnegAlpha);
    CHECK(nonneg.verdict == Verdict::kInfeasible);
    CHECK(nonneg.worst_alpha == doctest::Approx(0.0));
    TransitionReport exact = check_transition(full, target, h, ctx,
                                              CheckMode::kExactAllAlpha);
    CHECK(exact.verdict == Verdict::kInfeasible);
    CHECK(exact.margin.is_neg_inf());
  }
  SUBCASE("gap(1) >= 0 is the standard second law") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
      Hamiltonian h = random_hamiltonian(rng, 3);
      ProbDist p = random_dist(rng, 3), pp = random_dist(rng, 3);
      TransitionReport r = check_transition(p, pp, h, ctx, CheckMode::kNonnegAlpha);
      double f1_gap = free_energy(p, h, ctx, Alpha(1.0)).value() -
                      free_energy(pp, h, ctx, Alpha(1.0)).value();
      if (r.verdict == Verdict::kFeasible) CHECK(f1_gap >= -1e-9);
    }
  }
}

TEST_CASE("necessity and soundness against explicit catalysts") {
  ThermalContext ctx = make_context(1.0);
  std::mt19937_64 rng(3);
  SUBCASE("curve-verified catalysts imply a feasible verdict") {
    int hits = 0;
    for (int t = 0; t < 200 && hits < 30; ++t) {
      int d = 2 + static_cast<int>(rng() % 2);
      Hamiltonian h = random_hamiltonian(rng, d);
      ProbDist p = random_dist(rng, d), pp = random_dist(rng, d);
      Catalyst c{random_dist(rng, 2), Hamiltonian::trivial(2)};
      if (!verify_catalyst(p, pp, c, h, ctx)) continue;
      ++hits;
      TransitionReport r = check_transition(p, pp, h, ctx, CheckMode::kExactAllAlpha);
      CHECK(r.verdict == Verdict::kFeasible);
    }
    CHECK(hits > 0);
  }
  SUBCASE("infeasible verdicts are never overturned by random catalysts") {
    int infeasible_count = 0;
    for (int t = 0; t < 40; ++t) {
      int d = 3;
      Hamiltonian h = random_hamiltonian(rng, d);
      ProbDist p = random_dist(rng, d), pp = random_dist(rng, d);
      TransitionReport r = check_transition(p, pp, h, ctx, CheckMode::kNonnegAlpha);
      if (r.verdict != Verdict::kInfeasible) continue;
      ++infeasible_count;
      for (int s = 0; s < 50; ++s) {
        Catalyst c{random_dist(rng, 2 + static_cast<int>(rng() % 3)),
                   Hamiltonian::trivial(2)};
        c.hamiltonian = Hamiltonian::trivial(c.state.dim());
        CHECK_FALSE(verify_catalyst(p, pp, c, h, ctx));
      }
    }
    CHECK(infeasible_count > 0);
  }
}

TEST_CASE("switch-bit Hamiltonian changes") {
  ThermalContext ctx = make_context(1.0);
  Hamiltonian h0({0.0, 1.0});
  Hamiltonian h1({0.0, 0.2, 0.4});
  SUBCASE("thermal-to-thermal gap is constant kT ln(Z1/Z0)") {
    ProbDist g0 = gibbs_state(h0, ctx), g1 = gibbs_state(h1, ctx);
    GapScan scan = scan_free_energy_gap(g0, h0, g1, h1, ctx, true);
    double expect = ctx.kT() * (log_partition_function(h1, ctx) -
                                log_partition_function(h0, ctx));
    for (const AlphaSample& s : scan.samples)
      CHECK(s.gap.value() == doctest::Approx(expect).epsilon(1e-9));
    TransitionReport r =
        check_switch_hamiltonian(g0, h0, g1, h1, ctx, CheckMode::kExactAllAlpha);
    CHECK((r.verdict == Verdict::kFeasible) == (expect >= -1e-9));
  }
  SUBCASE("equal Hamiltonians reduce to check_transition") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
      ProbDist p = random_dist(rng, 2), pp = random_dist(rng, 2);
      TransitionReport a =
          check_switch_hamiltonian(p, h0, pp, h0, ctx, CheckMode::kNonnegAlpha);
      TransitionReport b = check_transition(p, pp, h0, ctx, CheckMode::kNonnegAlpha);
      CHECK(a.verdict == b.verdict);
      CHECK(a.margin.value() == doctest::Approx(b.margin.value()).epsilon(1e-12));
    }
  }
  SUBCASE("pure eigenstate to pure eigenstate needs E >= E'") {
    Hamiltonian ha({0.7});
    Hamiltonian hb({0.4});
    TransitionReport down = check_switch_hamiltonian(
        ProbDist::uniform(1), ha, ProbDist::uniform(1), hb, ctx, CheckMode::kExactAllAlpha);
    CHECK(down.verdict == Verdict::kFeasible);
    CHECK(down.margin.value() == doctest::Approx(0.3));
    TransitionReport up = check_switch_hamiltonian(
        ProbDist::uniform(1), hb, ProbDist::uniform(1), ha, ctx, CheckMode::kExactAllAlpha);
    CHECK(up.verdict == Verdict::kInfeasible);
  }
}

TEST_CASE("two-condition sufficient check") {
  ThermalContext ctx = make_context(1.0);
  SUBCASE("pure high-energy state to gibbs passes with generous eps") {
    Hamiltonian h({0.0, 1.0, 2.0, 3.0});
    ProbDist p = ProbDist::pure(4, 3);
    ProbDist g = gibbs_state(h, ctx);
    TransitionReport r = two_condition_check(p, g, h, ctx, 0.3);
    CHECK(r.verdict == Verdict::kSufficientPass);
  }
  SUBCASE("identity transition is inconclusive (corrections not overcome)") {
    Hamiltonian h({0.0, 0.5});
    ProbDist p(std::vector<double>{0.7, 0.3});
    TransitionReport r = two_condition_check(p, p, h, ctx, 0.1);
    CHECK(r.verdict == Verdict::kInconclusive);
  }
  SUBCASE("sufficient-pass implies a feasible nonneg-alpha verdict") {
    std::mt19937_64 rng(5);
    int passes = 0;
    for (int t = 0; t < 300; ++t) {
      int d = 2 + static_cast<int>(rng() % 4);
      Hamiltonian h = random_hamiltonian(rng, d);
      ProbDist p = random_dist(rng, d), pp = random_dist(rng, d);
      for (double eps : {0.3, 0.1}) {
        TransitionReport two = two_condition_check(p, pp, h, ctx, eps);
        CHECK(two.verdict != Verdict::kInfeasible);
        if (two.verdict == Verdict::kSufficientPass) {
          ++passes;
          TransitionReport full = check_transition(p, pp, h, ctx, CheckMode::kNonnegAlpha);
          CHECK(full.verdict == Verdict::kFeasible);
        }
      }
    }
    INFO("sufficient passes seen: ", passes);
  }
}
