#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tmon/channels.hpp"
#include "tmon/renyi.hpp"

using namespace tmon;

namespace {

ProbDist random_dist(std::mt19937_64& rng, int d, bool allow_zero = false) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<size_t>(d));
  double s = 0;
  for (double& x : w) {
    x = expo(rng);
    s += x;
  }
  for (double& x : w) x /= s;
  if (allow_zero && d > 1) {
    std::uniform_int_distribution<int> pick(0, d - 1);
    int z = pick(rng);
    double freed = w[static_cast<size_t>(z)];
    w[static_cast<size_t>(z)] = 0;
    for (double& x : w) x /= (1.0 - freed);
  }
  return ProbDist(std::move(w), 1e-6);
}

StochasticMatrix random_channel(std::mt19937_64& rng, int rows, int cols) {
  std::exponential_distribution<double> expo(1.0);
  StochasticMatrix m(rows, cols);
  for (int i = 0; i < cols; ++i) {
    double s = 0;
    for (int j = 0; j < rows; ++j) {
      m.at(j, i) = expo(rng);
      s += m.at(j, i);
    }
    for (int j = 0; j < rows; ++j) m.at(j, i) /= s;
  }
  return m;
}

}  // namespace

TEST_CASE("divergence closed forms and identities") {
  ProbDist p(std::vector<double>{0.5, 0.25, 0.25, 0.0});
  ProbDist q(std::vector<double>{0.4, 0.4, 0.1, 0.1});
  SUBCASE("self-divergence vanishes at every alpha") {
    ProbDist r(std::vector<double>{0.3, 0.2, 0.5});
    for (double a : alpha_grid(true)) {
      CHECK(divergence(r, r, Alpha(a)).value() == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(divergence(r, r, Alpha::inf()).value() == doctest::Approx(0.0));
  }
  SUBCASE("D_0 counts the support mass of q") {
    CHECK(divergence(p, q, Alpha(0.0)).value() == doctest::Approx(-std::log(0.9)));
  }
  SUBCASE("uniform reference interchanges with entropy") {
    ProbDist eta = ProbDist::uniform(4);
    for (double a : {0.0, 0.3, 0.9, 1.0, 1.7, 3.0}) {
      double lhs = divergence(p, eta, Alpha(a)).value();
      double rhs = std::log(4.0) - entropy(p, Alpha(a)).value();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
    CHECK(divergence(p, eta, Alpha::inf()).value() ==
          doctest::Approx(std::log(4.0) - entropy(p, Alpha::inf()).value()));
  }
  SUBCASE("support rules produce infinities") {
    ProbDist full(std::vector<double>{0.5, 0.5});
    ProbDist part(std::vector<double>{1.0, 0.0});
    CHECK(divergence(full, part, Alpha(2.0)).is_pos_inf());
    CHECK(divergence(full, part, Alpha(1.0)).is_pos_inf());
    CHECK(divergence(part, full, Alpha(-1.0)).is_pos_inf());
    CHECK(divergence(part, full, Alpha(2.0)).value() == doctest::Approx(std::log(2.0)));
  }
  SUBCASE("D_{-inf} is D_inf with swapped arguments") {
    ProbDist a(std::vector<double>{0.7, 0.3});
    ProbDist b(std::vector<double>{0.2, 0.8});
    CHECK(divergence(a, b, Alpha::neg_inf()).value() ==
          doctest::Approx(divergence(b, a, Alpha::inf()).value()));
  }
}

TEST_CASE("entropy closed forms") {
  SUBCASE("uniform has H = sgn(alpha) log n") {
    ProbDist u = ProbDist::uniform(5);
    for (double a : alpha_grid(true)) {
      double expected = (a >= 0 ? 1.0 : -1.0) * std::log(5.0);
      CHECK(entropy(u, Alpha(a)).value() == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(entropy(u, Alpha::inf()).value() == doctest::Approx(std::log(5.0)));
    // H_{-inf} = log p_min
    CHECK(entropy(u, Alpha::neg_inf()).value() == doctest::Approx(-std::log(5.0)));
  }
  SUBCASE("H_0 is log rank") {
    ProbDist p(std::vector<double>{0.5, 0.5, 0.0});
    CHECK(entropy(p, Alpha(0.0)).value() == doctest::Approx(std::log(2.0)));
  }
  SUBCASE("collision entropy direct value") {
    ProbDist p(std::vector<double>{0.75, 0.25});
    CHECK(entropy(p, Alpha(2.0)).value() == doctest::Approx(-std::log(0.625)));
  }
  SUBCASE("negative alpha with a zero weight guards to -inf") {
    ProbDist p(std::vector<double>{1.0, 0.0});
    CHECK(entropy(p, Alpha(-2.0)).is_neg_inf());
    CHECK(entropy(p, Alpha::neg_inf()).is_neg_inf());
  }
}

TEST_CASE("symmetry relation between D_alpha and D_{1-alpha}") {
  std::mt19937_64 rng(7);
  SUBCASE("full-rank equal arguments vanish on both sides") {
    ProbDist p(std::vector<double>{0.6, 0.4});
    auto [l, r] = symmetry_check(p, p, Alpha(2.0));
    CHECK(l.value() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.value() == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("alpha = 1/2 is the self-dual point") {
    ProbDist p = random_dist(rng, 4);
    ProbDist q = random_dist(rng, 4);
    auto [l, r] = symmetry_check(p, q, Alpha(0.5));
    CHECK(l.value() == doctest::Approx(r.value()).epsilon(1e-10));
  }
  SUBCASE("random full-rank pairs across the grid") {
    for (int t = 0; t < 50; ++t) {
      ProbDist p = random_dist(rng, 5);
      ProbDist q = random_dist(rng, 5);
      for (double a : {-2.0, -0.5, 0.3, 0.5, 2.0, 4.0}) {
        auto [l, r] = symmetry_check(p, q, Alpha(a));
        CHECK(l.value() == doctest::Approx(r.value()).epsilon(1e-9));
      }
    }
  }
  CHECK_THROWS_AS(symmetry_check(ProbDist::uniform(2), ProbDist::uniform(2), Alpha(1.0)),
                  std::invalid_argument);
}

TEST_CASE("divergence properties on random instances") {
  std::mt19937_64 rng(11);
  SUBCASE("nondecreasing in alpha for alpha >= 0") {
    for (int t = 0; t < 100; ++t) {
      ProbDist p = random_dist(rng, 4, t % 2 == 0);
      ProbDist q = random_dist(rng, 4);
      double prev = -HUGE_VAL;
      for (double a : alpha_grid(false)) {
        double v = divergence(p, q, Alpha(a)).value();
        CHECK(v >= prev - 1e-9);
        prev = v;
      }
      CHECK(divergence(p, q, Alpha::inf()).value() >= prev - 1e-9);
    }
  }
  SUBCASE("data processing across the full grid") {
    for (int t = 0; t < 100; ++t) {
      ProbDist p = random_dist(rng, 4);
      ProbDist q = random_dist(rng, 4);
      StochasticMatrix ch = random_channel(rng, 4, 4);
      ProbDist lp = apply(ch, p), lq = apply(ch, q);
      for (double a : alpha_grid(true)) {
        ExtendedReal before = divergence(p, q, Alpha(a));
        ExtendedReal after = divergence(lp, lq, Alpha(a));
        if (before.finite())
          CHECK(after.value() <= before.value() + 1e-9);
      }
    }
  }
  SUBCASE("additivity over products") {
    for (int t = 0; t < 50; ++t) {
      ProbDist p = random_dist(rng, 3), q = random_dist(rng, 3);
      ProbDist r = random_dist(rng, 2), s = random_dist(rng, 2);
      for (double a : {-2.0, 0.0, 0.5, 1.0, 2.0, 8.0}) {
        double joint = divergence(tensor(p, r), tensor(q, s), Alpha(a)).value();
        double split = divergence(p, q, Alpha(a)).value() + divergence(r, s, Alpha(a)).value();
        CHECK(joint == doctest::Approx(split).epsilon(1e-9));
      }
    }
  }
  SUBCASE("strict mixing toward the reference") {
    for (int t = 0; t < 30; ++t) {
      ProbDist p = random_dist(rng, 4, true);
      ProbDist q = random_dist(rng, 4);
      double delta = 0.3;
      std::vector<double> mixv(4);
      for (int i = 0; i < 4; ++i) mixv[static_cast<size_t>(i)] = (1 - delta) * p[i] + delta * q[i];
      ProbDist mix(std::move(mixv), 1e-6);
      for (double a : {-1.0, 0.5, 1.0, 2.0, 4.0}) {
        ExtendedReal before = divergence(p, q, Alpha(a));
        ExtendedReal after = divergence(mix, q, Alpha(a));
        if (before.finite())
          CHECK(after.value() < before.value() + 1e-12);
        else
          CHECK(after.finite());
      }
    }
  }
  SUBCASE("negative-alpha entropy monotonicity") {
    for (int t = 0; t < 50; ++t) {
      ProbDist p = random_dist(rng, 4);
      double prev = -HUGE_VAL;
      for (double a : {-8.0, -4.0, -2.0, -1.0, -0.5, -0.1}) {
        double v = entropy(p, Alpha(a)).value();
        CHECK(v >= prev - 1e-9);
        prev = v;
      }
    }
  }
  SUBCASE("Schur concavity of entropy under mixing channels") {
    // x Birkhoff-majorizes any average of its permutations
    for (int t = 0; t < 30; ++t) {
      ProbDist p = random_dist(rng, 4);
      std::vector<double> mixed(4);
      std::vector<int> perm{1, 2, 3, 0};
      for (int i = 0; i < 4; ++i)
        mixed[static_cast<size_t>(i)] = 0.5 * p[i] + 0.5 * p[perm[static_cast<size_t>(i)]];
      ProbDist q(std::move(mixed), 1e-6);
      for (double a : {-2.0, 0.5, 1.0, 2.0})
        CHECK(entropy(p, Alpha(a)).value() <= entropy(q, Alpha(a)).value() + 1e-9);
    }
  }
}

TEST_CASE("smooth_h0 cuts the small-probability tail") {
  ProbDist p(std::vector<double>{0.5, 0.3, 0.15, 0.05});
  SUBCASE("cuts exactly the smallest entry") {
    auto [d, h0] = smooth_h0(p, 0.05);
    CHECK(h0.value() == doctest::Approx(std::log(3.0)));
    CHECK(d.mass() == doctest::Approx(0.95));
  }
  SUBCASE("eps below the minimum cuts nothing") {
    auto [d, h0] = smooth_h0(p, 0.01);
    CHECK(h0.value() == doctest::Approx(std::log(4.0)));
    CHECK(d.mass() == doctest::Approx(1.0));
  }
  SUBCASE("uniform four with eps 0.3 cuts one atom") {
    auto [d, h0] = smooth_h0(ProbDist::uniform(4), 0.3);
    CHECK(h0.value() == doctest::Approx(std::log(3.0)));
  }
}

TEST_CASE("smooth_hinf levels the top") {
  SUBCASE("single spike") {
    auto [d, hinf] = smooth_hinf(ProbDist(std::vector<double>{1.0, 0.0}), 0.25);
    CHECK(hinf.value() == doctest::Approx(-std::log(0.75)));
    CHECK(d.weights()[0] == doctest::Approx(0.75));
  }
  SUBCASE("flat stays flat") {
    auto [d, hinf] = smooth_hinf(ProbDist::uniform(6), 0.4);
    CHECK(hinf.value() == doctest::Approx(std::log(6.0)));
    CHECK(d.mass() == doctest::Approx(1.0));
  }
  SUBCASE("two levels meet") {
    auto [d, hinf] = smooth_hinf(ProbDist(std::vector<double>{0.6, 0.4}), 0.2);
    CHECK(hinf.value() == doctest::Approx(-std::log(0.4)));
    CHECK(d.weights()[0] == doctest::Approx(0.4));
  }
}

TEST_CASE("smooth_d_inf caps likelihood ratios") {
  SUBCASE("identical pair keeps D_inf near zero for small eps") {
    ProbDist p(std::vector<double>{0.5, 0.5});
    auto [d, v] = smooth_d_inf(p, p, 1e-9);
    CHECK(std::abs(v.value()) < 1e-8);
  }
  SUBCASE("caps the spike at the reference level") {
    auto [d, v] = smooth_d_inf(ProbDist(std::vector<double>{1.0, 0.0}),
                               ProbDist(std::vector<double>{0.5, 0.5}), 0.5);
    CHECK(v.value() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(d.weights()[0] == doctest::Approx(0.5));
  }
  SUBCASE("lemma inequality with correction term") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
      ProbDist p = random_dist(rng, 5);
      ProbDist q = random_dist(rng, 5);
      for (double eps : {0.3, 0.1, 0.01}) {
        auto [d, v] = smooth_d_inf(p, q, eps);
        for (double a : {1.5, 2.0, 4.0, 8.0}) {
          double lhs = divergence(p, q, Alpha(a)).value();
          CHECK(lhs >= v.value() - std::log(1.0 / eps) / (a - 1.0) - 1e-9);
        }
        CHECK(statistical_distance(p.span(), std::span<const double>(d.weights())) <=
              eps + 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(smooth_d_inf(ProbDist(std::vector<double>{0.5, 0.5}),
                               ProbDist(std::vector<double>{1.0, 0.0}), 0.1),
                  std::invalid_argument);
}

TEST_CASE("smooth_d0 cuts the low-ratio prefix") {
  SUBCASE("eps below every weight cuts nothing") {
    ProbDist p(std::vector<double>{0.5, 0.5});
    ProbDist q(std::vector<double>{0.9, 0.1});
    auto [d, v] = smooth_d0(p, q, 0.01);
    CHECK(v.value() == doctest::Approx(divergence(p, q, Alpha(0.0)).value()));
  }
  SUBCASE("cuts the first ratio-ordered atom") {
    auto [d, v] = smooth_d0(ProbDist(std::vector<double>{0.05, 0.95}),
                            ProbDist(std::vector<double>{0.5, 0.5}), 0.1);
    CHECK(v.value() == doctest::Approx(-std::log(0.5)));
  }
  SUBCASE("lemma inequality with correction term") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
      ProbDist p = random_dist(rng, 5);
      ProbDist q = random_dist(rng, 5);
      for (double eps : {0.3, 0.1, 0.01}) {
        auto [d, v] = smooth_d0(p, q, eps);
        for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
          double lhs = divergence(p, q, Alpha(a)).value();
          CHECK(lhs <= v.value() + std::log(1.0 / eps) / (1.0 - a) + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("entropy smoothing lemma inequalities") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 60; ++t) {
    ProbDist p = random_dist(rng, 6, t % 3 == 0);
    for (double eps : {0.3, 0.1, 0.01}) {
      auto [d0, h0] = smooth_h0(p, eps);
      auto [di, hinf] = smooth_hinf(p, eps);
      for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        double ha = entropy(p, Alpha(a)).value();
        CHECK(entropy(p, Alpha(0.0)).value() >= ha - 1e-9);
        CHECK(ha >= h0.value() - std::log(1.0 / eps) / (1.0 - a) - 1e-9);
      }
      for (double a : {1.5, 2.0, 4.0, 8.0}) {
        double ha = entropy(p, Alpha(a)).value();
        CHECK(ha >= entropy(p, Alpha::inf()).value() - 1e-9);
        CHECK(hinf.value() + std::log(1.0 / eps) / (a - 1.0) >= ha - 1e-9);
      }
    }
  }
}
