#include "polrig/catalog.hpp"
#include "polrig/chowring.hpp"
#include "polrig/errors.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace polrig;
using namespace polrig::chowring;

namespace {

RingHandle projective(int n) {
  RingPresentation p;
  p.generators = {{"h", 1}};
  p.dimension = n;
  p.rules = {{{n + 1}, {}}};
  p.fundamental = {n};
  return make_ring(p);
}

// Generators (xi, h); h^2 = 0, xi^n = (sum a) xi^(n-1) h.
RingHandle scroll(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  RingPresentation p;
  p.generators = {{"xi", 1}, {"h", 1}};
  p.dimension = n;
  p.rules = {{{0, 2}, {}}, {{n, 0}, {{Rational(std::accumulate(a.begin(), a.end(), 0)), {n - 1, 1}}}}};
  p.fundamental = {n - 1, 1};
  return make_ring(p);
}

RingHandle product(const std::vector<int>& dims) {
  RingPresentation p;
  const int k = static_cast<int>(dims.size());
  for (int i = 0; i < k; ++i) {
    p.generators.push_back({"h" + std::to_string(i + 1), 1});
    Exponents e(k, 0);
    e[i] = dims[i] + 1;
    p.rules.push_back({e, {}});
  }
  p.dimension = std::accumulate(dims.begin(), dims.end(), 0);
  p.fundamental = dims;
  return make_ring(p);
}

Rational factorial(int n) {
  Rational r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace

TEST_CASE("projective space ring") {
  const auto ring = projective(3);
  const auto h = ring->generator("h");
  CHECK(h * power(h, 2) == ring->term(1, {3}));
  CHECK(integrate(power(h, 3)) == 1);
  CHECK(power(h, 4).is_zero());
  CHECK(power(h, 0) == ring->one());
  CHECK((h * ring->zero()).is_zero());
  CHECK(integrate(h) == 0);  // lower grades integrate to zero
  for (int n = 1; n <= 6; ++n) CHECK(integrate(power(projective(n)->generator("h"), n)) == 1);
}

TEST_CASE("scroll ring relation and degree") {
  const auto s12 = scroll({1, 2});
  const auto xi = s12->generator("xi");
  const auto h = s12->generator("h");
  CHECK(xi * xi == Rational(3) * (xi * h));
  CHECK(integrate(xi * xi) == 3);

  const auto s111 = scroll({1, 1, 1});
  CHECK(integrate(power(s111->generator("xi"), 3)) == 3);

  // Degree of S(a) is sum a for a grid of scrolls.
  for (int a1 = 1; a1 <= 4; ++a1) {
    for (int a2 = a1; a2 <= 4; ++a2) {
      for (int a3 = a2; a3 <= 4; ++a3) {
        const auto r = scroll({a1, a2, a3});
        CHECK(integrate(power(r->generator("xi"), 3)) == a1 + a2 + a3);
      }
    }
  }
}

TEST_CASE("product ring degree is a multinomial") {
  const auto ring = product({2, 1});
  const auto l = ring->generator("h1") + ring->generator("h2");
  // (h1 + h2)^3 on P^2 x P^1: only h1^2 h2 survives, with coefficient 3!/(2!1!).
  CHECK(integrate(power(l, 3)) == factorial(3) / (factorial(2) * factorial(1)));

  // Multiplicativity: the product of factor fundamental classes integrates to
  // the product of the factor integrals.
  const auto p3 = product({1, 2, 1});
  const auto top = p3->generator("h1") * power(p3->generator("h2"), 2) * p3->generator("h3");
  CHECK(integrate(top) == integrate(projective(1)->generator("h")) *
                              integrate(power(projective(2)->generator("h"), 2)) *
                              integrate(projective(1)->generator("h")));

  // (d1 h1 + d2 h2)^n = multinomial * prod d_i^{a_i}
  for (int d1 = 1; d1 <= 3; ++d1) {
    for (int d2 = 1; d2 <= 3; ++d2) {
      const auto r = product({2, 2});
      const auto c = Rational(d1) * r->generator("h1") + Rational(d2) * r->generator("h2");
      const Rational expected = factorial(4) / (factorial(2) * factorial(2)) * d1 * d1 * d2 * d2;
      CHECK(integrate(power(c, 4)) == expected);
    }
  }
}

TEST_CASE("invalid presentations") {
  SUBCASE("grade-increasing rule") {
    RingPresentation p;
    p.generators = {{"h", 1}};
    p.dimension = 3;
    p.rules = {{{2}, {{Rational(1), {3}}}}};
    p.fundamental = {3};
    CHECK_THROWS_AS(make_ring(p), ConfigurationError);
  }
  SUBCASE("rule that climbs in monomial order") {
    RingPresentation p;
    p.generators = {{"a", 1}, {"b", 1}};
    p.dimension = 2;
    p.rules = {{{0, 2}, {{Rational(1), {2, 0}}}}, {{3, 0}, {}}, {{0, 3}, {}}};
    p.fundamental = {1, 1};
    CHECK_THROWS_AS(make_ring(p), ConfigurationError);
  }
  SUBCASE("duplicate left-hand sides") {
    RingPresentation p;
    p.generators = {{"h", 1}};
    p.dimension = 1;
    p.rules = {{{2}, {}}, {{2}, {}}};
    p.fundamental = {1};
    CHECK_THROWS_AS(make_ring(p), ConfigurationError);
  }
  SUBCASE("overlapping rules with different normal forms") {
    // a^2 -> b^2 through a -> b, or -> 0 through a^2 -> 0.
    RingPresentation p;
    p.generators = {{"a", 1}, {"b", 1}};
    p.dimension = 2;
    p.rules = {{{1, 0}, {{Rational(1), {0, 1}}}}, {{2, 0}, {}}};
    p.fundamental = {0, 2};
    CHECK_THROWS_AS(make_ring(p), ConfigurationError);
  }
  SUBCASE("top grade does not reduce to the fundamental monomial") {
    RingPresentation p;
    p.generators = {{"a", 1}, {"b", 1}};
    p.dimension = 1;
    p.rules = {{{2, 0}, {}}, {{0, 2}, {}}, {{1, 1}, {}}};
    p.fundamental = {1, 0};
    CHECK_THROWS_AS(make_ring(p), ConfigurationError);
  }
  SUBCASE("fundamental monomial of the wrong grade") {
    RingPresentation p;
    p.generators = {{"h", 1}};
    p.dimension = 2;
    p.rules = {{{3}, {}}};
    p.fundamental = {1};
    CHECK_THROWS_AS(make_ring(p), ConfigurationError);
  }
}

TEST_CASE("classes from different rings do not mix") {
  const auto a = projective(2)->generator("h");
  const auto b = projective(2)->generator("h");
  CHECK_THROWS_AS(a * b, UsageError);
  CHECK_THROWS_AS(a + b, UsageError);
}

TEST_CASE("multiplication is bilinear and commutative") {
  const auto ring = product({1, 2});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5);
  auto random_class = [&] {
    ChowClass c = ring->zero();
    for (int e1 = 0; e1 <= 1; ++e1) {
      for (int e2 = 0; e2 <= 2; ++e2) c = c + ring->term(Rational(coef(rng), 1 + (coef(rng) + 5) % 3), {e1, e2});
    }
    return c;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_class();
    const auto b = random_class();
    const auto c = random_class();
    const Rational s(coef(rng), 7);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((s * a) * b == s * (a * b));
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("reduction order does not change normal forms") {
  // Every catalog ring on a small grid: reduce each monomial of grade <= n
  // with the first and with the last applicable rule preferred.
  for (const auto& pair : scan_grid({.max_n = 3, .max_parameter = 3, .max_codimension = 2})) {
    const auto pr = intersection_ring(pair);
    const auto& ring = *pr.ring;
    const int g = static_cast<int>(ring.generator_count());
    const int top = ring.dimension();
    std::vector<Exponents> monomials{Exponents(g, 0)};
    for (int i = 0; i < g; ++i) {
      std::vector<Exponents> next;
      for (const auto& m : monomials) {
        for (int e = 0; e <= top + 1; ++e) {
          Exponents x = m;
          x[i] = e;
          next.push_back(x);
        }
      }
      monomials = std::move(next);
    }
    for (const auto& e : monomials) {
      Ring::TermMap t{{ring.monomial(e), Rational(1)}};
      CHECK(ring.reduce(t, RulePriority::first_listed) == ring.reduce(t, RulePriority::last_listed));
    }
  }
}

TEST_CASE("ring degree matches closed forms on the catalog grid") {
  auto binomial = [](int n, int k) {
    Rational r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (const auto& pair : scan_grid({.max_n = 4, .max_parameter = 5, .max_codimension = 2})) {
    const auto pr = intersection_ring(pair);
    const Rational ring_degree = pr.integrate_on_m(power(pr.hyperplane, pr.n));
    const Rational expected = std::visit(
        [&](const auto& p) -> Rational {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ProjectiveSpaceParams>) {
            Rational r = 1;
            for (int i = 0; i < p.n; ++i) r *= p.twist;
            return r;
          } else if constexpr (std::is_same_v<T, HypersurfaceParams>) {
            return p.degree;
          } else if constexpr (std::is_same_v<T, CompleteIntersectionParams>) {
            Rational r = 1;
            for (int d : p.degrees) r *= d;
            return r;
          } else if constexpr (std::is_same_v<T, ScrollParams>) {
            return std::accumulate(p.a.begin(), p.a.end(), 0);
          } else {
            // multinomial(n; a_1..a_k) * prod d_i^{a_i}
            Rational r = 1;
            int remaining = std::accumulate(p.factors.begin(), p.factors.end(), 0);
            for (std::size_t i = 0; i < p.factors.size(); ++i) {
              r *= binomial(remaining, p.factors[i]);
              remaining -= p.factors[i];
              for (int k = 0; k < p.factors[i]; ++k) r *= p.multidegree[i];
            }
            return r;
          }
        },
        pair.params());
    CHECK_MESSAGE(ring_degree == expected, pair.label());
    CHECK(degree(pair) == degree_closed_form(pair));
  }
}
