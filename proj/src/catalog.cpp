#include "polrig/catalog.hpp"

#include "polrig/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace polrig {

using chowring::ChowClass;
using chowring::Exponents;
using chowring::RingHandle;
using chowring::RingPresentation;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

void require_at_least(int value, int bound, const std::string& field, const std::string& hint = "") {
  if (value < bound) {
    throw InvalidPair(field, field + " must be ≥ " + std::to_string(bound) + hint);
  }
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Rings depend only on a few shape parameters (n, sum of a_i, factor sizes),
// so grid scans share them.
RingHandle cached_ring(const std::string& key, const std::function<RingPresentation()>& build) {
  static std::mutex mutex;
  static std::map<std::string, RingHandle> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  RingHandle ring = chowring::make_ring(build());
  std::lock_guard lock(mutex);
  return cache.try_emplace(key, std::move(ring)).first->second;
}

RingHandle projective_ring(int dim) {
  return cached_ring("P" + std::to_string(dim), [dim] {
    RingPresentation p;
    p.generators = {{"h", 1}};
    p.dimension = dim;
    p.rules = {{{dim + 1}, {}}};
    p.fundamental = {dim};
    return p;
  });
}

RingHandle scroll_ring(int n, int total) {
  return cached_ring("S" + std::to_string(n) + ":" + std::to_string(total), [n, total] {
    // Generator order (xi, h): xi^n -> (sum a_i) xi^{n-1} h is lex-decreasing.
    RingPresentation p;
    p.generators = {{"xi", 1}, {"h", 1}};
    p.dimension = n;
    p.rules = {{{0, 2}, {}}, {{n, 0}, {{Rational(total), {n - 1, 1}}}}};
    p.fundamental = {n - 1, 1};
    return p;
  });
}

RingHandle product_ring(const std::vector<int>& factors) {
  return cached_ring("X" + join(factors), [factors] {
    RingPresentation p;
    const std::size_t k = factors.size();
    for (std::size_t i = 0; i < k; ++i) {
      p.generators.push_back({"h" + std::to_string(i + 1), 1});
      Exponents lhs(k, 0);
      lhs[i] = factors[i] + 1;
      p.rules.push_back({lhs, {}});
    }
    p.dimension = std::accumulate(factors.begin(), factors.end(), 0);
    p.fundamental = Exponents(factors.begin(), factors.end());
    return p;
  });
}

// Multisets v_0 <= v_1 <= ... of the given length with entries in [lo, hi].
void for_each_multiset(int length, int lo, int hi, const std::function<bool(const std::vector<int>&)>& keep_going,
                       const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> v;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(v.size()) == length) {
      emit(v);
      return;
    }
    for (int x = start; x <= hi; ++x) {
      v.push_back(x);
      const bool ok = keep_going(v);
      if (ok) rec(x);
      v.pop_back();
      if (!ok) break;
    }
  };
  rec(lo);
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::projective_space: return "projective_space";
    case Family::hypersurface: return "hypersurface";
    case Family::complete_intersection: return "complete_intersection";
    case Family::scroll: return "scroll";
    case Family::product: return "product";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::projective_space, Family::hypersurface, Family::complete_intersection, Family::scroll,
                   Family::product}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view tag_name(ClassificationTag t) {
  switch (t) {
    case ClassificationTag::linear: return "linear";
    case ClassificationTag::quadric: return "quadric";
    case ClassificationTag::veronese_surface: return "veronese_surface";
    case ClassificationTag::rational_normal_scroll: return "rational_normal_scroll";
    case ClassificationTag::genus_one_boundary: return "genus_one_boundary";
    case ClassificationTag::higher: return "higher";
  }
  return "unknown";
}

std::string_view verdict_name(LoiZeddaVerdict v) {
  switch (v) {
    case LoiZeddaVerdict::strictly_below: return "strictly_below";
    case LoiZeddaVerdict::equality: return "equality";
    case LoiZeddaVerdict::above: return "above";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// PolarizedPair

PolarizedPair PolarizedPair::projective_space(int n, int twist) {
  require_at_least(n, 1, "n");
  require_at_least(twist, 1, "twist");
  return PolarizedPair(ProjectiveSpaceParams{n, twist});
}

PolarizedPair PolarizedPair::hypersurface(int n, int degree) {
  require_at_least(n, 1, "n");
  require_at_least(degree, 2, "degree", " (enter a linear subspace as projective_space)");
  return PolarizedPair(HypersurfaceParams{n, degree});
}

PolarizedPair PolarizedPair::complete_intersection(int n, std::vector<int> degrees) {
  require_at_least(n, 1, "n");
  if (degrees.empty()) throw InvalidPair("degrees", "degrees must be nonempty");
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    require_at_least(degrees[i], 2, "degrees[" + std::to_string(i) + "]");
  }
  return PolarizedPair(CompleteIntersectionParams{n, std::move(degrees)});
}

PolarizedPair PolarizedPair::scroll(std::vector<int> a) {
  if (a.empty()) throw InvalidPair("a", "a must be nonempty");
  for (std::size_t i = 0; i < a.size(); ++i) require_at_least(a[i], 1, "a[" + std::to_string(i) + "]");
  return PolarizedPair(ScrollParams{std::move(a)});
}

PolarizedPair PolarizedPair::product(std::vector<int> factors, std::vector<int> multidegree) {
  if (factors.size() < 2) {
    throw InvalidPair("factors", "factors must list at least two factors (enter one factor as projective_space)");
  }
  if (multidegree.size() != factors.size()) {
    throw InvalidPair("multidegree", "multidegree must have one entry per factor");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    require_at_least(factors[i], 1, "factors[" + std::to_string(i) + "]");
    require_at_least(multidegree[i], 1, "multidegree[" + std::to_string(i) + "]");
  }
  return PolarizedPair(ProductParams{std::move(factors), std::move(multidegree)});
}

int PolarizedPair::dimension() const noexcept {
  return std::visit(overloaded{
                        [](const ProjectiveSpaceParams& p) { return p.n; },
                        [](const HypersurfaceParams& p) { return p.n; },
                        [](const CompleteIntersectionParams& p) { return p.n; },
                        [](const ScrollParams& p) { return static_cast<int>(p.a.size()); },
                        [](const ProductParams& p) { return std::accumulate(p.factors.begin(), p.factors.end(), 0); },
                    },
                    params_);
}

std::string PolarizedPair::label() const {
  return std::visit(
      overloaded{
          [](const ProjectiveSpaceParams& p) {
            return "projective_space(" + std::to_string(p.n) + ",twist=" + std::to_string(p.twist) + ")";
          },
          [](const HypersurfaceParams& p) {
            return "hypersurface(" + std::to_string(p.n) + ",degree=" + std::to_string(p.degree) + ")";
          },
          [](const CompleteIntersectionParams& p) {
            return "complete_intersection(" + std::to_string(p.n) + ",[" + join(p.degrees) + "])";
          },
          [](const ScrollParams& p) { return "scroll(" + join(p.a) + ")"; },
          [](const ProductParams& p) { return "product([" + join(p.factors) + "],[" + join(p.multidegree) + "])"; },
      },
      params_);
}

// ---------------------------------------------------------------------------
// Rings

Rational PolarizedRing::integrate_on_m(const ChowClass& c) const {
  return chowring::integrate(fundamental_class * c);
}

PolarizedRing intersection_ring(const PolarizedPair& pair) {
  auto complete_intersection = [](int n, const std::vector<int>& degrees) {
    const int c = static_cast<int>(degrees.size());
    RingHandle ring = projective_ring(n + c);
    Integer product = 1;
    int sum = 0;
    for (int d : degrees) {
      product *= d;
      sum += d;
    }
    const ChowClass h = ring->generator("h");
    return PolarizedRing{ring, n, h, Rational(sum - n - c - 1) * h,
                         ring->term(Rational(product), {c})};
  };

  return std::visit(
      overloaded{
          [](const ProjectiveSpaceParams& p) {
            RingHandle ring = projective_ring(p.n);
            const ChowClass h = ring->generator("h");
            return PolarizedRing{ring, p.n, Rational(p.twist) * h, Rational(-(p.n + 1)) * h, ring->one()};
          },
          [&](const HypersurfaceParams& p) { return complete_intersection(p.n, {p.degree}); },
          [&](const CompleteIntersectionParams& p) { return complete_intersection(p.n, p.degrees); },
          [](const ScrollParams& p) {
            const int n = static_cast<int>(p.a.size());
            const int total = std::accumulate(p.a.begin(), p.a.end(), 0);
            RingHandle ring = scroll_ring(n, total);
            const ChowClass xi = ring->generator("xi");
            const ChowClass h = ring->generator("h");
            return PolarizedRing{ring, n, xi, Rational(-n) * xi + Rational(total - 2) * h, ring->one()};
          },
          [](const ProductParams& p) {
            RingHandle ring = product_ring(p.factors);
            ChowClass l = ring->zero();
            ChowClass k = ring->zero();
            for (std::size_t i = 0; i < p.factors.size(); ++i) {
              const ChowClass hi = ring->generator("h" + std::to_string(i + 1));
              l = l + Rational(p.multidegree[i]) * hi;
              k = k + Rational(-(p.factors[i] + 1)) * hi;
            }
            return PolarizedRing{ring, ring->dimension(), l, k, ring->one()};
          },
      },
      pair.params());
}

// ---------------------------------------------------------------------------
// Invariants

namespace {

struct CoreInvariants {
  std::int64_t degree;
  std::int64_t canonical_intersection;
  std::int64_t genus;
};

CoreInvariants core_invariants(const PolarizedPair& pair, const PolarizedRing& r) {
  const ChowClass l_top = power(r.hyperplane, static_cast<unsigned>(r.n - 1));
  const std::int64_t d = to_int64(r.integrate_on_m(l_top * r.hyperplane), "degree");
  if (d <= 0) throw ConsistencyError("non-positive degree for " + pair.label());
  const ChowClass adjoint = r.canonical + Rational(r.n - 1) * r.hyperplane;
  const std::int64_t ci = to_int64(r.integrate_on_m(adjoint * l_top), "canonical intersection");
  if (ci % 2 != 0) {
    throw ConsistencyError("(K+(n-1)L).L^(n-1) = " + std::to_string(ci) + " is odd for " + pair.label());
  }
  return {d, ci, ci / 2 + 1};
}

bool del_pezzo_in_ring(const PolarizedRing& r) {
  return r.canonical == Rational(1 - r.n) * r.hyperplane;
}

ClassificationTag classify_from(const PolarizedPair& pair, std::int64_t d, std::int64_t g, std::int64_t delta) {
  if (g == 1) return ClassificationTag::genus_one_boundary;
  if (g != 0) return ClassificationTag::higher;
  if (delta != 0) {
    throw ConsistencyError("g(L) = 0 but Delta(L) = " + std::to_string(delta) + " for " + pair.label());
  }
  if (d == 1) return ClassificationTag::linear;
  std::optional<ClassificationTag> tag = std::visit(
      overloaded{
          [](const ProjectiveSpaceParams& p) -> std::optional<ClassificationTag> {
            if (p.n == 2 && p.twist == 2) return ClassificationTag::veronese_surface;
            // (P^1, O(d)) is the rational normal curve S(d).
            if (p.n == 1) return ClassificationTag::rational_normal_scroll;
            return std::nullopt;
          },
          [](const HypersurfaceParams& p) -> std::optional<ClassificationTag> {
            if (p.degree == 2) return ClassificationTag::quadric;
            return std::nullopt;
          },
          [](const CompleteIntersectionParams& p) -> std::optional<ClassificationTag> {
            if (p.degrees == std::vector<int>{2}) return ClassificationTag::quadric;
            return std::nullopt;
          },
          [](const ScrollParams&) -> std::optional<ClassificationTag> {
            return ClassificationTag::rational_normal_scroll;
          },
          [](const ProductParams& p) -> std::optional<ClassificationTag> {
            // P^1 x P^m with O(b, 1) is the scroll S(b, ..., b).
            if (p.factors.size() == 2) {
              for (std::size_t i = 0; i < 2; ++i) {
                if (p.factors[i] == 1 && p.multidegree[1 - i] == 1) return ClassificationTag::rational_normal_scroll;
              }
            }
            return std::nullopt;
          },
      },
      pair.params());
  if (!tag) {
    throw ConsistencyError("g(L) = 0 but " + pair.label() + " matches none of the minimal-degree families");
  }
  return *tag;
}

LoiZeddaVerdict verdict_from(std::int64_t d, std::int64_t g) {
  if (d + g < 2) return LoiZeddaVerdict::strictly_below;
  if (d + g == 2 && g == 0) return LoiZeddaVerdict::equality;
  return LoiZeddaVerdict::above;
}

}  // namespace

bool InvariantReport::same_invariants(const InvariantReport& o) const {
  return n == o.n && degree == o.degree && canonical_intersection == o.canonical_intersection &&
         sectional_genus == o.sectional_genus && h0 == o.h0 && delta_genus == o.delta_genus &&
         mean_sigma_sq == o.mean_sigma_sq && l2_ratio == o.l2_ratio &&
         minimal_codimension == o.minimal_codimension && loi_zedda == o.loi_zedda && del_pezzo == o.del_pezzo;
}

Rational mean_sigma_sq_formula(int n, std::int64_t degree, std::int64_t genus) {
  return Rational(2 * n) * (Rational(1) + Rational(genus - 1) / Rational(degree));
}

std::int64_t degree(const PolarizedPair& pair) {
  return core_invariants(pair, intersection_ring(pair)).degree;
}

std::int64_t canonical_intersection(const PolarizedPair& pair) {
  return core_invariants(pair, intersection_ring(pair)).canonical_intersection;
}

std::int64_t sectional_genus(const PolarizedPair& pair) {
  return core_invariants(pair, intersection_ring(pair)).genus;
}

std::int64_t h0(const PolarizedPair& pair) {
  return std::visit(overloaded{
                        [](const ProjectiveSpaceParams& p) { return binomial(p.n + p.twist, p.n); },
                        [](const HypersurfaceParams& p) { return std::int64_t{p.n} + 2; },
                        [](const CompleteIntersectionParams& p) {
                          return std::int64_t{p.n} + static_cast<std::int64_t>(p.degrees.size()) + 1;
                        },
                        [](const ScrollParams& p) {
                          std::int64_t s = 0;
                          for (int a : p.a) s += a + 1;
                          return s;
                        },
                        [](const ProductParams& p) {
                          std::int64_t s = 1;
                          for (std::size_t i = 0; i < p.factors.size(); ++i) {
                            s *= binomial(p.factors[i] + p.multidegree[i], p.factors[i]);
                          }
                          return s;
                        },
                    },
                    pair.params());
}

std::int64_t delta_genus(const PolarizedPair& pair) {
  return pair.dimension() + degree(pair) - h0(pair);
}

Rational mean_sigma_sq(const PolarizedPair& pair) {
  const CoreInvariants c = core_invariants(pair, intersection_ring(pair));
  return mean_sigma_sq_formula(pair.dimension(), c.degree, c.genus);
}

Rational l2_ratio(const PolarizedPair& pair) {
  const CoreInvariants c = core_invariants(pair, intersection_ring(pair));
  return mean_sigma_sq_formula(pair.dimension(), c.degree, c.genus) * Rational(c.degree);
}

LoiZeddaVerdict loi_zedda_classify(const PolarizedPair& pair) {
  const CoreInvariants c = core_invariants(pair, intersection_ring(pair));
  return verdict_from(c.degree, c.genus);
}

std::optional<std::int64_t> minimal_codimension(const PolarizedPair& pair) {
  if (delta_genus(pair) != 0) return std::nullopt;
  return h0(pair) - pair.dimension() - 1;
}

ClassificationTag classify(const PolarizedPair& pair) {
  const CoreInvariants c = core_invariants(pair, intersection_ring(pair));
  return classify_from(pair, c.degree, c.genus, pair.dimension() + c.degree - h0(pair));
}

bool is_del_pezzo(const PolarizedPair& pair) { return del_pezzo_in_ring(intersection_ring(pair)); }

InvariantReport invariant_report(const PolarizedPair& pair) {
  const PolarizedRing ring = intersection_ring(pair);
  const CoreInvariants c = core_invariants(pair, ring);
  InvariantReport r;
  r.n = pair.dimension();
  r.degree = c.degree;
  r.canonical_intersection = c.canonical_intersection;
  r.sectional_genus = c.genus;
  r.h0 = h0(pair);
  r.delta_genus = r.n + r.degree - r.h0;
  r.mean_sigma_sq = mean_sigma_sq_formula(r.n, r.degree, r.sectional_genus);
  r.l2_ratio = r.mean_sigma_sq * Rational(r.degree);
  if (r.delta_genus == 0) r.minimal_codimension = r.h0 - r.n - 1;
  r.loi_zedda = verdict_from(r.degree, r.sectional_genus);
  r.tag = classify_from(pair, r.degree, r.sectional_genus, r.delta_genus);
  r.del_pezzo = del_pezzo_in_ring(ring);
  return r;
}

std::int64_t degree_closed_form(const PolarizedPair& pair) {
  return std::visit(overloaded{
                        [](const ProjectiveSpaceParams& p) {
                          std::int64_t d = 1;
                          for (int i = 0; i < p.n; ++i) d *= p.twist;
                          return d;
                        },
                        [](const HypersurfaceParams& p) { return std::int64_t{p.degree}; },
                        [](const CompleteIntersectionParams& p) {
                          std::int64_t d = 1;
                          for (int x : p.degrees) d *= x;
                          return d;
                        },
                        [](const ScrollParams& p) {
                          return std::int64_t{std::accumulate(p.a.begin(), p.a.end(), 0)};
                        },
                        [](const ProductParams& p) {
                          // multinomial(n; a_1..a_k) * prod d_i^{a_i}
                          std::int64_t d = 1;
                          int placed = 0;
                          for (std::size_t i = 0; i < p.factors.size(); ++i) {
                            placed += p.factors[i];
                            d *= binomial(placed, p.factors[i]);
                            for (int j = 0; j < p.factors[i]; ++j) d *= p.multidegree[i];
                          }
                          return d;
                        },
                    },
                    pair.params());
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Products as sorted lists of (factor dimension, degree) pairs with sum of
// dimensions n and at least two factors. `accept` sees the partial product
// of d_i^{a_i} and prunes when it returns false.
void for_each_product(int n, int max_twist, const std::function<bool(std::int64_t)>& accept,
                      const std::function<void(const std::vector<int>&, const std::vector<int>&)>& emit) {
  std::vector<int> factors;
  std::vector<int> degrees;
  std::function<void(int, int, int, std::int64_t)> rec = [&](int remaining, int min_a, int min_d,
                                                              std::int64_t partial) {
    if (remaining == 0) {
      if (factors.size() >= 2) emit(factors, degrees);
      return;
    }
    for (int a = min_a; a <= remaining; ++a) {
      if (factors.empty() && a == n) continue;  // a single factor is projective_space
      for (int d = (a == min_a ? min_d : 1); d <= max_twist; ++d) {
        std::int64_t next = partial;
        for (int j = 0; j < a; ++j) next *= d;
        if (!accept(next)) break;
        factors.push_back(a);
        degrees.push_back(d);
        rec(remaining - a, a, d, next);
        factors.pop_back();
        degrees.pop_back();
      }
    }
  };
  rec(n, 1, 1, 1);
}

void for_each_pair_of_dimension(int n, std::optional<Family> family, int max_twist, int max_entry,
                                int max_codimension, std::int64_t max_degree,
                                const std::function<void(PolarizedPair)>& emit) {
  auto wanted = [&](Family f) { return !family || *family == f; };
  if (wanted(Family::projective_space)) {
    for (int t = 1; t <= max_twist; ++t) {
      auto pair = PolarizedPair::projective_space(n, t);
      if (degree_closed_form(pair) > max_degree) break;
      emit(pair);
    }
  }
  if (wanted(Family::hypersurface)) {
    for (int d = 2; d <= max_entry && d <= max_degree; ++d) emit(PolarizedPair::hypersurface(n, d));
  }
  if (wanted(Family::complete_intersection)) {
    for (int c = 2; c <= max_codimension; ++c) {
      for_each_multiset(
          c, 2, max_entry,
          [&](const std::vector<int>& v) {
            std::int64_t prod = 1;
            for (int x : v) prod *= x;
            for (std::size_t i = v.size(); i < static_cast<std::size_t>(c); ++i) prod *= v.back();
            return prod <= max_degree;
          },
          [&](const std::vector<int>& v) { emit(PolarizedPair::complete_intersection(n, v)); });
    }
  }
  if (wanted(Family::scroll)) {
    for_each_multiset(
        n, 1, max_entry,
        [&](const std::vector<int>& v) {
          // remaining entries are at least v.back()
          std::int64_t lowest = 0;
          for (int x : v) lowest += x;
          lowest += static_cast<std::int64_t>(n - v.size()) * v.back();
          return lowest <= max_degree;
        },
        [&](const std::vector<int>& v) { emit(PolarizedPair::scroll(v)); });
  }
  if (wanted(Family::product)) {
    for_each_product(
        n, max_twist, [&](std::int64_t partial) { return partial <= max_degree; },
        [&](const std::vector<int>& f, const std::vector<int>& d) {
          auto pair = PolarizedPair::product(f, d);
          if (degree_closed_form(pair) <= max_degree) emit(pair);
        });
  }
}

}  // namespace

std::vector<PolarizedPair> scan_grid(const ScanBounds& bounds) {
  std::vector<PolarizedPair> out;
  const std::int64_t unbounded = std::numeric_limits<std::int64_t>::max();
  for (int n = 1; n <= bounds.max_n; ++n) {
    for_each_pair_of_dimension(n, std::nullopt, bounds.max_parameter, bounds.max_parameter,
                               bounds.max_codimension, unbounded,
                               [&](PolarizedPair p) { out.push_back(std::move(p)); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PolarizedPair> enumerate_by_degree(int n, std::int64_t max_degree, std::optional<Family> family) {
  if (n < 1) throw UsageError("n must be ≥ 1");
  std::vector<PolarizedPair> out;
  const int bound = static_cast<int>(std::min<std::int64_t>(max_degree, std::numeric_limits<int>::max()));
  // Codimension c forces degree >= 2^c.
  int max_codimension = 0;
  while ((std::int64_t{1} << (max_codimension + 1)) <= max_degree) ++max_codimension;
  for_each_pair_of_dimension(n, family, bound, bound, max_codimension, max_degree,
                             [&](PolarizedPair p) { out.push_back(std::move(p)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> sigma_spectrum(int n, std::int64_t d_max) {
  if (n < 1 || d_max < 1) throw UsageError("sigma_spectrum needs n ≥ 1 and d_max ≥ 1");
  std::set<Rational> values{Rational(2 * n)};
  for (const auto& pair : enumerate_by_degree(n, d_max)) {
    const PolarizedRing ring = intersection_ring(pair);
    const CoreInvariants c = core_invariants(pair, ring);
    if (c.degree > d_max) continue;
    if (c.genus == 0) values.insert(mean_sigma_sq_formula(n, c.degree, c.genus));
  }
  return {values.begin(), values.end()};
}

GapReport second_gap_check(int n, std::int64_t d_max) {
  if (n < 3) throw UsageError("second gap check requires n ≥ 3 (the gap (n, 2n-2) is empty otherwise)");
  if (d_max < n) throw UsageError("second gap check requires d_max ≥ n");
  const Rational lo(n);
  const Rational hi(2 * n - 2);
  GapReport report;
  report.holds = true;
  bool found = false;
  for (const Rational& v : sigma_spectrum(n, d_max)) {
    if (v > lo && v < hi) report.holds = false;
    if (v > lo && !found) {
      report.min_above_n = v;
      found = true;
    }
  }
  return report;
}

}  // namespace polrig
