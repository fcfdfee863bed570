#pragma once

// Catalog of polarized pairs (M, L) and their exact invariants: degree,
// sectional genus, Delta-genus, h^0(M, L), the mean squared second
// fundamental form and the classification gates built on them.

#include "polrig/chowring.hpp"
#include "polrig/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace polrig {

enum class Family { projective_space, hypersurface, complete_intersection, scroll, product };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

/// (P^n, O(twist)); twist 2 on P^2 is the Veronese surface.
struct ProjectiveSpaceParams {
  int n = 1;
  int twist = 1;
  auto operator<=>(const ProjectiveSpaceParams&) const = default;
};

/// Smooth hypersurface of the given degree in P^{n+1} with L = O(1).
struct HypersurfaceParams {
  int n = 1;
  int degree = 2;
  auto operator<=>(const HypersurfaceParams&) const = default;
};

/// Smooth complete intersection of multidegree `degrees` in P^{n+c} with L = O(1).
struct CompleteIntersectionParams {
  int n = 1;
  std::vector<int> degrees;
  auto operator<=>(const CompleteIntersectionParams&) const = default;
};

/// Rational normal scroll S(a_1..a_n) = P(O(a_1) + ... + O(a_n)) over P^1 with L = O(1).
struct ScrollParams {
  std::vector<int> a;
  auto operator<=>(const ScrollParams&) const = default;
};

/// P^{factors[0]} x ... x P^{factors[k-1]} with L = O(multidegree).
struct ProductParams {
  std::vector<int> factors;
  std::vector<int> multidegree;
  auto operator<=>(const ProductParams&) const = default;
};

class PolarizedPair {
 public:
  using Params = std::variant<ProjectiveSpaceParams, HypersurfaceParams, CompleteIntersectionParams,
                              ScrollParams, ProductParams>;

  // Factories validate parameters and throw InvalidPair naming the offending field.
  static PolarizedPair projective_space(int n, int twist = 1);
  static PolarizedPair hypersurface(int n, int degree);
  static PolarizedPair complete_intersection(int n, std::vector<int> degrees);
  static PolarizedPair scroll(std::vector<int> a);
  static PolarizedPair product(std::vector<int> factors, std::vector<int> multidegree);

  Family family() const noexcept { return static_cast<Family>(params_.index()); }
  int dimension() const noexcept;
  const Params& params() const noexcept { return params_; }

  /// e.g. "scroll(1,2,3)", "product([1,2],[1,1])".
  std::string label() const;

  auto operator<=>(const PolarizedPair&) const = default;
  bool operator==(const PolarizedPair&) const = default;

 private:
  explicit PolarizedPair(Params p) : params_(std::move(p)) {}
  Params params_;
};

/// Intersection ring of a catalog pair. Integrals over M are computed as
/// integrate(fundamental_class * c), which is the push-forward into the
/// ambient ring for complete intersections and the identity otherwise.
struct PolarizedRing {
  chowring::RingHandle ring;
  int n = 0;
  chowring::ChowClass hyperplane;  // L
  chowring::ChowClass canonical;   // K_M
  chowring::ChowClass fundamental_class;

  Rational integrate_on_m(const chowring::ChowClass& c) const;
};

PolarizedRing intersection_ring(const PolarizedPair& pair);

enum class ClassificationTag {
  linear,
  quadric,
  veronese_surface,
  rational_normal_scroll,
  genus_one_boundary,
  higher
};
std::string_view tag_name(ClassificationTag t);

enum class LoiZeddaVerdict { strictly_below, equality, above };
std::string_view verdict_name(LoiZeddaVerdict v);

struct InvariantReport {
  int n = 0;
  std::int64_t degree = 0;
  std::int64_t canonical_intersection = 0;
  std::int64_t sectional_genus = 0;
  std::int64_t h0 = 0;
  std::int64_t delta_genus = 0;
  Rational mean_sigma_sq;
  Rational l2_ratio;
  std::optional<std::int64_t> minimal_codimension;
  LoiZeddaVerdict loi_zedda = LoiZeddaVerdict::above;
  ClassificationTag tag = ClassificationTag::higher;
  bool del_pezzo = false;

  /// Field-by-field equality ignoring the classification tag.
  bool same_invariants(const InvariantReport& other) const;
};

std::int64_t degree(const PolarizedPair& pair);
std::int64_t canonical_intersection(const PolarizedPair& pair);
std::int64_t sectional_genus(const PolarizedPair& pair);
std::int64_t h0(const PolarizedPair& pair);
std::int64_t delta_genus(const PolarizedPair& pair);
Rational mean_sigma_sq(const PolarizedPair& pair);
Rational l2_ratio(const PolarizedPair& pair);
LoiZeddaVerdict loi_zedda_classify(const PolarizedPair& pair);
/// h^0 - n - 1 when Delta = 0; std::nullopt ("not computed") otherwise.
std::optional<std::int64_t> minimal_codimension(const PolarizedPair& pair);
ClassificationTag classify(const PolarizedPair& pair);
/// K_M = (1 - n) L as classes in the intersection ring.
bool is_del_pezzo(const PolarizedPair& pair);

InvariantReport invariant_report(const PolarizedPair& pair);

/// 2n [1 + (g - 1)/d].
Rational mean_sigma_sq_formula(int n, std::int64_t degree, std::int64_t genus);

/// Closed-form L^n used to bound enumerations before building any ring.
std::int64_t degree_closed_form(const PolarizedPair& pair);

// ---------------------------------------------------------------------------
// Enumeration and the second gap

struct ScanBounds {
  int max_n = 6;
  int max_parameter = 8;     // twists, hypersurface/CI degrees, scroll entries, multidegrees
  int max_codimension = 3;   // complete intersections
};

/// Every catalog pair within the bounds, sorted by family then parameters.
std::vector<PolarizedPair> scan_grid(const ScanBounds& bounds = {});

/// Pairs of dimension n and degree <= max_degree. With `family` unset, all families.
/// Enumeration is exhaustive; scrolls are listed once per multiset a_1 <= ... <= a_n.
std::vector<PolarizedPair> enumerate_by_degree(int n, std::int64_t max_degree,
                                               std::optional<Family> family = std::nullopt);

/// Sorted, deduplicated mean values of all genus-zero pairs of dimension n and
/// degree <= d_max, together with 2n (the genus-one value).
std::vector<Rational> sigma_spectrum(int n, std::int64_t d_max);

struct GapReport {
  bool holds = false;
  Rational min_above_n;
};

/// No spectrum value in the open interval (n, 2n - 2). Requires n >= 3 and d_max >= n.
GapReport second_gap_check(int n, std::int64_t d_max);

}  // namespace polrig
