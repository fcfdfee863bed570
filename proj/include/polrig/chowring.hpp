#pragma once

// Truncated graded quotient rings with exact rational coefficients.
//
// A ring is presented by graded generators, rewrite rules (monomial ->
// linear combination of monomials of the same grade that are smaller in
// graded-lex order, or -> 0), a truncation grade n, and a declared integral
// of one grade-n "fundamental" monomial. Everything of grade > n is zero.
// This is enough to evaluate intersection numbers on projective spaces,
// complete intersections (via push-forward into the ambient ring), products
// of projective spaces and rational normal scrolls.

#include "polrig/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace polrig::chowring {

using Exponents = std::vector<int>;

struct Generator {
  std::string name;
  int grade = 1;
};

struct Term {
  Rational coefficient;
  Exponents exponents;
};

/// lhs -> sum of rhs terms. An empty rhs kills the monomial.
struct RewriteRule {
  Exponents lhs;
  std::vector<Term> rhs;
};

struct RingPresentation {
  std::vector<Generator> generators;
  int dimension = 0;  // truncation grade
  std::vector<RewriteRule> rules;
  Exponents fundamental;
  Integer fundamental_integral{1};
};

/// Graded-lex key: total grade first, then exponents in generator order.
struct Monomial {
  int grade = 0;
  Exponents exponents;

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

/// Which rule to apply when several left-hand sides divide the current monomial.
enum class RulePriority { first_listed, last_listed };

class Ring;
using RingHandle = std::shared_ptr<const Ring>;
class ChowClass;

/// Validates the presentation and returns a shared immutable handle.
/// Throws ConfigurationError for malformed, non-terminating or ambiguous rule sets.
RingHandle make_ring(RingPresentation presentation);

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  using TermMap = std::map<Monomial, Rational>;

  const RingPresentation& presentation() const noexcept { return presentation_; }
  int dimension() const noexcept { return presentation_.dimension; }
  std::size_t generator_count() const noexcept { return presentation_.generators.size(); }
  std::size_t generator_index(const std::string& name) const;

  Monomial monomial(const Exponents& exponents) const;

  ChowClass zero() const;
  ChowClass one() const;
  ChowClass constant(const Rational& value) const;
  ChowClass generator(const std::string& name) const;
  ChowClass term(const Rational& coefficient, const Exponents& exponents) const;

  /// Normal form of a linear combination. Highest monomial is rewritten first.
  TermMap reduce(TermMap terms, RulePriority priority = RulePriority::first_listed) const;

 private:
  friend RingHandle make_ring(RingPresentation presentation);
  explicit Ring(RingPresentation presentation);
  void validate();

  RingPresentation presentation_;
  std::vector<int> grades_;
  Monomial fundamental_;
};

class ChowClass {
 public:
  ChowClass() = default;

  const RingHandle& ring() const noexcept { return ring_; }
  const Ring::TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient of a reduced monomial (zero when absent).
  Rational coefficient(const Exponents& exponents) const;

  /// Homogeneous part of the given grade.
  ChowClass graded_part(int grade) const;

  friend ChowClass operator+(const ChowClass& a, const ChowClass& b);
  friend ChowClass operator-(const ChowClass& a, const ChowClass& b);
  friend ChowClass operator-(const ChowClass& a);
  friend ChowClass operator*(const ChowClass& a, const ChowClass& b);
  friend ChowClass operator*(const Rational& s, const ChowClass& a);
  friend bool operator==(const ChowClass& a, const ChowClass& b);

  std::string to_string() const;

 private:
  friend class Ring;
  ChowClass(RingHandle ring, Ring::TermMap terms);

  RingHandle ring_;
  Ring::TermMap terms_;
};

ChowClass multiply(const ChowClass& a, const ChowClass& b);
ChowClass power(const ChowClass& c, unsigned k);

/// Coefficient of the fundamental monomial times its declared integral.
Rational integrate(const ChowClass& c);

}  // namespace polrig::chowring
