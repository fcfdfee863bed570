#include "polrig/chowring.hpp"

#include "polrig/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>

namespace polrig {

std::string to_exact_string(const Rational& r) {
  if (is_integer(r)) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_decimal_string(const Rational& r) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), to_double(r));
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::int64_t to_int64(const Rational& r, const char* what) {
  if (!is_integer(r)) {
    throw ConsistencyError(std::string(what) + " is not an integer: " + to_exact_string(r));
  }
  const Integer& v = boost::multiprecision::numerator(r);
  if (v > Integer(std::numeric_limits<std::int64_t>::max()) ||
      v < Integer(std::numeric_limits<std::int64_t>::min())) {
    throw ConsistencyError(std::string(what) + " overflows 64 bits: " + v.str());
  }
  return v.convert_to<std::int64_t>();
}

}  // namespace polrig

namespace polrig::chowring {

namespace {

// Reduction of any validated ring terminates long before this; the cap only
// turns a logic error into a diagnostic instead of a hang.
constexpr std::size_t kMaxRewriteSteps = 1u << 22;

bool divides(const Exponents& d, const Exponents& m) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > m[i]) return false;
  }
  return true;
}

std::string format_monomial(const RingPresentation& p, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += p.generators[i].name;
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string format_terms(const RingPresentation& p, const Ring::TermMap& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    if (!out.empty()) out += " + ";
    const std::string mono = format_monomial(p, it->first.exponents);
    if (mono == "1") {
      out += to_exact_string(it->second);
    } else if (it->second == 1) {
      out += mono;
    } else {
      out += to_exact_string(it->second) + "*" + mono;
    }
  }
  return out;
}

void accumulate(Ring::TermMap& into, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = into.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) into.erase(it);
  }
}

void require_same_ring(const ChowClass& a, const ChowClass& b) {
  if (!a.ring() || !b.ring()) throw UsageError("operation on a class with no ring");
  if (a.ring() != b.ring()) throw UsageError("classes belong to different rings");
}

}  // namespace

RingHandle make_ring(RingPresentation presentation) {
  std::shared_ptr<Ring> ring(new Ring(std::move(presentation)));
  ring->validate();
  return ring;
}

Ring::Ring(RingPresentation presentation) : presentation_(std::move(presentation)) {
  for (const auto& g : presentation_.generators) grades_.push_back(g.grade);
}

std::size_t Ring::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < presentation_.generators.size(); ++i) {
    if (presentation_.generators[i].name == name) return i;
  }
  throw UsageError("unknown generator '" + name + "'");
}

Monomial Ring::monomial(const Exponents& exponents) const {
  if (exponents.size() != grades_.size()) {
    throw UsageError("exponent vector has " + std::to_string(exponents.size()) +
                     " entries, ring has " + std::to_string(grades_.size()) + " generators");
  }
  int grade = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) throw UsageError("negative exponent");
    grade += exponents[i] * grades_[i];
  }
  return Monomial{grade, exponents};
}

void Ring::validate() {
  const auto& p = presentation_;
  const std::size_t k = p.generators.size();
  if (k == 0) throw ConfigurationError("ring needs at least one generator");
  if (p.dimension < 0) throw ConfigurationError("truncation grade must be nonnegative");
  std::set<std::string> names;
  for (const auto& g : p.generators) {
    if (g.name.empty()) throw ConfigurationError("generator with empty name");
    if (g.grade < 1) throw ConfigurationError("generator '" + g.name + "' must have positive grade");
    if (!names.insert(g.name).second) throw ConfigurationError("duplicate generator '" + g.name + "'");
  }

  auto checked = [&](const Exponents& e, const std::string& where) {
    if (e.size() != k) throw ConfigurationError(where + ": wrong number of exponents");
    for (int x : e) {
      if (x < 0) throw ConfigurationError(where + ": negative exponent");
    }
    return monomial(e);
  };

  std::set<Exponents> lhs_seen;
  for (std::size_t r = 0; r < p.rules.size(); ++r) {
    const auto& rule = p.rules[r];
    const std::string where = "rule " + std::to_string(r);
    const Monomial lhs = checked(rule.lhs, where);
    if (lhs.grade == 0) throw ConfigurationError(where + ": left-hand side is the unit");
    if (!lhs_seen.insert(rule.lhs).second) {
      throw ConfigurationError("ambiguous rule set: two rules rewrite " + format_monomial(p, rule.lhs));
    }
    for (const auto& t : rule.rhs) {
      const Monomial m = checked(t.exponents, where);
      if (m.grade != lhs.grade) {
        throw ConfigurationError(where + " does not terminate: " + format_monomial(p, rule.lhs) + " -> " +
                                 format_monomial(p, t.exponents) + " changes grade " +
                                 std::to_string(lhs.grade) + " -> " + std::to_string(m.grade));
      }
      if (!(m < lhs)) {
        throw ConfigurationError(where + " does not terminate: " + format_monomial(p, t.exponents) +
                                 " is not below " + format_monomial(p, rule.lhs) + " in graded-lex order");
      }
    }
  }

  const Monomial fundamental = checked(p.fundamental, "fundamental monomial");
  if (fundamental.grade != p.dimension) {
    throw ConfigurationError("fundamental monomial has grade " + std::to_string(fundamental.grade) +
                             ", expected " + std::to_string(p.dimension));
  }
  for (const auto& rule : p.rules) {
    if (divides(rule.lhs, p.fundamental)) {
      throw ConfigurationError("fundamental monomial " + format_monomial(p, p.fundamental) + " is not reduced");
    }
  }
  fundamental_ = fundamental;

  // Exhaustive check over every monomial of grade <= n: both rule priorities
  // must agree, and the top grade must collapse onto the fundamental monomial.
  Exponents e(k, 0);
  std::function<void(std::size_t, int)> visit = [&](std::size_t i, int grade) {
    if (i == k) {
      const Monomial m{grade, e};
      const TermMap a = reduce(TermMap{{m, Rational(1)}}, RulePriority::first_listed);
      const TermMap b = reduce(TermMap{{m, Rational(1)}}, RulePriority::last_listed);
      if (a != b) {
        throw ConfigurationError("ambiguous rule set: " + format_monomial(p, e) + " reduces to " +
                                 format_terms(p, a) + " or " + format_terms(p, b));
      }
      if (grade == p.dimension) {
        for (const auto& [mono, c] : a) {
          if (!(mono == fundamental_)) {
            throw ConfigurationError("top-grade monomial " + format_monomial(p, e) +
                                     " does not reduce to a multiple of " + format_monomial(p, p.fundamental));
          }
        }
      }
      return;
    }
    for (int x = 0; grade + x * grades_[i] <= p.dimension; ++x) {
      e[i] = x;
      visit(i + 1, grade + x * grades_[i]);
    }
    e[i] = 0;
  };
  visit(0, 0);
}

Ring::TermMap Ring::reduce(TermMap pending, RulePriority priority) const {
  const auto& rules = presentation_.rules;
  TermMap result;
  std::size_t steps = 0;
  while (!pending.empty()) {
    auto top = std::prev(pending.end());
    const Monomial m = top->first;
    const Rational c = top->second;
    pending.erase(top);
    if (c == 0 || m.grade > presentation_.dimension) continue;

    const RewriteRule* rule = nullptr;
    if (priority == RulePriority::first_listed) {
      for (const auto& r : rules) {
        if (divides(r.lhs, m.exponents)) { rule = &r; break; }
      }
    } else {
      for (auto it = rules.rbegin(); it != rules.rend(); ++it) {
        if (divides(it->lhs, m.exponents)) { rule = &*it; break; }
      }
    }
    if (rule == nullptr) {
      accumulate(result, m, c);
      continue;
    }
    if (++steps > kMaxRewriteSteps) {
      throw ConfigurationError("rewriting did not terminate within the step limit");
    }
    Exponents quotient = m.exponents;
    for (std::size_t i = 0; i < quotient.size(); ++i) quotient[i] -= rule->lhs[i];
    for (const auto& t : rule->rhs) {
      Exponents e = quotient;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += t.exponents[i];
      accumulate(pending, monomial(e), c * t.coefficient);
    }
  }
  return result;
}

ChowClass Ring::zero() const { return ChowClass(shared_from_this(), {}); }

ChowClass Ring::one() const { return constant(Rational(1)); }

ChowClass Ring::constant(const Rational& value) const {
  return term(value, Exponents(grades_.size(), 0));
}

ChowClass Ring::generator(const std::string& name) const {
  Exponents e(grades_.size(), 0);
  e[generator_index(name)] = 1;
  return term(Rational(1), e);
}

ChowClass Ring::term(const Rational& coefficient, const Exponents& exponents) const {
  TermMap t;
  accumulate(t, monomial(exponents), coefficient);
  return ChowClass(shared_from_this(), reduce(std::move(t)));
}

ChowClass::ChowClass(RingHandle ring, Ring::TermMap terms) : ring_(std::move(ring)), terms_(std::move(terms)) {}

Rational ChowClass::coefficient(const Exponents& exponents) const {
  if (!ring_) return Rational(0);
  auto it = terms_.find(ring_->monomial(exponents));
  return it == terms_.end() ? Rational(0) : it->second;
}

ChowClass ChowClass::graded_part(int grade) const {
  Ring::TermMap out;
  for (const auto& [m, c] : terms_) {
    if (m.grade == grade) out.emplace(m, c);
  }
  return ChowClass(ring_, std::move(out));
}

ChowClass operator+(const ChowClass& a, const ChowClass& b) {
  require_same_ring(a, b);
  Ring::TermMap out = a.terms_;
  for (const auto& [m, c] : b.terms_) accumulate(out, m, c);
  return ChowClass(a.ring_, std::move(out));
}

ChowClass operator-(const ChowClass& a) { return Rational(-1) * a; }

ChowClass operator-(const ChowClass& a, const ChowClass& b) { return a + (-b); }

ChowClass operator*(const Rational& s, const ChowClass& a) {
  if (s == 0) return ChowClass(a.ring_, {});
  Ring::TermMap out = a.terms_;
  for (auto& [m, c] : out) c *= s;
  return ChowClass(a.ring_, std::move(out));
}

ChowClass operator*(const ChowClass& a, const ChowClass& b) {
  require_same_ring(a, b);
  const Ring& ring = *a.ring_;
  Ring::TermMap product;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.grade + mb.grade > ring.dimension()) continue;
      Exponents e = ma.exponents;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += mb.exponents[i];
      accumulate(product, Monomial{ma.grade + mb.grade, std::move(e)}, ca * cb);
    }
  }
  return ChowClass(a.ring_, ring.reduce(std::move(product)));
}

bool operator==(const ChowClass& a, const ChowClass& b) {
  require_same_ring(a, b);
  return a.terms_ == b.terms_;
}

std::string ChowClass::to_string() const {
  if (!ring_) return "0";
  return format_terms(ring_->presentation(), terms_);
}

ChowClass multiply(const ChowClass& a, const ChowClass& b) { return a * b; }

ChowClass power(const ChowClass& c, unsigned k) {
  if (!c.ring()) throw UsageError("power of a class with no ring");
  ChowClass result = c.ring()->one();
  for (unsigned i = 0; i < k; ++i) result = result * c;
  return result;
}

Rational integrate(const ChowClass& c) {
  if (!c.ring()) throw UsageError("integral of a class with no ring");
  const auto& p = c.ring()->presentation();
  return c.coefficient(p.fundamental) * Rational(p.fundamental_integral);
}

}  // namespace polrig::chowring
