#include "dendro/cocycle.hpp"

#include <cmath>

#include "dendro/errors.hpp"
#include "dendro/text_format.hpp"
#include "dendro/tree_ops.hpp"

namespace dendro {

void CocycleValue::add(const Germ& c, const Germ& c2, const Rational& v) {
  if (c == c2) throw InputError("cocycle entry on a repeated germ");
  if (c.base != c2.base) throw InputError("cocycle entry on germs with different base points");
  if (v == 0) return;
  Key key = c < c2 ? Key{c, c2} : Key{c2, c};
  Rational signed_v = c < c2 ? v : Rational(-v);
  auto [it, fresh] = entries_.emplace(key, signed_v);
  if (!fresh) {
    it->second += signed_v;
    if (it->second == 0) entries_.erase(it);
  }
}

Rational CocycleValue::at(const Germ& c, const Germ& c2) const {
  if (c == c2) return Rational(0);
  bool ordered = c < c2;
  auto it = entries_.find(ordered ? Key{c, c2} : Key{c2, c});
  if (it == entries_.end()) return Rational(0);
  return ordered ? it->second : Rational(-it->second);
}

CocycleValue& CocycleValue::operator+=(const CocycleValue& other) {
  for (const auto& [k, v] : other.entries_) add(k.first, k.second, v);
  return *this;
}

CocycleValue CocycleValue::operator-() const {
  CocycleValue out;
  for (const auto& [k, v] : entries_) out.entries_.emplace(k, -v);
  return out;
}

namespace {

// α(p, q) on the fiber over x.
void alpha_at(const Dendrite& tree, const Point& x, const Point& p, const Point& q, CocycleValue& out) {
  auto gp = germ_toward(tree, x, p);
  auto gq = germ_toward(tree, x, q);
  if (gp && gq && *gp != *gq) out.add(*gp, *gq, Rational(1));
}

}  // namespace

CocycleValue alpha(const Dendrite& tree, const Point& p, const Point& q) {
  CocycleValue out;
  for (const auto& x : branch_points(tree)) alpha_at(tree, x, p, q, out);
  return out;
}

CocycleValue omega_coboundary(const Dendrite& tree, const Point& p, const Point& q, const Point& r) {
  return alpha(tree, p, q) + alpha(tree, q, r) + alpha(tree, r, p);
}

CocycleValue omega_at(const Dendrite& tree, const Point& x, const Point& p, const Point& q, const Point& r) {
  CocycleValue out;
  alpha_at(tree, x, p, q, out);
  alpha_at(tree, x, q, r, out);
  alpha_at(tree, x, r, p, out);
  return out;
}

CocycleValue omega(const Dendrite& tree, const Point& p, const Point& q, const Point& r) {
  Point m = median(tree, p, q, r);
  if (order_of_point(tree, m) < 3) return {};
  return omega_at(tree, m, p, q, r);
}

CocycleValue transform(const Dendrite& tree, const CocycleValue& v, const TreeAutomorphism& g) {
  CocycleValue out;
  for (const auto& [k, val] : v.stored()) out.add(g.apply(tree, k.first), g.apply(tree, k.second), val);
  return out;
}

NormExponent NormExponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity") return NormExponent{true, Rational(0)};
  return NormExponent{false, parse_rational(text)};
}

LpNorm lp_norm(const CocycleValue& v, const NormExponent& e) {
  if (!e.infinite && e.p < 1) throw InputError("lp_norm needs p >= 1");
  LpNorm out;
  if (e.infinite) {
    Rational top(0);
    for (const auto& [k, val] : v.stored()) top = std::max(top, Rational(abs(val)));
    out.exact = top;
    out.power_sum.reset();
    out.approx = approx(top);
    return out;
  }
  bool integer_p = e.p.get_den() == 1;
  bool unit_entries = true;
  Rational sum(0);
  double sum_d = 0.0;
  const double pd = approx(e.p);
  for (const auto& [k, val] : v.stored()) {
    Rational a = abs(val);
    if (a != 1) unit_entries = false;
    if (integer_p) {
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), a.get_num().get_mpz_t(), e.p.get_num().get_ui());
      mpz_pow_ui(den.get_mpz_t(), a.get_den().get_mpz_t(), e.p.get_num().get_ui());
      sum += 2 * Rational(num, den);
    }
    sum_d += 2 * std::pow(approx(a), pd);
  }
  if (integer_p) {
    sum.canonicalize();
    out.power_sum = sum;
  } else if (unit_entries) {
    out.power_sum = Rational(static_cast<long>(v.support_size()));
  }
  if (e.p == 1) out.exact = out.power_sum;
  out.approx = std::pow(sum_d, 1.0 / pd);
  return out;
}

bool cocycle_identity_check(const Dendrite& tree, const Point& p, const Point& q, const Point& r, const Point& s) {
  CocycleValue total = omega_coboundary(tree, q, r, s) - omega_coboundary(tree, p, r, s) +
                       omega_coboundary(tree, p, q, s) - omega_coboundary(tree, p, q, r);
  return total.is_zero();
}

bool nonvanishing_check(const Dendrite& tree, const Point& p, const Point& q, const Point& r) {
  return !omega_at(tree, median(tree, p, q, r), p, q, r).is_zero();
}

bool on_common_arc(const Dendrite& tree, const Point& p, const Point& q, const Point& r) {
  return arc(tree, p, q).carrier.contains(r) || arc(tree, q, r).carrier.contains(p) ||
         arc(tree, r, p).carrier.contains(q);
}

std::string format_cocycle(const Dendrite& tree, const CocycleValue& v) {
  std::string out;
  for (const auto& [k, val] : v.stored()) {
    out += "entry " + format_point(tree, k.first.base) + " " + format_germ(tree, k.first) + " " +
           format_germ(tree, k.second) + " " + to_string(val) + "\n";
  }
  return out;
}

CocycleValue parse_cocycle(const Dendrite& tree, std::string_view text, const std::string& source) {
  CocycleValue out;
  for (const auto& line : tokenize_lines(text)) {
    const auto& t = line.tokens;
    if (t[0] != "entry") throw ParseError(source, line.number, t[0], "unknown keyword");
    if (t.size() != 5) throw ParseError(source, line.number, t[0], "expected 'entry <point> <germ> <germ> <value>'");
    try {
      Point base = parse_point(tree, t[1]);
      out.add(parse_germ(tree, base, t[2]), parse_germ(tree, base, t[3]), parse_rational(t[4]));
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& err) {
      throw ParseError(source, line.number, t[1], err.what());
    }
  }
  return out;
}

}  // namespace dendro
