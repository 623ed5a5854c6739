#include "udp6/tropical.hpp"

#include <algorithm>
#include <stdexcept>

namespace udp6 {

Sign sign_from_int(long value) {
  if (value == 1) return Sign::plus;
  if (value == -1) return Sign::minus;
  throw ParseError("sign must be +1 or -1, got " + std::to_string(value));
}

const Rational& ExtendedAmplitude::value() const {
  if (!value_) throw std::logic_error("value() of bottom amplitude");
  return *value_;
}

ExtendedAmplitude ExtendedAmplitude::scaled(const Rational& factor) const {
  if (!value_) return {};
  return Rational(*value_ * factor);
}

ExtendedAmplitude operator+(const ExtendedAmplitude& a, const ExtendedAmplitude& b) {
  if (a.is_bottom() || b.is_bottom()) return {};
  return Rational(*a.value_ + *b.value_);
}

bool operator==(const ExtendedAmplitude& a, const ExtendedAmplitude& b) {
  if (a.is_bottom() || b.is_bottom()) return a.is_bottom() && b.is_bottom();
  return *a.value_ == *b.value_;
}

std::strong_ordering operator<=>(const ExtendedAmplitude& a, const ExtendedAmplitude& b) {
  if (a.is_bottom()) return b.is_bottom() ? std::strong_ordering::equal : std::strong_ordering::less;
  if (b.is_bottom()) return std::strong_ordering::greater;
  return compare(*a.value_, *b.value_);
}

std::string ExtendedAmplitude::to_string() const { return value_ ? udp6::to_string(*value_) : "-inf"; }

ExtendedAmplitude tmax(const ExtendedAmplitude& a, const ExtendedAmplitude& b) { return a < b ? b : a; }

ExtendedAmplitude tmax(std::span<const ExtendedAmplitude> terms) {
  if (terms.empty()) throw std::invalid_argument("tmax of an empty list");
  ExtendedAmplitude best = terms.front();
  for (const auto& t : terms.subspan(1))
    if (best < t) best = t;
  return best;
}

ExtendedAmplitude tmax(std::initializer_list<ExtendedAmplitude> terms) {
  return tmax(std::span<const ExtendedAmplitude>(terms.begin(), terms.size()));
}

ExtendedAmplitude parity_indicator(Sign zeta) {
  return zeta == Sign::plus ? ExtendedAmplitude(0L) : ExtendedAmplitude::bottom();
}

bool exchange_identity_check(const std::array<ExtendedAmplitude, 4>& x,
                             const std::array<ExtendedAmplitude, 4>& w) {
  const bool premises = tmax(x[0], x[1]) == tmax(x[2], x[3]) && tmax(w[0], w[1]) == tmax(w[2], w[3]);
  if (!premises) return false;
  const auto lhs = tmax({x[0] + w[0], x[2] + w[2], x[1] + w[3], x[3] + w[1]});
  const auto rhs = tmax({x[1] + w[1], x[3] + w[3], x[0] + w[2], x[2] + w[0]});
  return lhs == rhs;
}

// ---------------------------------------------------------------------------

ExtendedAmplitude LinTerm::at(const Rational& x) const {
  if (intercept.is_bottom()) return {};
  return Rational(slope * x + intercept.value());
}

bool Interval::contains(const Rational& x) const { return (!lo || *lo <= x) && (!hi || x <= *hi); }

namespace {

// -inf < finite for lower endpoints.
bool lo_less(const Interval& a, const Interval& b) {
  if (!a.lo) return b.lo.has_value();
  if (!b.lo) return false;
  return *a.lo < *b.lo;
}

// b starts no later than a ends (closed intervals: sharing an endpoint touches).
bool reaches(const Interval& a, const Interval& b) {
  if (!a.hi || !b.lo) return true;
  return *b.lo <= *a.hi;
}

}  // namespace

SolutionSet::SolutionSet(std::vector<Interval> pieces) {
  for (const auto& p : pieces)
    if (p.lo && p.hi && *p.hi < *p.lo) throw std::invalid_argument("interval with lo > hi");
  std::sort(pieces.begin(), pieces.end(), lo_less);
  for (auto& p : pieces) {
    if (!pieces_.empty() && reaches(pieces_.back(), p)) {
      auto& last = pieces_.back();
      if (!p.hi)
        last.hi.reset();
      else if (last.hi && *last.hi < *p.hi)
        last.hi = p.hi;
    } else {
      pieces_.push_back(std::move(p));
    }
  }
}

bool SolutionSet::contains(const Rational& x) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& i) { return i.contains(x); });
}

std::string SolutionSet::to_string() const {
  if (pieces_.empty()) return "{}";
  std::string out;
  for (const auto& p : pieces_) {
    if (!out.empty()) out += " u ";
    if (p.is_point()) {
      out += "{" + udp6::to_string(*p.lo) + "}";
      continue;
    }
    out += p.lo ? "[" + udp6::to_string(*p.lo) : "(-inf";
    out += ", ";
    out += p.hi ? udp6::to_string(*p.hi) + "]" : "+inf)";
  }
  return out;
}

namespace {

ExtendedAmplitude side_at(std::span<const LinTerm> side, const Rational& x) {
  ExtendedAmplitude best;
  for (const auto& t : side) best = tmax(best, t.at(x));
  return best;
}

}  // namespace

SolutionSet solve_one_unknown(std::span<const LinTerm> lhs, std::span<const LinTerm> rhs) {
  std::vector<LinTerm> left, right;
  for (const auto& t : lhs)
    if (!t.inert()) left.push_back(t);
  for (const auto& t : rhs)
    if (!t.inert()) right.push_back(t);
  if (left.empty() || right.empty())
    throw std::invalid_argument("solve_one_unknown: a side has no finite term");

  std::vector<const LinTerm*> all;
  for (const auto& t : left) all.push_back(&t);
  for (const auto& t : right) all.push_back(&t);
  for (const auto* t : all)
    if (t->slope < 0 || t->slope > 2) throw std::invalid_argument("solve_one_unknown: slope outside {0,1,2}");

  // Between consecutive crossings of any two lines both sides are single
  // lines, so equality is decided by one sample per open region.
  std::vector<Rational> crossings;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const int ds = all[i]->slope - all[j]->slope;
      if (ds == 0) continue;
      crossings.emplace_back((all[j]->intercept.value() - all[i]->intercept.value()) / ds);
    }
  std::sort(crossings.begin(), crossings.end());
  crossings.erase(std::unique(crossings.begin(), crossings.end()), crossings.end());

  const auto equal_at = [&](const Rational& x) { return side_at(left, x) == side_at(right, x); };

  if (crossings.empty()) return equal_at(Rational(0)) ? SolutionSet::everything() : SolutionSet{};

  std::vector<Interval> pieces;
  if (equal_at(Rational(crossings.front() - 1))) pieces.push_back({std::nullopt, crossings.front()});
  for (std::size_t k = 0; k < crossings.size(); ++k) {
    if (equal_at(crossings[k])) pieces.push_back({crossings[k], crossings[k]});
    if (k + 1 < crossings.size() && equal_at(Rational((crossings[k] + crossings[k + 1]) / 2)))
      pieces.push_back({crossings[k], crossings[k + 1]});
  }
  if (equal_at(Rational(crossings.back() + 1))) pieces.push_back({crossings.back(), std::nullopt});
  return SolutionSet(std::move(pieces));
}

}  // namespace udp6
