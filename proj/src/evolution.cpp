#include "udp6/evolution.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace udp6 {

namespace {

// Both equations share one shape. For the z-equation the driver is y_m, the
// partner is z_m and the unknown is z_{m+1}; low pair (A3, A4), high pair
// (A1, A2), constant B3+B4. The y-equation swaps the roles of A and B with
// driver z_{m+1}, partner y_m and unknown y_{m+1}.
struct EquationShape {
  Rational low1, low2;    // A3, A4 or B3, B4
  Rational high1, high2;  // A1, A2 or B1, B2
  Rational constant;      // B3+B4 or A3+A4
};

EquationShape z_shape(const Params& p) { return {p.A(3), p.A(4), p.A(1), p.A(2), p.B(3) + p.B(4)}; }
EquationShape y_shape(const Params& p) { return {p.B(3), p.B(4), p.B(1), p.B(2), p.A(3) + p.A(4)}; }

Rational noparity_partner(const EquationShape& s, const Rational& mQ, const Rational& x, const Rational& partner) {
  return s.constant + rmax(Rational(mQ + s.high1), x) + rmax(Rational(mQ + s.high2), x) - partner - rmax(s.low1, x) -
         rmax(s.low2, x);
}

std::vector<ParityPair> parity_candidates(const EquationShape& s, const Rational& mQ, const ParityPair& driver,
                                          const ParityPair& partner,
                                          const std::function<bool(const ParityPair&)>& valid) {
  std::vector<ParityPair> out;
  const auto offer = [&](ParityPair c) {
    if (valid(c)) out.push_back(std::move(c));
  };

  if (driver.sign == Sign::minus) {
    offer({partner.sign, noparity_partner(s, mQ, driver.amp, partner.amp)});
  } else {
    const Rational& X = driver.amp;
    const Rational& P = partner.amp;
    const Rational U = rmax(Rational(2 * X), Rational(s.low1 + s.low2));
    const Rational U1 = rmax(s.low1, s.low2) + X;
    const Rational V = rmax(Rational(2 * mQ + s.high1 + s.high2), Rational(2 * X));
    const Rational V1 = rmax(s.high1, s.high2) + mQ + X;
    const Rational K = s.constant - P;
    // Ties U = U1 or V = V1 belong to both sides of each split.
    if (U >= U1 && V >= V1) offer({partner.sign, V - U + K});
    if (U <= U1 && V <= V1) offer({partner.sign, V1 - U1 + K});
    if (U >= U1 && V <= V1) offer({-partner.sign, V1 - U + K});
    if (U <= U1 && V >= V1) offer({-partner.sign, V - U1 + K});
  }

  std::sort(out.begin(), out.end(), branch_order_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw std::logic_error("parity step produced no admissible candidate");
  return out;
}

}  // namespace

Rational step_z_noparity(const Params& p, Index m, const Rational& y, const Rational& z) {
  return noparity_partner(z_shape(p), mq(p, m), y, z);
}

Rational step_y_noparity(const Params& p, Index m, const Rational& y, const Rational& z_next) {
  return noparity_partner(y_shape(p), mq(p, m), z_next, y);
}

Rational step_back_y_noparity(const Params& p, Index m, const Rational& y, const Rational& z) {
  return noparity_partner(y_shape(p), mq(p, m - 1), z, y);
}

Rational step_back_z_noparity(const Params& p, Index m, const Rational& y_prev, const Rational& z) {
  return noparity_partner(z_shape(p), mq(p, m - 1), y_prev, z);
}

std::vector<ParityPair> step_z_parity(const Params& p, Index m, const ParityPair& y, const ParityPair& z) {
  require_constraint(p);
  return parity_candidates(z_shape(p), mq(p, m), y, z,
                           [&](const ParityPair& c) { return residual_zz(p, m, y, z, c); });
}

std::vector<ParityPair> step_y_parity(const Params& p, Index m, const ParityPair& y, const ParityPair& z_next) {
  require_constraint(p);
  return parity_candidates(y_shape(p), mq(p, m), z_next, y,
                           [&](const ParityPair& c) { return residual_yy(p, m, y, c, z_next); });
}

std::vector<ParityPair> step_back_y_parity(const Params& p, Index m, const ParityPair& y, const ParityPair& z) {
  require_constraint(p);
  return parity_candidates(y_shape(p), mq(p, m - 1), z, y,
                           [&](const ParityPair& c) { return residual_yy(p, m - 1, c, y, z); });
}

std::vector<ParityPair> step_back_z_parity(const Params& p, Index m, const ParityPair& y_prev,
                                           const ParityPair& z) {
  require_constraint(p);
  return parity_candidates(z_shape(p), mq(p, m - 1), y_prev, z,
                           [&](const ParityPair& c) { return residual_zz(p, m - 1, y_prev, c, z); });
}

// ---------------------------------------------------------------------------

SolutionTable::SolutionTable(std::vector<StatePair> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 1; i < rows_.size(); ++i)
    if (rows_[i].m != rows_[i - 1].m + 1) throw std::invalid_argument("table rows must have consecutive indices");
}

const StatePair& SolutionTable::at(Index m) const {
  if (!covers(m)) throw std::out_of_range("index " + std::to_string(m) + " outside table window");
  return rows_[static_cast<std::size_t>(m - first())];
}

SolutionTable SolutionTable::shifted(const Rational& c) const {
  std::vector<StatePair> rows = rows_;
  for (auto& r : rows) r = {r.m, r.y.shifted(c), r.z.shifted(c)};
  return SolutionTable(std::move(rows));
}

SolutionTable SolutionTable::scaled(const Rational& factor) const {
  std::vector<StatePair> rows = rows_;
  for (auto& r : rows) r = {r.m, r.y.scaled(factor), r.z.scaled(factor)};
  return SolutionTable(std::move(rows));
}

SolutionTable evolve_noparity(const Params& p, Index m0, const Rational& y0, const Rational& z0, Index m_min,
                              Index m_max) {
  if (m_min > m_max || m0 < m_min || m0 > m_max) throw std::invalid_argument("evolve_noparity: bad window");
  const auto n = static_cast<std::size_t>(m_max - m_min + 1);
  std::vector<Rational> y(n), z(n);
  const auto at = [&](Index m) { return static_cast<std::size_t>(m - m_min); };
  y[at(m0)] = y0;
  z[at(m0)] = z0;
  for (Index m = m0; m < m_max; ++m) {
    z[at(m + 1)] = step_z_noparity(p, m, y[at(m)], z[at(m)]);
    y[at(m + 1)] = step_y_noparity(p, m, y[at(m)], z[at(m + 1)]);
  }
  for (Index m = m0; m > m_min; --m) {
    y[at(m - 1)] = step_back_y_noparity(p, m, y[at(m)], z[at(m)]);
    z[at(m - 1)] = step_back_z_noparity(p, m, y[at(m - 1)], z[at(m)]);
  }
  std::vector<StatePair> rows;
  for (Index m = m_min; m <= m_max; ++m) rows.push_back({m, {Sign::minus, y[at(m)]}, {Sign::minus, z[at(m)]}});
  return SolutionTable(std::move(rows));
}

const char* to_string(ResidualFailure::Equation e) {
  switch (e) {
    case ResidualFailure::Equation::zz: return "zz";
    case ResidualFailure::Equation::yy: return "yy";
    case ResidualFailure::Equation::riccati1: return "riccati1";
    case ResidualFailure::Equation::riccati2: return "riccati2";
  }
  return "?";
}

std::vector<ResidualFailure> check_table(const Params& p, const SolutionTable& table) {
  std::vector<ResidualFailure> failures;
  if (table.empty()) return failures;
  for (Index m = table.first(); m < table.last(); ++m) {
    const auto& cur = table.at(m);
    const auto& next = table.at(m + 1);
    if (auto b = balance_zz(p, m, cur.y, cur.z, next.z); !b.holds())
      failures.push_back({m, ResidualFailure::Equation::zz, b});
    if (auto b = balance_yy(p, m, cur.y, next.y, next.z); !b.holds())
      failures.push_back({m, ResidualFailure::Equation::yy, b});
  }
  return failures;
}

// ---------------------------------------------------------------------------

std::size_t BranchNode::leaf_count() const {
  if (children.empty()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

namespace {

struct Grower {
  const Params& p;
  std::size_t cap;
  bool truncated = false;
  std::size_t leaves = 0;

  // Children are only opened while the leaf budget allows; every opened child
  // reaches a leaf because each step has at least one admissible candidate.
  void forward(BranchNode& node, Index m_max) {
    const StatePair& s = node.state;
    if (s.m == m_max) {
      ++leaves;
      return;
    }
    for (const auto& z_next : step_z_parity(p, s.m, s.y, s.z)) {
      for (const auto& y_next : step_y_parity(p, s.m, s.y, z_next)) {
        if (leaves >= cap) {
          truncated = true;
          return;
        }
        node.children.push_back({StatePair{s.m + 1, y_next, z_next}, {}});
        forward(node.children.back(), m_max);
      }
    }
  }

  void backward(BranchNode& node, Index m_min) {
    const StatePair& s = node.state;
    if (s.m == m_min) {
      ++leaves;
      return;
    }
    for (const auto& y_prev : step_back_y_parity(p, s.m, s.y, s.z)) {
      for (const auto& z_prev : step_back_z_parity(p, s.m, y_prev, s.z)) {
        if (leaves >= cap) {
          truncated = true;
          return;
        }
        node.children.push_back({StatePair{s.m - 1, y_prev, z_prev}, {}});
        backward(node.children.back(), m_min);
      }
    }
  }
};

void collect_paths(const BranchNode& node, std::vector<StatePair>& prefix, std::vector<std::vector<StatePair>>& out) {
  prefix.push_back(node.state);
  if (node.children.empty())
    out.push_back(prefix);
  else
    for (const auto& c : node.children) collect_paths(c, prefix, out);
  prefix.pop_back();
}

}  // namespace

std::size_t BranchTree::branch_count() const {
  return std::min(max_branches, backward.leaf_count() * forward.leaf_count());
}

std::vector<SolutionTable> BranchTree::tables() const {
  std::vector<std::vector<StatePair>> fwd, bwd;
  std::vector<StatePair> prefix;
  collect_paths(forward, prefix, fwd);
  collect_paths(backward, prefix, bwd);

  std::vector<SolutionTable> out;
  for (const auto& b : bwd) {
    for (const auto& f : fwd) {
      if (out.size() >= max_branches) return out;
      std::vector<StatePair> rows(b.rbegin(), b.rend());  // m_min .. root
      rows.insert(rows.end(), f.begin() + 1, f.end());    // root+1 .. m_max
      out.emplace_back(std::move(rows));
    }
  }
  return out;
}

BranchTree evolve(const Params& p, const StatePair& initial, const EvolutionConfig& cfg) {
  require_constraint(p);
  if (cfg.m_min > cfg.m_max) throw std::invalid_argument("evolve: m_min > m_max");
  if (initial.m < cfg.m_min || initial.m > cfg.m_max)
    throw std::invalid_argument("evolve: initial index outside the window");
  if (cfg.max_branches == 0) throw std::invalid_argument("evolve: max_branches must be positive");

  BranchTree tree;
  tree.root = initial;
  tree.m_min = cfg.m_min;
  tree.m_max = cfg.m_max;
  tree.max_branches = cfg.max_branches;
  tree.forward.state = initial;
  tree.backward.state = initial;

  Grower fwd{p, cfg.max_branches};
  fwd.forward(tree.forward, cfg.m_max);
  Grower bwd{p, cfg.max_branches};
  bwd.backward(tree.backward, cfg.m_min);

  tree.truncated = fwd.truncated || bwd.truncated ||
                   tree.forward.leaf_count() * tree.backward.leaf_count() > cfg.max_branches;
  return tree;
}

}  // namespace udp6
