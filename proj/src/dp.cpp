#include "cwcount/dp.hpp"

#include <algorithm>
#include <stdexcept>

namespace cwc {

PathType PathType::mixed_pair(int i, int j) {
  if (i == j) throw std::invalid_argument("mixed pair needs distinct labels");
  if (i > j) std::swap(i, j);
  return {Kind::MixedPair, i, j};
}

PathType PathType::path_ends(int i, int j) {
  return i == j ? same_pair(i) : mixed_pair(i, j);
}

int PathType::min_vertices() const {
  switch (kind) {
    case Kind::Cycle: return 3;
    case Kind::Singleton: return 1;
    default: return 2;
  }
}

std::string PathType::str() const {
  switch (kind) {
    case Kind::Cycle: return "o";
    case Kind::Singleton: return "s" + std::to_string(a);
    case Kind::SamePair: return "p" + std::to_string(a);
    case Kind::MixedPair:
      return "m" + std::to_string(a) + "." + std::to_string(b);
  }
  return "?";
}

int type_count(int k) { return k * (k - 1) / 2 + 2 * k + 1; }

std::vector<PathType> all_types(int k) {
  std::vector<PathType> out = {PathType::cycle()};
  for (int i = 1; i <= k; ++i) out.push_back(PathType::singleton(i));
  for (int i = 1; i <= k; ++i) out.push_back(PathType::same_pair(i));
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) out.push_back(PathType::mixed_pair(i, j));
  return out;
}

int Allocation::count(const PathType& t) const {
  for (const auto& [u, c] : parts_)
    if (u == t) return c;
  return 0;
}

void Allocation::add(const PathType& t, int delta) {
  if (delta == 0) return;
  auto it = std::lower_bound(parts_.begin(), parts_.end(), t,
                             [](const auto& p, const PathType& u) { return p.first < u; });
  if (it != parts_.end() && it->first == t) {
    it->second += delta;
    if (it->second < 0) throw std::logic_error("negative allocation");
    if (it->second == 0) parts_.erase(it);
  } else {
    if (delta < 0) throw std::logic_error("negative allocation");
    parts_.insert(it, {t, delta});
  }
}

int Allocation::total_blocks() const {
  int t = 0;
  for (const auto& [u, c] : parts_) t += c;
  return t;
}

int Allocation::min_vertices() const {
  int t = 0;
  for (const auto& [u, c] : parts_) t += c * u.min_vertices();
  return t;
}

std::string Allocation::str() const {
  std::string s = "[";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += parts_[i].first.str() + ":" + std::to_string(parts_[i].second);
  }
  return s + "]";
}

void StateTable::add(const CoverKey& key, const Count& c) {
  if (c == 0) return;
  rows_[key] += c;
}

Count StateTable::at(const CoverKey& key) const {
  auto it = rows_.find(key);
  return it == rows_.end() ? Count(0) : it->second;
}

void StateTable::validate() const {
  for (const auto& [key, c] : rows_) {
    if (c <= 0) throw std::logic_error("non-positive count in state table");
    if (key.vertices != vertices_)
      throw std::logic_error("key vertex usage differs from table budget");
    if (key.alloc.min_vertices() > key.vertices)
      throw std::logic_error("census needs more vertices than the key carries");
  }
}

bool join_touches(const PathType& t, int a, int b) {
  if (t.kind == PathType::Kind::Cycle) return false;
  return t.a == a || t.a == b || t.b == a || t.b == b;
}

namespace {

Count pow2(int e) { return Count(1) << e; }

// Carrier: a mixed path with exactly one endpoint labeled a or b. Its other
// endpoint can never receive a join edge, so it must surface as an end of
// the merged component.
bool is_carrier(const PathType& t, int a, int b) {
  if (t.kind != PathType::Kind::MixedPair) return false;
  bool first = t.a == a || t.a == b;
  bool second = t.b == a || t.b == b;
  return first != second;
}

int carrier_outer(const PathType& t, int a, int b) {
  return (t.a == a || t.a == b) ? t.b : t.a;
}

int carrier_inner(const PathType& t, int a, int b) {
  return (t.a == a || t.a == b) ? t.a : t.b;
}

}  // namespace

Count w_alpha(const Allocation& alpha, const PathType& target, int a, int b) {
  if (a == b) throw std::invalid_argument("join labels must differ");
  if (alpha.empty()) return 0;

  if (alpha.total_blocks() == 1) {
    const PathType& t = alpha.parts()[0].first;
    if (t == target) return 1;  // untouched block
    if (target.kind == PathType::Kind::Cycle && t == PathType::mixed_pair(a, b))
      return 1;  // close the path with one edge
    return 0;
  }

  // profile of the group
  int p = 0, s_a = 0, z_a = 0, s_b = 0, z_b = 0;
  std::vector<PathType> carriers;
  for (const auto& [t, c] : alpha.parts()) {
    if (t == PathType::mixed_pair(a, b)) {
      p = c;
    } else if (t == PathType::same_pair(a)) {
      s_a = c;
    } else if (t == PathType::singleton(a)) {
      z_a = c;
    } else if (t == PathType::same_pair(b)) {
      s_b = c;
    } else if (t == PathType::singleton(b)) {
      z_b = c;
    } else if (is_carrier(t, a, b)) {
      for (int i = 0; i < c; ++i) carriers.push_back(t);
    } else {
      return 0;  // a block with no joinable endpoint cannot merge
    }
  }
  if (carriers.size() > 2) return 0;
  const int beta_a = s_a + z_a, beta_b = s_b + z_b;

  if (target.kind == PathType::Kind::Singleton) return 0;

  if (target.kind == PathType::Kind::Cycle) {
    if (!carriers.empty()) return 0;
    if (beta_a != beta_b) return 0;
    const int beta = beta_a;
    if (beta == 0) return factorial(p - 1);  // p >= 2 here
    // two singletons alone would need a doubled edge
    if (p == 0 && beta == 1 && s_a == 0 && s_b == 0) return 0;
    Count ordered = factorial(beta - 1) * factorial(beta) * pow2(s_a + s_b) *
                    rising_factorial(2 * beta, p);
    return ordered / 2;
  }

  // path target with ends (x, y)
  const int x = target.a, y = target.b;
  const int free_a = (x == a) + (y == a);
  const int free_b = (x == b) + (y == b);
  std::vector<int> foreign;
  if (x != a && x != b) foreign.push_back(x);
  if (y != a && y != b) foreign.push_back(y);
  std::vector<int> outers;
  int q_a = 0, q_b = 0;
  for (const auto& t : carriers) {
    outers.push_back(carrier_outer(t, a, b));
    (carrier_inner(t, a, b) == a ? q_a : q_b) += 1;
  }
  std::sort(foreign.begin(), foreign.end());
  std::sort(outers.begin(), outers.end());
  if (foreign != outers) return 0;

  const int consumed_a = 2 * beta_a + p + q_a - free_a;
  const int consumed_b = 2 * beta_b + p + q_b - free_b;
  if (consumed_a < 0 || consumed_a != consumed_b) return 0;

  Count ordered = factorial(beta_a) * factorial(beta_b) * pow2(s_a + s_b) *
                  rising_factorial(beta_a + beta_b + 1, p);
  if (x != y) return ordered;                      // ends distinguishable
  if (carriers.size() == 2) return ordered;        // carrier swap cancels the flip
  return ordered / 2;                              // reading the path backwards
}

StateTable leaf_state(int a, int k) {
  if (a < 1 || a > k) throw std::runtime_error("label out of range");
  StateTable t(k, 1);
  Allocation al;
  al.add(PathType::singleton(a), 1);
  t.add({al, 1}, 1);
  return t;
}

StateTable union_state(const StateTable& s1, const StateTable& s2) {
  if (s1.labels() != s2.labels()) throw std::runtime_error("label bound mismatch");
  StateTable out(s1.labels(), s1.vertices() + s2.vertices());
  for (const auto& [k1, c1] : s1.rows())
    for (const auto& [k2, c2] : s2.rows()) {
      Allocation al = k1.alloc;
      for (const auto& [t, c] : k2.alloc.parts()) al.add(t, c);
      out.add({std::move(al), k1.vertices + k2.vertices}, c1 * c2);
    }
  return out;
}

namespace {

PathType relabel_type(const PathType& t, int a, int b) {
  switch (t.kind) {
    case PathType::Kind::Cycle:
      return t;
    case PathType::Kind::Singleton:
      return t.a == a ? PathType::singleton(b) : t;
    case PathType::Kind::SamePair:
      return t.a == a ? PathType::same_pair(b) : t;
    case PathType::Kind::MixedPair: {
      int u = t.a == a ? b : t.a;
      int v = t.b == a ? b : t.b;
      return PathType::path_ends(u, v);
    }
  }
  return t;
}

}  // namespace

StateTable rho_state(const StateTable& s, int a, int b) {
  if (a == b) throw std::runtime_error("relabel labels must differ");
  StateTable out(s.labels(), s.vertices());
  for (const auto& [key, c] : s.rows()) {
    Allocation al;
    for (const auto& [t, cnt] : key.alloc.parts()) al.add(relabel_type(t, a, b), cnt);
    out.add({std::move(al), key.vertices}, c);
  }
  return out;
}

namespace {

using EtaRows = std::map<Allocation, Count>;

std::vector<PathType> candidate_targets(const Allocation& alpha, int a, int b) {
  std::vector<PathType> out;
  if (alpha.total_blocks() == 1) out.push_back(alpha.parts()[0].first);
  std::vector<int> outers;
  for (const auto& [t, c] : alpha.parts())
    if (is_carrier(t, a, b))
      for (int i = 0; i < c; ++i) outers.push_back(carrier_outer(t, a, b));
  if (outers.empty()) {
    out.push_back(PathType::cycle());
    out.push_back(PathType::same_pair(a));
    out.push_back(PathType::same_pair(b));
    out.push_back(PathType::mixed_pair(a, b));
  } else if (outers.size() == 1) {
    out.push_back(PathType::path_ends(outers[0], a));
    out.push_back(PathType::path_ends(outers[0], b));
  } else if (outers.size() == 2) {
    out.push_back(PathType::path_ends(outers[0], outers[1]));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Group {
  Allocation alpha;
  PathType target;
  Count ways;  // w_alpha value, > 0
};

// Every sub-allocation of `from` together with every reachable target.
std::vector<Group> enumerate_groups(const Allocation& from, int a, int b) {
  std::vector<Group> out;
  const auto& parts = from.parts();
  Allocation alpha;
  auto rec = [&](auto&& self, size_t idx) -> void {
    if (idx == parts.size()) {
      if (alpha.empty()) return;
      for (const auto& t : candidate_targets(alpha, a, b)) {
        Count w = w_alpha(alpha, t, a, b);
        if (w > 0) out.push_back({alpha, t, w});
      }
      return;
    }
    for (int take = 0; take <= parts[idx].second; ++take) {
      if (take) alpha.add(parts[idx].first, take);
      self(self, idx + 1);
      if (take) alpha.add(parts[idx].first, -take);
    }
  };
  rec(rec, 0);
  return out;
}

// Direct backend: recursively partition the blocks into groups. The least
// remaining type is anchored into the next group so each set partition of
// the (distinguishable) blocks is generated exactly once; binomials count
// the ways to pick which same-typed blocks join the group.
void direct_rows_rec(const Allocation& remaining, int a, int b, const Count& coeff,
                     Allocation& acc, EtaRows& rows) {
  if (remaining.empty()) {
    rows[acc] += coeff;
    return;
  }
  const PathType anchor = remaining.parts()[0].first;
  const auto& parts = remaining.parts();
  Allocation alpha;
  auto rec = [&](auto&& self, size_t idx, Count chosen) -> void {
    if (idx == parts.size()) {
      for (const auto& t : candidate_targets(alpha, a, b)) {
        Count w = w_alpha(alpha, t, a, b);
        if (w == 0) continue;
        Allocation rest = remaining;
        for (const auto& [u, c] : alpha.parts()) rest.add(u, -c);
        acc.add(t, 1);
        direct_rows_rec(rest, a, b, coeff * chosen * w, acc, rows);
        acc.add(t, -1);
      }
      return;
    }
    const auto& [t, avail] = parts[idx];
    const bool anchored = t == anchor;
    for (int take = anchored ? 1 : 0; take <= avail; ++take) {
      Count ways = anchored ? binomial(avail - 1, take - 1) : binomial(avail, take);
      if (take) alpha.add(t, take);
      self(self, idx + 1, chosen * ways);
      if (take) alpha.add(t, -take);
    }
  };
  rec(rec, 0, 1);
}

EtaRows eta_rows_direct(const Allocation& relevant, int a, int b) {
  EtaRows rows;
  Allocation acc;
  direct_rows_rec(relevant, a, b, 1, acc, rows);
  return rows;
}

constexpr int kInterpVertexLimit = 24;

// Interpolation backend. The generating polynomial has one variable x_t' per
// producible target and one variable y_t per consumed type; each group kind
// contributes a truncated series in x_t' * prod_t y_t^alpha(t), scaled so
// that identically-typed blocks distribute correctly once the coefficient is
// multiplied by prod_t c(t)!. The polynomial is Kronecker-substituted into a
// single variable over exact arithmetic and the coefficients read back off.
EtaRows eta_rows_interp(const Allocation& relevant, int a, int b) {
  EtaRows rows;
  if (relevant.empty()) {
    rows[Allocation{}] = 1;
    return rows;
  }

  std::vector<Group> groups = enumerate_groups(relevant, a, b);
  std::vector<PathType> targets;
  for (const auto& g : groups) targets.push_back(g.target);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  const auto& consumed = relevant.parts();
  const int nx = static_cast<int>(targets.size());
  const int ny = static_cast<int>(consumed.size());
  auto x_index = [&](const PathType& t) {
    return static_cast<int>(std::lower_bound(targets.begin(), targets.end(), t) -
                            targets.begin());
  };

  using Monomial = std::vector<int>;  // x exponents, then y exponents
  using Poly = std::map<Monomial, Ratio>;
  Poly poly;
  poly[Monomial(nx + ny, 0)] = 1;

  for (const auto& g : groups) {
    // truncated series for this group kind
    Poly factor;
    int dmax = relevant.total_blocks();
    for (int i = 0; i < ny; ++i) {
      int need = g.alpha.count(consumed[i].first);
      if (need > 0) dmax = std::min(dmax, consumed[i].second / need);
    }
    Ratio scale = 1;
    for (const auto& [t, c] : g.alpha.parts()) scale /= Ratio(factorial(c));
    for (int d = 0; d <= dmax; ++d) {
      Monomial m(nx + ny, 0);
      m[x_index(g.target)] = d;
      for (int i = 0; i < ny; ++i) m[nx + i] = d * g.alpha.count(consumed[i].first);
      Ratio coeff = Ratio(boost::multiprecision::pow(g.ways, d)) /
                    Ratio(factorial(d));
      for (int j = 0; j < d; ++j) coeff *= scale;
      factor[std::move(m)] = coeff;
    }
    // multiply, dropping monomials that overshoot the available blocks
    Poly next;
    for (const auto& [m1, c1] : poly)
      for (const auto& [m2, c2] : factor) {
        Monomial m(nx + ny);
        bool ok = true;
        for (int i = 0; i < nx + ny; ++i) {
          m[i] = m1[i] + m2[i];
          if (i >= nx && m[i] > consumed[i - nx].second) {
            ok = false;
            break;
          }
        }
        if (ok) next[std::move(m)] += c1 * c2;
      }
    poly = std::move(next);
  }

  // Kronecker substitution: variable i becomes X^(D^i)
  const Count base = relevant.total_blocks() + 1;
  std::map<Count, Ratio> uni;
  for (const auto& [m, c] : poly) {
    Count e = 0, scale = 1;
    for (int i = 0; i < nx + ny; ++i) {
      e += m[i] * scale;
      scale *= base;
    }
    uni[e] += c;
  }

  Count prefac = 1;
  for (const auto& [t, c] : consumed) prefac *= factorial(c);
  for (const auto& [e, c] : uni) {
    if (c == 0) continue;
    // decode the exponent digits back into a monomial
    Count rest = e;
    Monomial m(nx + ny);
    for (int i = 0; i < nx + ny; ++i) {
      m[i] = static_cast<int>(rest % base);
      rest /= base;
    }
    bool exact = true;
    for (int i = 0; i < ny; ++i)
      if (m[nx + i] != consumed[i].second) exact = false;
    if (!exact) continue;
    Allocation delta;
    for (int i = 0; i < nx; ++i) delta.add(targets[i], m[i]);
    Ratio total = c * Ratio(prefac);
    if (boost::multiprecision::denominator(total) != 1)
      throw std::logic_error("interpolation produced a non-integer count");
    rows[std::move(delta)] += boost::multiprecision::numerator(total);
  }
  return rows;
}

}  // namespace

std::map<Allocation, Count> eta_rows(const Allocation& relevant, int a, int b,
                                     EtaBackend backend) {
  return backend == EtaBackend::Direct ? eta_rows_direct(relevant, a, b)
                                       : eta_rows_interp(relevant, a, b);
}

namespace {

StateTable eta_apply(const StateTable& s, int a, int b, EtaBackend backend) {
  if (a == b) throw std::runtime_error("join labels must differ");
  if (backend == EtaBackend::Interp && s.vertices() > kInterpVertexLimit)
    throw std::runtime_error("interp backend limit");
  StateTable out(s.labels(), s.vertices());
  std::map<Allocation, EtaRows> cache;
  for (const auto& [key, cnt] : s.rows()) {
    Allocation relevant, inert;
    for (const auto& [t, c] : key.alloc.parts())
      (join_touches(t, a, b) ? relevant : inert).add(t, c);
    auto it = cache.find(relevant);
    if (it == cache.end())
      it = cache.emplace(relevant, eta_rows(relevant, a, b, backend)).first;
    for (const auto& [delta, coeff] : it->second) {
      Allocation al = inert;
      for (const auto& [t, c] : delta.parts()) al.add(t, c);
      out.add({std::move(al), key.vertices}, cnt * coeff);
    }
  }
  return out;
}

}  // namespace

StateTable eta_state_direct(const StateTable& s, int a, int b) {
  return eta_apply(s, a, b, EtaBackend::Direct);
}

StateTable eta_state_interp(const StateTable& s, int a, int b) {
  return eta_apply(s, a, b, EtaBackend::Interp);
}

StateTable eta_state(const StateTable& s, int a, int b, EtaBackend backend) {
  return eta_apply(s, a, b, backend);
}

namespace {

// Per node: which labels can still receive join edges somewhere above it,
// and how many leaves lie outside its subtree.
struct PruneInfo {
  std::vector<char> live;
  int outside = 0;
};

void fill_prune(const CwNode& n, std::vector<char> live, int outside,
                std::map<const CwNode*, PruneInfo>& out) {
  out[&n] = {live, outside};
  switch (n.op) {
    case CwNode::Op::Leaf:
      return;
    case CwNode::Op::Union: {
      int lleaves = n.left->leaf_count();
      int rleaves = n.right->leaf_count();
      fill_prune(*n.left, live, outside + rleaves, out);
      fill_prune(*n.right, std::move(live), outside + lleaves, out);
      return;
    }
    case CwNode::Op::Relabel: {
      // a vertex labeled a here carries label b above
      live[n.a] = live[n.b];
      fill_prune(*n.left, std::move(live), outside, out);
      return;
    }
    case CwNode::Op::Join: {
      live[n.a] = live[n.b] = 1;
      fill_prune(*n.left, std::move(live), outside, out);
      return;
    }
  }
}

// A block with a dead endpoint keeps that endpoint forever, so the final
// component containing it is a path or an isolated vertex; a cycle can
// never merge with anything else.
bool key_survives(const CoverKey& key, const PruneInfo& pi, DpGoal goal) {
  int cycles = 0;
  bool non_cycle = false;
  for (const auto& [t, c] : key.alloc.parts()) {
    switch (t.kind) {
      case PathType::Kind::Cycle:
        cycles += c;
        break;
      case PathType::Kind::Singleton:
      case PathType::Kind::SamePair:
        if (!pi.live[t.a]) return false;
        non_cycle = true;
        break;
      case PathType::Kind::MixedPair:
        if (!pi.live[t.a] || !pi.live[t.b]) return false;
        non_cycle = true;
        break;
    }
  }
  if (goal == DpGoal::SingleCycle) {
    if (cycles >= 2) return false;
    if (cycles == 1 && (non_cycle || pi.outside > 0)) return false;
  }
  return true;
}

struct DpRun {
  int k;
  EtaBackend backend;
  DpGoal goal;
  std::map<const CwNode*, PruneInfo> prune;
  std::vector<NodeTrace>* trace = nullptr;

  StateTable eval(const CwNode& n) {
    StateTable t;
    switch (n.op) {
      case CwNode::Op::Leaf:
        t = leaf_state(n.a, k);
        break;
      case CwNode::Op::Union: {
        StateTable l = eval(*n.left);
        StateTable r = eval(*n.right);
        t = union_state(l, r);
        break;
      }
      case CwNode::Op::Relabel:
        t = rho_state(eval(*n.left), n.a, n.b);
        break;
      case CwNode::Op::Join:
        t = eta_state(eval(*n.left), n.a, n.b, backend);
        break;
    }
    if (goal != DpGoal::FullCensus) {
      const PruneInfo& pi = prune.at(&n);
      StateTable filtered(t.labels(), t.vertices());
      for (const auto& [key, c] : t.rows())
        if (key_survives(key, pi, goal)) filtered.add(key, c);
      t = std::move(filtered);
    }
    if (trace) trace->push_back({&n, t});
    return t;
  }
};

StateTable dp_run(const CwExpr& x, EtaBackend backend, DpGoal goal,
                  std::vector<NodeTrace>* trace) {
  if (!check_irredundant(x)) throw std::runtime_error("redundant join detected");
  DpRun run{x.k, backend, goal, {}, trace};
  if (goal != DpGoal::FullCensus)
    fill_prune(*x.root, std::vector<char>(x.k + 1, 0), 0, run.prune);
  return run.eval(*x.root);
}

}  // namespace

StateTable run_dp(const CwExpr& x, EtaBackend backend, DpGoal goal) {
  return dp_run(x, backend, goal, nullptr);
}

std::vector<NodeTrace> run_dp_trace(const CwExpr& x, EtaBackend backend) {
  std::vector<NodeTrace> trace;
  dp_run(x, backend, DpGoal::FullCensus, &trace);
  return trace;
}

}  // namespace cwc
