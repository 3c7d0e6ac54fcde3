#include "hpcad/projection.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hpcad {

namespace {

std::vector<Var> sorted_vars(const ProjOrder& vars, std::size_t nvars) {
  std::vector<Var> s = vars;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DomainError("projection variables must be distinct");
  if (!s.empty() && s.back() >= nvars) throw DomainError("projection variable outside the ring");
  return s;
}

std::vector<Var> without(const std::vector<Var>& s, Var y) {
  std::vector<Var> out;
  for (Var v : s) {
    if (v != y) out.push_back(v);
  }
  return out;
}

MultiPoly product(const std::vector<MultiPoly>& ps, std::size_t nvars) {
  MultiPoly acc = MultiPoly::constant(nvars, BigInt(1));
  for (const auto& p : ps) acc *= p;
  return acc;
}

// Brown projection of a factor list: discriminants and pairwise resultants
// of the members involving v, the other members passed through.
FactorList bp_factors(const FactorList& fs, Var v, const HpCache& cache) {
  std::vector<MultiPoly> raw;
  std::vector<const MultiPoly*> members;
  for (const auto& p : fs) {
    if (p.degree(v) >= 1) {
      members.push_back(&p);
    } else {
      raw.push_back(p);
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    cache.check_cancel();
    raw.push_back(bp_single(*members[i], v));
    for (std::size_t k = i + 1; k < members.size(); ++k) {
      cache.check_cancel();
      raw.push_back(resultant(*members[i], *members[k], v));
    }
  }
  return factor_list(raw);
}

// Common part of two factor lists: the members of their joint coprime basis
// that divide a member of each.
FactorList gcd_factors(const FactorList& a, const FactorList& b) {
  if (a == b) return a;
  std::vector<MultiPoly> both = a;
  both.insert(both.end(), b.begin(), b.end());
  FactorList out;
  for (auto& e : coprime_basis(both)) {
    auto in = [&](const FactorList& l) { return std::any_of(l.begin(), l.end(), [&](const MultiPoly& p) { return divides(e, p); }); };
    if (in(a) && in(b)) out.push_back(std::move(e));
  }
  return out;
}

// Exact Hp values, memoized as one-element lists.
MultiPoly hp_rec(const MultiPoly& f, const std::vector<Var>& s, HpCache& cache);

MultiPoly hp_designated_rec(const MultiPoly& f, const std::vector<Var>& s, Var y, HpCache& cache) {
  HpCache::Key key{{f}, s, y, true};
  if (auto hit = cache.find(key)) return hit->front();
  cache.check_cancel();
  MultiPoly r = bp_single(hp_rec(f, without(s, y), cache), y);
  cache.insert(key, {r});
  return r;
}

MultiPoly hp_rec(const MultiPoly& f, const std::vector<Var>& s, HpCache& cache) {
  if (s.empty()) return f;
  HpCache::Key key{{f}, s, std::nullopt, true};
  if (auto hit = cache.find(key)) return hit->front();
  MultiPoly g(f.nvars());
  for (Var y : s) {
    const MultiPoly d = hp_designated_rec(f, s, y, cache);
    g = g.is_zero() ? normalize(d) : gcd_multi(g, d);
  }
  cache.insert(key, {g});
  return g;
}

FactorList hp_rec(const FactorList& f, const std::vector<Var>& s, HpCache& cache);

FactorList hp_designated_rec(const FactorList& f, const std::vector<Var>& s, Var y, HpCache& cache) {
  HpCache::Key key{f, s, y};
  if (auto hit = cache.find(key)) return *hit;
  FactorList r = bp_factors(hp_rec(f, without(s, y), cache), y, cache);
  cache.insert(key, r);
  return r;
}

FactorList hp_rec(const FactorList& f, const std::vector<Var>& s, HpCache& cache) {
  if (s.empty()) return f;
  HpCache::Key key{f, s, std::nullopt};
  if (auto hit = cache.find(key)) return *hit;
  std::optional<FactorList> g;
  for (Var y : s) {
    FactorList d = hp_designated_rec(f, s, y, cache);
    g = g ? gcd_factors(*g, d) : std::move(d);
  }
  cache.insert(key, *g);
  return *g;
}

}  // namespace

MultiPoly bp_single(const MultiPoly& f, Var v) {
  if (f.is_zero()) throw DomainError("projection of the zero polynomial");
  if (v >= f.nvars()) throw DomainError("projection variable outside the ring");
  if (f.degree(v) < 1) return f;
  const MultiPoly s = sqrf(f);
  // The content in v is split off so its factors appear once.
  const MultiPoly c = content(s, v);
  const MultiPoly pp = primitive_part(s, v);
  return normalize(c * resultant_general(pp, derivative(pp, v), v));
}

std::vector<MultiPoly> bp_set(const std::vector<MultiPoly>& polys, Var v) {
  std::vector<MultiPoly> out;
  std::vector<MultiPoly> active;
  for (const auto& p : polys) {
    if (p.is_zero()) throw DomainError("projection of the zero polynomial");
    if (p.degree(v) >= 1) {
      active.push_back(sqrf(p));
    } else if (!p.is_constant()) {
      out.push_back(normalize(p));
    }
  }
  std::vector<MultiPoly> members;
  for (auto& b : coprime_basis(active)) {
    if (b.degree(v) >= 1) {
      members.push_back(std::move(b));
    } else {
      out.push_back(std::move(b));
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    out.push_back(bp_single(members[i], v));
    for (std::size_t k = i + 1; k < members.size(); ++k) out.push_back(normalize(resultant(members[i], members[k], v)));
  }
  std::erase_if(out, [](const MultiPoly& p) { return p.is_constant(); });
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MultiPoly bp_chain(const MultiPoly& f, const ProjOrder& order) {
  MultiPoly g = f;
  for (Var v : order) g = bp_single(g, v);
  return g;
}

FactorList factor_list(const MultiPoly& f) {
  if (f.is_zero()) throw DomainError("factor list of the zero polynomial");
  if (f.is_constant()) return {};
  return {sqrf(f)};
}

FactorList factor_list(const std::vector<MultiPoly>& polys) {
  std::vector<MultiPoly> parts;
  for (const auto& p : polys) {
    if (p.is_zero()) throw DomainError("factor list of the zero polynomial");
    if (!p.is_constant()) parts.push_back(sqrf(p));
  }
  return coprime_basis(parts);
}

MultiPoly expand(const FactorList& fs, std::size_t nvars) { return product(fs, nvars); }

std::size_t HpCache::KeyHash::operator()(const Key& k) const {
  std::size_t h = 0;
  for (const auto& p : k.polys) h = h * 1000033u ^ p.hash();
  for (Var v : k.vars) h = h * 1000003u ^ (v + 1);
  return (h * 31u + (k.designated ? *k.designated + 7 : 0)) * 2 + k.exact;
}

std::optional<FactorList> HpCache::find(const Key& key) const {
  std::lock_guard lock(mu_);
  auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void HpCache::insert(const Key& key, const FactorList& value) {
  std::lock_guard lock(mu_);
  map_.emplace(key, value);
}

std::size_t HpCache::size() const {
  std::lock_guard lock(mu_);
  return map_.size();
}

FactorList hp_factors(const FactorList& f, std::size_t nvars, const ProjOrder& vars, HpCache* cache) {
  HpCache local;
  return hp_rec(f, sorted_vars(vars, nvars), cache ? *cache : local);
}

FactorList hp_designated_factors(const FactorList& f, std::size_t nvars, const ProjOrder& vars, Var y,
                                 HpCache* cache) {
  const auto s = sorted_vars(vars, nvars);
  if (!std::binary_search(s.begin(), s.end(), y)) throw DomainError("designated variable not among the projection variables");
  HpCache local;
  return hp_designated_rec(f, s, y, cache ? *cache : local);
}

MultiPoly hp(const MultiPoly& f, const ProjOrder& vars, HpCache* cache) {
  if (f.is_zero()) throw DomainError("projection of the zero polynomial");
  HpCache local;
  return hp_rec(f, sorted_vars(vars, f.nvars()), cache ? *cache : local);
}

MultiPoly hp_designated(const MultiPoly& f, const ProjOrder& vars, Var y, HpCache* cache) {
  if (f.is_zero()) throw DomainError("projection of the zero polynomial");
  const auto s = sorted_vars(vars, f.nvars());
  if (!std::binary_search(s.begin(), s.end(), y)) throw DomainError("designated variable not among the projection variables");
  HpCache local;
  return hp_designated_rec(f, s, y, cache ? *cache : local);
}

LiftSpec hp_liftspec(const MultiPoly& f, std::size_t j, HpCache* cache) {
  const std::size_t n = f.nvars();
  if (j < 2 || j > n) throw DomainError("hp_liftspec needs 2 <= j <= n");
  if (f.is_zero()) throw DomainError("projection of the zero polynomial");
  HpCache local;
  HpCache& c = cache ? *cache : local;
  LiftSpec spec;
  spec.first = j - 1;
  // Projecting x_n..x_{l+1} leaves a polynomial for level l.
  for (std::size_t level = j - 1; level < n; ++level) {
    std::vector<Var> s;
    for (std::size_t k = level; k < n; ++k) s.push_back(k);
    const Var y = level;
    spec.levels.push_back(LiftLevel{hp_rec(f, s, c), hp_designated_rec(f, s, y, c)});
  }
  spec.levels.push_back(LiftLevel{f, f});
  return spec;
}

NpParts np_parts(const MultiPoly& f, Var v) {
  if (f.is_zero()) throw DomainError("Np of the zero polynomial");
  if (f.degree(v) < 1) throw DomainError("Np needs positive degree in the projected variable");
  const MultiPoly s = sqrf(f);
  std::vector<MultiPoly> parts;
  std::vector<bool> odd;
  for (const auto& src : {sqrf_parts(lc(s, v)), sqrf_parts(discriminant(s, v))}) {
    for (const auto& p : src.parts) {
      parts.push_back(p.poly);
      odd.push_back(p.multiplicity % 2 == 1);
    }
  }
  NpParts out{{}, MultiPoly::constant(f.nvars(), BigInt(1))};
  for (const auto& b : coprime_basis(parts)) {
    bool is_odd = false;
    for (std::size_t k = 0; k < parts.size() && !is_odd; ++k) is_odd = odd[k] && divides(b, parts[k]);
    if (is_odd) {
      out.np1.push_back(b);
    } else {
      out.np2 *= b;
    }
  }
  return out;
}

MultiPoly np(const MultiPoly& f, const ProjOrder& vars) {
  if (f.is_zero()) throw DomainError("Np of the zero polynomial");
  const auto s = sorted_vars(vars, f.nvars());
  if (s.empty()) return f;
  std::map<std::vector<Var>, MultiPoly> memo;
  std::function<MultiPoly(const std::vector<Var>&)> rec;
  std::function<MultiPoly(const std::vector<Var>&, Var)> designated = [&](const std::vector<Var>& set, Var y) {
    if (set.size() == 1) return product(np_parts(f, y).np1, f.nvars());
    return bp_single(rec(without(set, y)), y);
  };
  rec = [&](const std::vector<Var>& set) -> MultiPoly {
    if (auto it = memo.find(set); it != memo.end()) return it->second;
    MultiPoly g(f.nvars());
    if (set.size() == 1) {
      g = np_parts(f, set.front()).np2;
    } else {
      for (Var y : set) {
        const MultiPoly d = designated(set, y);
        g = g.is_zero() ? normalize(d) : gcd_multi(g, d);
      }
    }
    memo.emplace(set, g);
    return g;
  };
  return rec(s);
}

MultiPoly np_designated(const MultiPoly& f, const ProjOrder& vars, Var y) {
  if (f.is_zero()) throw DomainError("Np of the zero polynomial");
  const auto s = sorted_vars(vars, f.nvars());
  if (!std::binary_search(s.begin(), s.end(), y)) throw DomainError("designated variable not among the projection variables");
  if (s.size() == 1) return product(np_parts(f, y).np1, f.nvars());
  return bp_single(np(f, without(s, y)), y);
}

}  // namespace hpcad
