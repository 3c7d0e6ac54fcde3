#include "hpcad/lifting.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace hpcad {

namespace {

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  const CancelToken* scoped = CancelScope::current();
  auto worker = [&] {
    CancelScope scope(scoped);
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(threads, n);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Cheap test that p(point, x_{k+1}) is not identically zero, where k is
// the length of the point.
class NonVanishing {
 public:
  NonVanishing(const MultiPoly& p, std::size_t k) : p_(p), v_(k) {
    if (v_ < p.nvars() && p.degree(v_) > 0) lead_ = coefficient(p, v_, static_cast<std::uint32_t>(p.degree(v_)));
  }

  bool operator()(const SamplePoint& point) const {
    if (!lead_) return evaluate(p_, point) != 0;
    if (evaluate(*lead_, point) != 0) return true;
    return !substitute_prefix(p_, point).poly.is_zero();
  }

 private:
  const MultiPoly& p_;
  Var v_;
  std::optional<MultiPoly> lead_;
};

// Acceptance test for candidates at level `level`: the next level of the
// spec must not vanish identically over the extended point.
class NextLevelFilter {
 public:
  NextLevelFilter(const LiftSpec& spec, std::size_t level) {
    if (level + 1 <= spec.last() && level + 1 >= spec.first) {
      checks_.emplace_back(spec.at(level + 1).lift, level);
      checks_.emplace_back(spec.at(level + 1).guard, level);
    }
  }

  SampleFilter bind(const SamplePoint& prefix) const {
    if (checks_.empty()) return nullptr;
    return [this, &prefix](const BigRat& c) {
      SamplePoint p = prefix;
      p.push_back(c);
      for (const auto& check : checks_) {
        if (!check(p)) return false;
      }
      return true;
    };
  }

 private:
  std::vector<NonVanishing> checks_;
};

MultiPoly product(const std::vector<MultiPoly>& ps, std::size_t nvars) {
  MultiPoly acc = MultiPoly::constant(nvars, BigInt(1));
  for (const auto& p : ps) acc *= p;
  return acc;
}

void sort_points(std::vector<SamplePoint>& pts) { std::sort(pts.begin(), pts.end()); }

}  // namespace

OpenSample open_sp(const LiftSpec& spec, std::vector<SamplePoint> base, const LiftOptions& options) {
  OpenSample out;
  out.strategy = options.strategy;
  const std::size_t k = base.empty() ? spec.first : base.front().size();
  for (const auto& p : base) {
    if (p.size() != k) throw DomainError("base points of different dimensions");
  }
  if (k > spec.last() || k + 1 < spec.first) throw DomainError("base dimension does not fit the lift specification");
  out.first_level = k;
  out.counts.push_back(base.size());
  std::vector<SamplePoint> current = std::move(base);
  for (std::size_t level = k + 1; level <= spec.last(); ++level) {
    const LiftLevel& L = spec.at(level);
    const NextLevelFilter filter(spec, level);
    std::vector<std::vector<SamplePoint>> children(current.size());
    parallel_for(current.size(), options.threads, [&](std::size_t idx) {
      check_cancel(options.cancel);
      const SamplePoint& a = current[idx];
      const MultiPoly lf = substitute_prefix(L.lift, a).poly;
      const MultiPoly gf = substitute_prefix(L.guard, a).poly;
      if (lf.is_zero() || gf.is_zero()) {
        throw NonGenericSample("level " + std::to_string(level) + " polynomial vanishes identically over a sample");
      }
      for (auto& x : sp_one(lf, gf, options.strategy, filter.bind(a))) {
        SamplePoint p = a;
        p.push_back(std::move(x));
        children[idx].push_back(std::move(p));
      }
    });
    current.clear();
    for (auto& c : children) {
      for (auto& p : c) current.push_back(std::move(p));
    }
    out.counts.push_back(current.size());
  }
  sort_points(current);
  out.points = std::move(current);
  return out;
}

std::vector<SamplePoint> base_sample(const LiftSpec& spec, const LiftOptions& options) {
  if (spec.first != 1) throw DomainError("base_sample needs a specification starting at level 1");
  const NextLevelFilter filter(spec, 1);
  const SamplePoint empty;
  std::vector<SamplePoint> out;
  for (auto& x : sp_one(spec.at(1).lift, spec.at(1).guard, options.strategy, filter.bind(empty))) {
    out.push_back(SamplePoint{std::move(x)});
  }
  return out;
}

OpenSample open_cad(const MultiPoly& f, const LiftOptions& options) {
  if (f.is_zero() || f.is_constant()) throw DomainError("open_cad needs a nonconstant polynomial");
  const std::size_t n = f.nvars();
  std::vector<MultiPoly> chain(n + 1);
  chain[n] = f;
  for (std::size_t k = n; k-- > 1;) {
    check_cancel(options.cancel);
    chain[k] = bp_single(chain[k + 1], k);
  }
  LiftSpec spec;
  spec.first = 1;
  for (std::size_t k = 1; k <= n; ++k) spec.levels.push_back(LiftLevel{chain[k], chain[k]});
  OpenSample out = open_sp(spec, base_sample(spec, options), options);
  out.method = "opencad";
  return out;
}

OpenSample reduced_open_cad(const MultiPoly& f, std::size_t j, std::vector<SamplePoint> base,
                            const LiftOptions& options) {
  if (f.is_zero()) throw DomainError("reduced_open_cad of the zero polynomial");
  HpCache local(options.cancel);
  const LiftSpec spec = hp_liftspec(f, j, options.cache ? options.cache : &local);
  const MultiPoly& guard = spec.at(j - 1).guard;
  for (const auto& p : base) {
    if (p.size() != j - 1) throw DomainError("base points must have dimension j - 1");
    if (sign_at(guard, p) == 0) throw InvalidBase("base point lies on a zero of the designated guard");
  }
  OpenSample out = open_sp(spec, std::move(base), options);
  out.method = "reduced:" + std::to_string(j);
  return out;
}

std::vector<SamplePoint> reduced_base(const MultiPoly& f, std::size_t j, const LiftOptions& options) {
  HpCache local(options.cancel);
  const LiftSpec spec = hp_liftspec(f, j, options.cache ? options.cache : &local);
  const LiftLevel& b = spec.at(j - 1);
  if (j == 2) {
    LiftSpec one;
    one.first = 1;
    one.levels = {b, spec.at(2)};
    return base_sample(one, options);
  }
  return hp_two({b.lift.with_nvars(j - 1), b.guard.with_nvars(j - 1)}, j - 1, options).points;
}

namespace {

// Two-variable descent from the factor list g of `top`; top sits at level n.
LiftSpec two_spec(const MultiPoly& top, FactorList g, HpCache& cache) {
  const std::size_t n = top.nvars();
  std::vector<std::vector<MultiPoly>> l1(n + 1);
  std::vector<std::vector<MultiPoly>> l2(n + 1);
  auto add = [n](std::vector<std::vector<MultiPoly>>& slots, const MultiPoly& p) {
    if (p.is_constant()) return;
    const MultiPoly q = normalize(p);
    auto& slot = slots[q.level()];
    if (std::find(slot.begin(), slot.end(), q) == slot.end()) slot.push_back(q);
  };
  auto add_list = [&](std::vector<std::vector<MultiPoly>>& slots, const FactorList& fs) { add(slots, expand(fs, n)); };
  add(l1, top);
  add(l2, top);
  std::size_t i = n;
  while (i >= 3) {
    const ProjOrder one{i - 1};
    const ProjOrder two{i - 1, i - 2};
    add_list(l1, g);
    add_list(l1, hp_factors(g, n, one, &cache));
    add_list(l2, g);
    add_list(l2, hp_designated_factors(g, n, one, i - 1, &cache));
    add_list(l2, hp_designated_factors(g, n, two, i - 2, &cache));
    FactorList next = hp_factors(g, n, two, &cache);
    add_list(l1, next);
    g = std::move(next);
    i -= 2;
  }
  if (i == 2) {
    const ProjOrder one{1};
    add_list(l1, g);
    add_list(l1, hp_factors(g, n, one, &cache));
    add_list(l2, g);
    add_list(l2, hp_designated_factors(g, n, one, 1, &cache));
  }
  LiftSpec spec;
  spec.first = 1;
  for (std::size_t k = 1; k <= n; ++k) spec.levels.push_back(LiftLevel{product(l1[k], n), product(l2[k], n)});
  return spec;
}

}  // namespace

LiftSpec hp_two_spec(const MultiPoly& f, HpCache* cache) {
  if (f.is_zero()) throw DomainError("hp_two of the zero polynomial");
  if (f.nvars() == 0) throw DomainError("hp_two needs at least one variable");
  HpCache local;
  return two_spec(f, factor_list(f), cache ? *cache : local);
}

OpenSample hp_two(const MultiPoly& f, const LiftOptions& options) {
  HpCache local(options.cancel);
  const LiftSpec spec = hp_two_spec(f, options.cache ? options.cache : &local);
  OpenSample out = open_sp(spec, base_sample(spec, options), options);
  out.method = "hptwo";
  return out;
}

OpenSample hp_two(const std::vector<MultiPoly>& polys, std::size_t nvars, const LiftOptions& options) {
  if (nvars == 0) throw DomainError("hp_two needs at least one variable");
  for (const auto& p : polys) {
    if (p.nvars() != nvars) throw DomainError("polynomials live in rings with different variable counts");
  }
  const FactorList fs = factor_list(polys);
  if (fs.empty()) return hp_two(MultiPoly::constant(nvars, BigInt(1)), options);
  HpCache local(options.cancel);
  const LiftSpec spec = two_spec(expand(fs, nvars), fs, options.cache ? *options.cache : local);
  OpenSample out = open_sp(spec, base_sample(spec, options), options);
  out.method = "hptwo";
  return out;
}

}  // namespace hpcad
