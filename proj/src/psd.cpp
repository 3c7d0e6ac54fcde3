#include "hpcad/psd.hpp"

#include <algorithm>
#include <map>

namespace hpcad {

namespace {

LiftOptions lift_options(const PsdOptions& o) {
  LiftOptions l;
  l.strategy = o.strategy;
  l.threads = o.threads;
  l.cancel = o.cancel;
  return l;
}

PsdVerdict psd(PsdTrace trace) { return PsdVerdict{Verdict::Psd, std::nullopt, trace}; }

PsdVerdict not_psd(SamplePoint w, PsdTrace trace) { return PsdVerdict{Verdict::NotPsd, std::move(w), trace}; }

SamplePoint origin(std::size_t n) { return SamplePoint(n, BigRat(0)); }

// The first sample point, in sorted order, where f is negative.
std::optional<SamplePoint> first_negative(const MultiPoly& f, const std::vector<SamplePoint>& pts) {
  for (const auto& p : pts) {
    if (sign_at(f, p) < 0) return p;
  }
  return std::nullopt;
}

// Moves a point where the odd part is negative but f vanishes onto a nearby
// point where f itself is negative. The odd part stays negative on a
// neighbourhood, and a generic line meets the even part's zeros finitely often.
SamplePoint repair(const MultiPoly& f, const MultiPoly& odd, SamplePoint w) {
  if (sign_at(f, w) < 0) return w;
  if (sign_at(odd, w) >= 0) throw Error("internal: witness does not make the odd part negative");
  const std::size_t n = w.size();
  for (std::size_t dir = 0; dir <= n; ++dir) {
    BigRat t(1);
    for (int k = 0; k < 256; ++k) {
      t /= 2;
      SamplePoint p = w;
      for (std::size_t i = 0; i < n; ++i) {
        const BigRat d = dir == n ? BigRat(static_cast<long>(i + 1), static_cast<long>(i + 2)) : BigRat(i == dir ? 1 : 0);
        p[i] += t * d;
      }
      if (sign_at(f, p) < 0) return p;
    }
  }
  throw Error("internal: could not move the witness off the even part");
}

struct Preprocessed {
  MultiPoly odd;                       // content sign times the odd parts, in f's ring
  MultiPoly compact;                   // odd with unused variables removed
  std::vector<Var> used;               // compact variable i is used[i]
};

Preprocessed preprocess(const MultiPoly& f) {
  const SqrfParts sp = sqrf_parts(f);
  Preprocessed out;
  out.odd = MultiPoly::constant(f.nvars(), BigInt(sp.sign));
  for (const auto& p : sp.odd_parts()) out.odd *= p;
  out.used = out.odd.support();
  std::vector<std::optional<Var>> map(f.nvars());
  for (std::size_t i = 0; i < out.used.size(); ++i) map[out.used[i]] = i;
  out.compact = out.odd.remap(map, out.used.size());
  return out;
}

SamplePoint expand(const SamplePoint& w, const std::vector<Var>& used, std::size_t n) {
  SamplePoint p = origin(n);
  for (std::size_t i = 0; i < used.size(); ++i) p[used[i]] = w[i];
  return p;
}

class Solver {
 public:
  explicit Solver(const PsdOptions& options) : options_(options) {}

  PsdVerdict run(const MultiPoly& f) {
    check_cancel(options_.cancel);
    if (f.is_zero()) return psd(PsdTrace::SampleCheck);
    if (f.is_constant()) {
      if (f.constant_value() >= 0) return psd(PsdTrace::SampleCheck);
      return not_psd(origin(f.nvars()), PsdTrace::SampleCheck);
    }
    const Preprocessed pre = preprocess(f);
    if (pre.compact.is_constant()) {
      // f is a nonzero constant times a square.
      if (pre.compact.constant_value() > 0) return psd(PsdTrace::SampleCheck);
      return psd_by_sample(f, options_);
    }
    const PsdVerdict v = solve(pre.compact);
    if (v.psd()) return v;
    return not_psd(repair(f, pre.odd, expand(*v.witness, pre.used, f.nvars())), v.trace);
  }

 private:
  // h is squarefree up to sign, and every variable occurs in it.
  PsdVerdict solve(const MultiPoly& h) {
    if (auto it = memo_.find(h); it != memo_.end()) return it->second;
    const PsdVerdict v = h.nvars() <= 2 ? proineq_base(h, options_) : np_step(h);
    memo_.emplace(h, v);
    return v;
  }

  // A point where h is negative on the line through w parallel to x_v.
  std::optional<SamplePoint> line_search(const MultiPoly& h, SamplePoint w, Var v) {
    Assignment fixed;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != v) fixed[i] = w[i];
    }
    const MultiPoly u = substitute(h, fixed).poly;
    if (u.is_zero()) return std::nullopt;
    std::vector<BigRat> xs{BigRat(0)};
    if (!u.is_constant()) xs = sp_one(u, u, options_.strategy);
    for (const auto& x : xs) {
      w[v] = x;
      if (sign_at(h, w) < 0) return w;
    }
    return std::nullopt;
  }

  enum class Check { SemiDefinite, Negative, Unknown };

  // Whether g is semi-definite; along the way, the negative witnesses of g
  // and -g seed a search for a point where h < 0.
  Check semi_definite(const MultiPoly& h, const MultiPoly& g, Var v, SamplePoint& witness) {
    for (const MultiPoly& s : {g, -g}) {
      const PsdVerdict r = run(s);
      if (r.psd()) return Check::SemiDefinite;
      if (auto w = line_search(h, *r.witness, v)) {
        witness = std::move(*w);
        return Check::Negative;
      }
    }
    return Check::Unknown;
  }

  PsdVerdict np_step(const MultiPoly& h) {
    const std::size_t k = h.nvars();
    const Var a = k - 1;
    const Var b = k - 2;
    std::vector<std::pair<MultiPoly, Var>> l1;
    for (Var v : {a, b}) {
      for (const auto& g : np_parts(h, v).np1) {
        if (g.is_constant()) continue;
        const bool seen = std::any_of(l1.begin(), l1.end(), [&](const auto& e) { return e.first == g; });
        if (!seen) l1.emplace_back(g, v);
      }
    }
    for (const auto& [g, v] : l1) {
      SamplePoint w;
      switch (semi_definite(h, g, v, w)) {
        case Check::SemiDefinite:
          break;
        case Check::Negative:
          return not_psd(std::move(w), PsdTrace::NpRecursion);
        case Check::Unknown: {
          PsdVerdict r = psd_by_sample(h, options_);
          r.trace = PsdTrace::Fallback;
          return r;
        }
      }
    }
    const ProjOrder pair{a, b};
    const MultiPoly l2 = np(h, pair).with_nvars(k - 2);
    const MultiPoly guard_a = np_designated(h, pair, a).with_nvars(k - 2);
    const MultiPoly guard_b = np_designated(h, pair, b).with_nvars(k - 2);
    std::vector<std::optional<Var>> map(k);
    map[b] = 0;
    map[a] = 1;
    for (const auto& alpha : base_points({l2, guard_a, guard_b})) {
      check_cancel(options_.cancel);
      MultiPoly fiber = substitute_prefix(h, alpha).poly;
      fiber = fiber.remap(map, 2);
      const PsdVerdict r = proineq_base(fiber, options_);
      if (!r.psd()) {
        SamplePoint w = alpha;
        w.insert(w.end(), r.witness->begin(), r.witness->end());
        return not_psd(std::move(w), PsdTrace::NpRecursion);
      }
    }
    return psd(PsdTrace::NpRecursion);
  }

  // Open sample of l2 != 0 in R^m avoiding the zeros of the guards, given
  // as {l2, guards...}. Every open cell of l2 != 0 keeps an open piece off
  // the guards' zeros, so an open sample of the product serves.
  std::vector<SamplePoint> base_points(const std::vector<MultiPoly>& polys) {
    const std::size_t m = polys.front().nvars();
    if (std::all_of(polys.begin(), polys.end(), [](const MultiPoly& p) { return p.is_constant(); })) return {origin(m)};
    return hp_two(polys, m, lift_options(options_)).points;
  }

  PsdOptions options_;
  std::map<MultiPoly, PsdVerdict, bool (*)(const MultiPoly&, const MultiPoly&)> memo_{canonical_less};
};

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::Psd ? "psd" : "not_psd"; }

std::string to_string(PsdTrace t) {
  switch (t) {
    case PsdTrace::SampleCheck:
      return "sample-check";
    case PsdTrace::NpRecursion:
      return "np-recursion";
    case PsdTrace::Fallback:
      return "fallback";
  }
  return "";
}

std::string to_string(SemiDefClass c) {
  switch (c) {
    case SemiDefClass::NonNegative:
      return "nonnegative";
    case SemiDefClass::NonPositive:
      return "nonpositive";
    case SemiDefClass::Indefinite:
      return "indefinite";
    case SemiDefClass::IdenticallyZero:
      return "zero";
  }
  return "";
}

PsdVerdict psd_by_sample(const MultiPoly& f, const PsdOptions& options) {
  if (f.is_zero()) return psd(PsdTrace::SampleCheck);
  if (f.is_constant()) {
    if (f.constant_value() >= 0) return psd(PsdTrace::SampleCheck);
    return not_psd(origin(f.nvars()), PsdTrace::SampleCheck);
  }
  const OpenSample s = hp_two(sqrf(f), lift_options(options));
  if (auto w = first_negative(f, s.points)) return not_psd(std::move(*w), PsdTrace::SampleCheck);
  return psd(PsdTrace::SampleCheck);
}

SemiDefSign semi_def(const MultiPoly& f, const PsdOptions& options) {
  SemiDefSign out;
  if (f.is_zero()) return out;
  std::vector<SamplePoint> pts{origin(f.nvars())};
  if (!f.is_constant()) pts = hp_two(sqrf(f), lift_options(options)).points;
  for (const auto& p : pts) {
    const int s = sign_at(f, p);
    if (s > 0 && !out.positive_witness) out.positive_witness = p;
    if (s < 0 && !out.negative_witness) out.negative_witness = p;
  }
  if (out.positive_witness && out.negative_witness) {
    out.classification = SemiDefClass::Indefinite;
  } else if (out.negative_witness) {
    out.classification = SemiDefClass::NonPositive;
  } else {
    out.classification = SemiDefClass::NonNegative;
  }
  return out;
}

PsdVerdict proineq_base(const MultiPoly& f, const PsdOptions& options) {
  const std::size_t level = f.level();
  if (level > 2) throw DomainError("proineq_base needs at most two variables");
  if (level == f.nvars()) return psd_by_sample(f, options);
  PsdVerdict v = psd_by_sample(f.with_nvars(level), options);
  if (v.witness) v.witness->resize(f.nvars(), BigRat(0));
  return v;
}

PsdVerdict psd_hp_two(const MultiPoly& f, const PsdOptions& options) {
  Solver solver(options);
  PsdVerdict v = solver.run(f);
  if (v.witness && sign_at(f, *v.witness) >= 0) throw Error("internal: witness is not negative");
  return v;
}

}  // namespace hpcad
