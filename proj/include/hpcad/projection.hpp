#pragma once

#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hpcad/cancel.hpp"
#include "hpcad/poly.hpp"

namespace hpcad {

/// Distinct variables [y_1, ..., y_m], listed in projection order.
using ProjOrder = std::vector<Var>;

/// Brown projection of a single polynomial with respect to v: the
/// normalized Res(sqrf(f), d/dv sqrf(f)), or f itself when f does not
/// depend on v.
MultiPoly bp_single(const MultiPoly& f, Var v);

/// Brown projection of a set: single projections and pairwise resultants of
/// the members depending on v (after splitting shared factors), members free
/// of v passed through. Constants are dropped; result sorted canonically.
std::vector<MultiPoly> bp_set(const std::vector<MultiPoly>& polys, Var v);

/// bp_single folded along `order`.
MultiPoly bp_chain(const MultiPoly& f, const ProjOrder& order);

/// Squarefree, pairwise coprime, normalized, nonconstant polynomials sorted
/// canonically; stands for their product. The empty list is the constant 1.
using FactorList = std::vector<MultiPoly>;

/// Factor list of sqrf(f); the constant 1 for constant f.
FactorList factor_list(const MultiPoly& f);
/// Coprime refinement of the squarefree parts of `polys`.
FactorList factor_list(const std::vector<MultiPoly>& polys);
/// Product of the list as a polynomial with `nvars` variables.
MultiPoly expand(const FactorList& fs, std::size_t nvars);

/// Concurrent memo table for Hp values, keyed by factor list and variable
/// set. The optional cancel token is polled before every Brown projection
/// made through the cache.
class HpCache {
 public:
  explicit HpCache(const CancelToken* cancel = nullptr) : cancel_(cancel) {}

  struct Key {
    FactorList polys;
    std::vector<Var> vars;  // sorted
    std::optional<Var> designated;
    bool exact = false;  // exact Hp value rather than a factor list
    bool operator==(const Key&) const = default;
  };

  std::optional<FactorList> find(const Key& key) const;
  void insert(const Key& key, const FactorList& value);
  std::size_t size() const;
  void check_cancel() const { hpcad::check_cancel(cancel_); }

 private:
  const CancelToken* cancel_;
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  mutable std::mutex mu_;
  std::unordered_map<Key, FactorList, KeyHash> map_;
};

/// Hp(f, vars): the gcd of the designated projections over every choice of
/// last variable; Hp(f, []) = f. Uses `cache` when given, else a local one.
MultiPoly hp(const MultiPoly& f, const ProjOrder& vars, HpCache* cache = nullptr);
/// Hp(f, vars, y) = Bp(Hp(f, vars without y), y).
MultiPoly hp_designated(const MultiPoly& f, const ProjOrder& vars, Var y, HpCache* cache = nullptr);

/// Factor-list forms of hp and hp_designated with the same zero sets; `nvars`
/// is the ring size. Each Brown projection works on the factors and their
/// pairs separately, which keeps the resultants small.
FactorList hp_factors(const FactorList& f, std::size_t nvars, const ProjOrder& vars, HpCache* cache = nullptr);
FactorList hp_designated_factors(const FactorList& f, std::size_t nvars, const ProjOrder& vars, Var y,
                                 HpCache* cache = nullptr);

struct LiftLevel {
  MultiPoly lift;
  MultiPoly guard;
};

/// Per-level (lift, guard) pairs for the levels first..first+levels.size()-1.
/// Level numbers are 1-based: level k polynomials live in x_1..x_k.
struct LiftSpec {
  std::size_t first = 1;
  std::vector<LiftLevel> levels;

  std::size_t last() const { return first + levels.size() - 1; }
  const LiftLevel& at(std::size_t level) const { return levels.at(level - first); }
};

/// The Hp chain for a reduced open CAD of f with respect to [x_n, ..., x_j]:
/// level j-1 holds Hp(f,[x_n..x_j]) guarded by Hp(f,[x_n..x_j],x_j); level
/// l in j..n-1 holds Hp(f,[x_n..x_{l+1}]) guarded by Hp(f,[x_n..x_{l+1}],x_{l+1});
/// level n holds (f, f). Here n is the number of variables of f.
LiftSpec hp_liftspec(const MultiPoly& f, std::size_t j, HpCache* cache = nullptr);

/// Odd classes (np1) and the product of even-only classes (np2) of the
/// leading coefficient and discriminant of sqrf(f) with respect to v.
struct NpParts {
  std::vector<MultiPoly> np1;
  MultiPoly np2;
};

NpParts np_parts(const MultiPoly& f, Var v);

/// Np(f, vars) and Np(f, vars, y): Hp-style recursion with the singleton
/// base cases Np(f,[x]) = np2 and Np(f,[x],x) = product of np1.
MultiPoly np(const MultiPoly& f, const ProjOrder& vars);
MultiPoly np_designated(const MultiPoly& f, const ProjOrder& vars, Var y);

}  // namespace hpcad
