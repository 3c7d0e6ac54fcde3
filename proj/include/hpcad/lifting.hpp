#pragma once

#include <string>
#include <vector>

#include "hpcad/cancel.hpp"
#include "hpcad/poly.hpp"
#include "hpcad/projection.hpp"
#include "hpcad/realroots.hpp"

namespace hpcad {

/// A base point does not avoid the zeros of the guard it must avoid.
class InvalidBase : public Error {
 public:
  using Error::Error;
};

using SamplePoint = std::vector<BigRat>;

/// Sample points of a common dimension, sorted lexicographically, with the
/// number of points reached at each level of the construction.
struct OpenSample {
  std::vector<SamplePoint> points;
  std::size_t first_level = 1;
  std::vector<std::size_t> counts;  // counts[k] is the size at level first_level + k
  std::string method;
  Strategy strategy = Strategy::Simplest;

  std::size_t size() const { return points.size(); }
};

struct LiftOptions {
  Strategy strategy = Strategy::Simplest;
  unsigned threads = 1;
  const CancelToken* cancel = nullptr;
  HpCache* cache = nullptr;
};

/// Lifts every base point through the levels of `spec` above the base
/// dimension: at level i each point a gets one child per cell of
/// sp_one(lift_i(a, x_i), guard_i(a, x_i)).
OpenSample open_sp(const LiftSpec& spec, std::vector<SamplePoint> base, const LiftOptions& options = {});

/// Sample points for the base level of `spec` (level spec.first, which must
/// be 1): one per cell of the level-1 lift polynomial avoiding its guard.
std::vector<SamplePoint> base_sample(const LiftSpec& spec, const LiftOptions& options = {});

/// Brown projection chain F_n = f, F_{k} = Bp(F_{k+1}, x_{k+1}); each level
/// lifted against itself. f must be nonconstant.
OpenSample open_cad(const MultiPoly& f, const LiftOptions& options = {});

/// Lifts an open sample of Hp(f,[x_n..x_j]) in R^{j-1} through the Hp chain.
/// Base points must avoid the zeros of Hp(f,[x_n..x_j],x_j).
OpenSample reduced_open_cad(const MultiPoly& f, std::size_t j, std::vector<SamplePoint> base,
                            const LiftOptions& options = {});

/// A valid base for reduced_open_cad: an open sample of Hp(f,[x_n..x_j])
/// avoiding its guard, built with hp_two in R^{j-1}.
std::vector<SamplePoint> reduced_base(const MultiPoly& f, std::size_t j, const LiftOptions& options = {});

/// The per-level lift/guard pairs assembled by the two-variable Hp descent.
LiftSpec hp_two_spec(const MultiPoly& f, HpCache* cache = nullptr);

/// Open sample of f != 0 via the two-variable Hp descent.
OpenSample hp_two(const MultiPoly& f, const LiftOptions& options = {});
/// Open sample of the product of `polys` != 0. Keeping the factors apart
/// lets the projections work on each factor and each pair separately.
OpenSample hp_two(const std::vector<MultiPoly>& polys, std::size_t nvars, const LiftOptions& options = {});

}  // namespace hpcad
