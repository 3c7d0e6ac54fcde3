#pragma once

#include <optional>
#include <string>

#include "hpcad/lifting.hpp"

namespace hpcad {

enum class Verdict { Psd, NotPsd };

/// Which path produced a verdict.
enum class PsdTrace { SampleCheck, NpRecursion, Fallback };

/// A NotPsd verdict always carries a witness at which f is exactly negative.
struct PsdVerdict {
  Verdict verdict = Verdict::Psd;
  std::optional<SamplePoint> witness;
  PsdTrace trace = PsdTrace::SampleCheck;

  bool psd() const { return verdict == Verdict::Psd; }
};

enum class SemiDefClass { NonNegative, NonPositive, Indefinite, IdenticallyZero };

/// Classification with a witness for each strict sign observed.
struct SemiDefSign {
  SemiDefClass classification = SemiDefClass::IdenticallyZero;
  std::optional<SamplePoint> positive_witness;
  std::optional<SamplePoint> negative_witness;
};

struct PsdOptions {
  Strategy strategy = Strategy::Simplest;
  unsigned threads = 1;
  const CancelToken* cancel = nullptr;
};

std::string to_string(Verdict v);
std::string to_string(PsdTrace t);
std::string to_string(SemiDefClass c);

/// Complete test: f is PSD iff it is nonnegative at every hp_two sample of
/// its squarefree part.
PsdVerdict psd_by_sample(const MultiPoly& f, const PsdOptions& options = {});

/// Sign classification from the hp_two samples of the squarefree part.
SemiDefSign semi_def(const MultiPoly& f, const PsdOptions& options = {});

/// Base case for at most two variables. Throws DomainError when level(f) > 2.
PsdVerdict proineq_base(const MultiPoly& f, const PsdOptions& options = {});

/// Semi-definiteness by the Np recursion, falling back to psd_by_sample
/// whenever a secondary projection factor is not semi-definite.
PsdVerdict psd_hp_two(const MultiPoly& f, const PsdOptions& options = {});

}  // namespace hpcad
