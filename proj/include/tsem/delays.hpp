#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsem/engine.hpp"

namespace tsem {

// A model whose equations read values a fixed number of steps back
// (`NAME[-t]`, 1 <= t <= xi). Until step d(X) = max lag of X's equation, X
// keeps its previous value; from step d(X) on the equation applies, reading
// back to index i - t >= 0.
class DelayedModel {
 public:
  DelayedModel(Signature sig, std::map<std::string, ExprPtr, std::less<>> equations);

  const Signature& signature() const { return sig_; }
  const ExprPtr& equation(std::string_view name) const;

  // Lagged reads of X's equation, sorted; empty for constant equations.
  const std::vector<std::pair<std::string, int>>& domain(std::string_view name) const;
  int d_max(std::string_view name) const;  // 0 for constant equations
  int xi() const { return xi_; }           // maximal lag overall (0 if none)

 private:
  Signature sig_;
  std::map<std::string, ExprPtr, std::less<>> equations_;
  std::map<std::string, std::vector<std::pair<std::string, int>>, std::less<>> domains_;
  int xi_ = 0;
};

// Parses and checks a delayed description (declared xi, when present, must
// equal the computed maximal lag).
DelayedModel validate_delayed_model(const ModelDescription& d);

FiniteTrace run_delayed(const DelayedModel& m, const PeriodicSeq& context,
                        const Assignment& init, const Intervention& intervention,
                        std::size_t steps);

// Equivalent one-step model: a chain variable per (source, depth) carries the
// value `depth` steps back, ranging over the source's range plus the
// undefined marker `#`. Rewritten equations read chain slots and keep the
// previous value while any needed slot is still `#`, which reproduces the
// keep-until-d(X) warmup exactly. Endogenous count grows by at most
// (number of lagged parents) * (xi - 1).
struct CompiledModelMap {
  Model model;
  // (source variable, depth) -> chain variable name; depth in [1, xi-1].
  std::map<std::pair<std::string, int>, std::string> fresh;
  Value undef_marker;

  // Original initial assignments extend with `#` on every chain variable.
  Assignment extend_init(const Assignment& init) const;
};

CompiledModelMap compile_to_onestep(const DelayedModel& m);

// Lasso of the delayed computation, observed on the original variables:
// compile, run periodically, project, normalize.
Computation periodic_delayed(const DelayedModel& m, const PeriodicSeq& context,
                             const Assignment& init, const Intervention& intervention);

}  // namespace tsem
