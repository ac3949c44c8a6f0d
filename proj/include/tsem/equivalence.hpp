#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsem/engine.hpp"

namespace tsem {

// Observables must be endogenous in both models with identical ranges, and
// the two models must share their exogenous signature exactly.
struct ObservableSet {
  std::vector<std::string> names;
};

ObservableSet make_observables(const Model& m1, const Model& m2,
                               std::vector<std::string> names);

// One instance: fixed intervention, context and source-side initial
// assignment. Enumerates every initial assignment of the target model and
// returns the first one whose intervened computation matches on the
// observables (v1 itself is tried first when its names cover the target).
// Interventions must stay inside the observables.
std::optional<Assignment> check_equiv_instance(const Model& m1, const Model& m2,
                                               const ObservableSet& observe,
                                               const Intervention& intervention,
                                               const PeriodicSeq& context,
                                               const Assignment& v1);

enum class Direction { Forward, Reverse };  // forward: m1 is the source

struct Counterexample {
  Direction direction;
  Intervention intervention;
  PeriodicSeq context;
  Assignment source_init;
  // Divergence against the closest candidate: the enumerated target init
  // with the largest first-divergence index.
  std::size_t divergence_index;
  std::string variable;
};

struct EquivVerdict {
  std::optional<Counterexample> counterexample;
  std::size_t instances_tested = 0;

  bool no_counterexample_found() const { return !counterexample.has_value(); }
};

struct SamplerConfig {
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::size_t max_intervention_size = 2;
  std::size_t max_time = 6;          // latest intervention time index
  std::size_t max_context_prefix = 3;
  std::size_t max_context_loop = 3;
  std::optional<Assignment> v2_hint;  // pins these variables during the target search
};

// Bounded refutation over seeded random instances, both directions. Finding
// no counterexample is not a proof of equivalence. Deterministic for a fixed
// seed; per-sample generators are seeded from (seed, sample index).
EquivVerdict test_model_equivalence(const Model& m1, const Model& m2,
                                    const ObservableSet& observe, const SamplerConfig& cfg);

// Same entries with every time index multiplied by k.
Intervention scale_intervention(const Intervention& intervention, std::size_t k);

// One-directional: m2, run under the time-scaled intervention, must match
// m1 on the observables at indices i*k.
EquivVerdict test_rescalable_equivalence(const Model& m1, const Model& m2,
                                         const ObservableSet& observe, std::size_t k,
                                         const SamplerConfig& cfg);

}  // namespace tsem
