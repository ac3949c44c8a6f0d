#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsem/model.hpp"
#include "tsem/trace.hpp"

namespace tsem {

// Time-indexed assignments that override equation results: at step `time`,
// variable `name` takes `value` regardless of its equation. At most one entry
// per (name, time); names must be endogenous and values in range, which is
// checked against a signature before any run.
class Intervention {
 public:
  struct Entry {
    std::string name;
    std::size_t time;
    Value value;
  };

  Intervention() = default;
  explicit Intervention(std::vector<Entry> entries);  // DuplicateInterventionTime

  static Intervention none() { return Intervention(); }

  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t max_time() const;  // 0 when empty

  const Value* lookup(std::string_view name, std::size_t time) const;

  void validate_against(const Signature& sig) const;

  std::string to_string() const;  // "[BT@0:=1, ST@2:=1]"

 private:
  std::vector<Entry> entries_;  // sorted by (time, name)
};

// Everything a run needs: the model, an ultimately periodic context over the
// exogenous variables, and an initial assignment of the endogenous ones.
struct Scenario {
  Model model;
  PeriodicSeq context;
  Assignment init;
};

Scenario make_scenario(Model model, PeriodicSeq context, Assignment init);

// The initial state with time-0 intervention entries applied.
Assignment intervention_initial(const Assignment& init, const Intervention& intervention);

// States 0..steps-1 of the intervened computation. Step i > 0 evaluates every
// equation on (context(i-1), state(i-1)), then entries scheduled at i override
// their variables.
FiniteTrace run(const Scenario& sc, const Intervention& intervention, std::size_t steps);

struct Computation {
  PeriodicSeq seq;  // normalized
  std::size_t raw_prefix_len;  // loop start as first detected, before normalization
  std::size_t raw_loop_len;
};

// Detects the lasso: beyond n* = max(context prefix, last intervention time)
// the dynamics are a function of (state, position in context loop), so the
// first repeated pair closes the loop. Terminates within
// loop_len(context) * |state space| steps past n*.
Computation periodic_computation(const Scenario& sc, const Intervention& intervention);

}  // namespace tsem
