#include "tsem/engine.hpp"

#include <algorithm>
#include <unordered_map>

#include "tsem/errors.hpp"

namespace tsem {

Intervention::Intervention(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.time != b.time ? a.time < b.time : a.name < b.name;
  });
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i - 1].time == entries_[i].time && entries_[i - 1].name == entries_[i].name)
      fail(ErrorKind::DuplicateInterventionTime,
           "two interventions on '" + entries_[i].name + "' at time " +
               std::to_string(entries_[i].time));
}

std::size_t Intervention::max_time() const {
  return entries_.empty() ? 0 : entries_.back().time;
}

const Value* Intervention::lookup(std::string_view name, std::size_t time) const {
  for (const Entry& e : entries_) {
    if (e.time > time) break;
    if (e.time == time && e.name == name) return &e.value;
  }
  return nullptr;
}

void Intervention::validate_against(const Signature& sig) const {
  for (const Entry& e : entries_) {
    const Variable& v = sig.require(e.name);
    if (v.kind != VarKind::Endogenous)
      fail(ErrorKind::ExogenousIntervention,
           "cannot intervene on exogenous variable '" + e.name + "'");
    if (!v.range.contains(e.value))
      fail(ErrorKind::OutOfRangeValue, "intervention value " + e.value.to_string() +
                                           " is outside the range of '" + e.name + "'");
  }
}

std::string Intervention::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ", ";
    s += entries_[i].name + "@" + std::to_string(entries_[i].time) +
         ":=" + entries_[i].value.to_string();
  }
  return s + "]";
}

Scenario make_scenario(Model model, PeriodicSeq context, Assignment init) {
  const Signature& sig = model.signature();
  for (const Assignment& a : context.prefix()) validate_covers_exogenous(a, sig);
  for (const Assignment& a : context.loop()) validate_covers_exogenous(a, sig);
  validate_covers_endogenous(init, sig);
  return Scenario{std::move(model), std::move(context), std::move(init)};
}

Assignment intervention_initial(const Assignment& init, const Intervention& intervention) {
  Assignment out = init;
  for (const Intervention::Entry& e : intervention.entries())
    if (e.time == 0) out.set(e.name, e.value);
  return out;
}

namespace {

// One intervened step: equations first, scheduled overrides second.
Assignment intervened_step(const Scenario& sc, const Intervention& intervention,
                           const Assignment& prev, std::size_t i) {
  Assignment next = sc.model.step(sc.context.at(i - 1), prev);
  for (const Intervention::Entry& e : intervention.entries())
    if (e.time == i) next.set(e.name, e.value);
  return next;
}

}  // namespace

FiniteTrace run(const Scenario& sc, const Intervention& intervention, std::size_t steps) {
  if (steps == 0) fail(ErrorKind::Validation, "a run needs at least one step");
  intervention.validate_against(sc.model.signature());
  FiniteTrace t;
  t.states.reserve(steps);
  t.states.push_back(intervention_initial(sc.init, intervention));
  for (std::size_t i = 1; i < steps; ++i)
    t.states.push_back(intervened_step(sc, intervention, t.states.back(), i));
  return t;
}

Computation periodic_computation(const Scenario& sc, const Intervention& intervention) {
  intervention.validate_against(sc.model.signature());

  const std::size_t n = sc.context.prefix_len();
  const std::size_t m = sc.context.loop_len();
  const std::size_t nstar = std::max(n, intervention.max_time());

  std::vector<Assignment> states;
  states.push_back(intervention_initial(sc.init, intervention));
  for (std::size_t i = 1; i <= nstar; ++i)
    states.push_back(intervened_step(sc, intervention, states.back(), i));

  // From n* on every transition is pure and the context is in its loop, so a
  // repeat of (state, context position) closes the loop. Buckets keyed by
  // hash; equality re-checked to survive collisions.
  auto key = [&](const Assignment& a, std::size_t i) {
    return hash_combine(a.hash(), (i - n) % m);
  };
  std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
  seen[key(states[nstar], nstar)].push_back(nstar);

  for (std::size_t i = nstar + 1;; ++i) {
    states.push_back(sc.model.step(sc.context.at(i - 1), states.back()));
    std::size_t k = key(states[i], i);
    auto it = seen.find(k);
    if (it != seen.end()) {
      for (std::size_t j : it->second) {
        if ((j - n) % m == (i - n) % m && states[j] == states[i]) {
          std::vector<Assignment> prefix(states.begin(), states.begin() + j);
          std::vector<Assignment> loop(states.begin() + j, states.begin() + i);
          PeriodicSeq raw(std::move(prefix), std::move(loop));
          return Computation{raw.normalized(), j, i - j};
        }
      }
    }
    seen[k].push_back(i);
  }
}

}  // namespace tsem
