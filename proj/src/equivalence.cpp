#include "tsem/equivalence.hpp"

#include <algorithm>
#include <random>

#include "tsem/errors.hpp"

namespace tsem {

namespace {

bool same_exogenous(const Signature& a, const Signature& b) {
  if (a.exogenous().size() != b.exogenous().size()) return false;
  for (const Variable& v : a.exogenous()) {
    const Variable* w = b.find(v.name);
    if (!w || w->kind != VarKind::Exogenous || w->range != v.range) return false;
  }
  return true;
}

// Enumerates assignments over the given variables in product order (variables
// in signature order, each range in canonical order); pinned names are fixed.
class AssignmentEnumerator {
 public:
  AssignmentEnumerator(const std::vector<Variable>& vars, const Assignment* pinned) {
    for (const Variable& v : vars) {
      if (pinned && pinned->has(v.name)) {
        if (!v.range.contains(pinned->at(v.name)))
          fail(ErrorKind::OutOfRangeValue,
               "pinned value for '" + v.name + "' is outside its range");
        fixed_.set(v.name, pinned->at(v.name));
      } else {
        axes_.push_back({v.name, v.range.values()});
        index_.push_back(0);
      }
    }
  }

  std::optional<Assignment> next() {
    if (done_) return std::nullopt;
    Assignment a = fixed_;
    for (std::size_t i = 0; i < axes_.size(); ++i)
      a.set(axes_[i].first, axes_[i].second[index_[i]]);
    // Odometer increment, last axis fastest.
    done_ = true;
    for (std::size_t i = axes_.size(); i-- > 0;) {
      if (++index_[i] < axes_[i].second.size()) {
        done_ = false;
        break;
      }
      index_[i] = 0;
    }
    if (axes_.empty()) done_ = true;
    return a;
  }

 private:
  Assignment fixed_;
  std::vector<std::pair<std::string, std::vector<Value>>> axes_;
  std::vector<std::size_t> index_;
  bool done_ = false;
};

struct InstanceOutcome {
  std::optional<Assignment> match;
  std::size_t best_divergence_index = 0;
  std::string divergence_variable;
};

// Target search shared by the plain and rescaled tests. `compare` returns the
// first divergence of (source computation, candidate computation) or nullopt.
template <typename Compare>
InstanceOutcome search_target(const Model& target, const PeriodicSeq& context,
                              const Intervention& target_intervention, const Assignment& v1,
                              const Assignment* hint, Compare compare) {
  InstanceOutcome outcome;
  auto consider = [&](const Assignment& v2) {
    Computation c2 = periodic_computation(make_scenario(target, context, v2),
                                          target_intervention);
    std::optional<Divergence> d = compare(c2.seq);
    if (!d.has_value()) {
      outcome.match = v2;
      return true;
    }
    if (d->index > outcome.best_divergence_index || outcome.divergence_variable.empty()) {
      outcome.best_divergence_index = d->index;
      outcome.divergence_variable = d->variable;
    }
    return false;
  };

  // The source initial assignment often is the correspondence; try it first.
  std::optional<Assignment> tried_first;
  bool covers = true;
  for (const Variable& v : target.signature().endogenous())
    if (!v1.has(v.name) || !v.range.contains(v1.at(v.name))) {
      covers = false;
      break;
    }
  if (covers) {
    Assignment direct;
    for (const Variable& v : target.signature().endogenous()) direct.set(v.name, v1.at(v.name));
    bool respects_hint = true;
    if (hint) {
      for (const auto& [name, value] : hint->entries())
        if (!direct.has(name) || direct.at(name) != value) { respects_hint = false; break; }
    }
    if (respects_hint) {
      tried_first = direct;
      if (consider(direct)) return outcome;
    }
  }

  AssignmentEnumerator en(target.signature().endogenous(), hint);
  while (auto v2 = en.next()) {
    if (tried_first.has_value() && *v2 == *tried_first) continue;
    if (consider(*v2)) return outcome;
  }
  return outcome;
}

}  // namespace

ObservableSet make_observables(const Model& m1, const Model& m2,
                               std::vector<std::string> names) {
  if (names.empty()) fail(ErrorKind::Validation, "observable set must not be empty");
  if (!same_exogenous(m1.signature(), m2.signature()))
    fail(ErrorKind::IncompatibleSignatures, "models do not share their exogenous signature");
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const std::string& n : names) {
    const Variable* a = m1.signature().find(n);
    const Variable* b = m2.signature().find(n);
    if (!a || !b || a->kind != VarKind::Endogenous || b->kind != VarKind::Endogenous)
      fail(ErrorKind::UnknownObservable,
           "observable '" + n + "' is not endogenous in both models");
    if (a->range != b->range)
      fail(ErrorKind::IncompatibleSignatures,
           "observable '" + n + "' has different ranges in the two models");
  }
  return ObservableSet{std::move(names)};
}

std::optional<Assignment> check_equiv_instance(const Model& m1, const Model& m2,
                                               const ObservableSet& observe,
                                               const Intervention& intervention,
                                               const PeriodicSeq& context,
                                               const Assignment& v1) {
  for (const Intervention::Entry& e : intervention.entries())
    if (std::find(observe.names.begin(), observe.names.end(), e.name) == observe.names.end())
      fail(ErrorKind::InterventionOutsideObservables,
           "intervention on '" + e.name + "' is outside the observables");
  Computation c1 = periodic_computation(make_scenario(m1, context, v1), intervention);
  InstanceOutcome out = search_target(
      m2, context, intervention, v1, nullptr,
      [&](const PeriodicSeq& s2) { return first_divergence(c1.seq, s2, observe.names); });
  return out.match;
}

namespace {

std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq sq{seed, static_cast<std::uint64_t>(index)};
  return std::mt19937_64(sq);
}

Value random_value(std::mt19937_64& rng, const Range& range) {
  std::vector<Value> vals = range.values();
  std::uniform_int_distribution<std::size_t> d(0, vals.size() - 1);
  return vals[d(rng)];
}

Assignment random_assignment(std::mt19937_64& rng, const std::vector<Variable>& vars) {
  Assignment a;
  for (const Variable& v : vars) a.set(v.name, random_value(rng, v.range));
  return a;
}

PeriodicSeq random_context(std::mt19937_64& rng, const Signature& sig,
                           const SamplerConfig& cfg) {
  std::uniform_int_distribution<std::size_t> plen(0, cfg.max_context_prefix);
  std::uniform_int_distribution<std::size_t> llen(1, std::max<std::size_t>(1, cfg.max_context_loop));
  std::vector<Assignment> prefix, loop;
  std::size_t np = plen(rng), nl = llen(rng);
  for (std::size_t i = 0; i < np; ++i) prefix.push_back(random_assignment(rng, sig.exogenous()));
  for (std::size_t i = 0; i < nl; ++i) loop.push_back(random_assignment(rng, sig.exogenous()));
  return PeriodicSeq(std::move(prefix), std::move(loop));
}

Intervention random_intervention(std::mt19937_64& rng, const Model& m,
                                 const ObservableSet& observe, const SamplerConfig& cfg) {
  std::uniform_int_distribution<std::size_t> size(0, cfg.max_intervention_size);
  std::uniform_int_distribution<std::size_t> pick(0, observe.names.size() - 1);
  std::uniform_int_distribution<std::size_t> time(0, cfg.max_time);
  std::vector<Intervention::Entry> entries;
  std::size_t want = size(rng);
  for (std::size_t attempts = 0; entries.size() < want && attempts < want * 8 + 8; ++attempts) {
    const std::string& name = observe.names[pick(rng)];
    std::size_t t = time(rng);
    bool dup = false;
    for (const Intervention::Entry& e : entries)
      if (e.name == name && e.time == t) { dup = true; break; }
    if (dup) continue;
    entries.push_back({name, t, random_value(rng, m.signature().require(name).range)});
  }
  return Intervention(std::move(entries));
}

// One direction of one sampled instance; fills in the counterexample on miss.
template <typename Compare>
bool run_direction(const Model& source, const Model& target, const PeriodicSeq& context,
                   const Intervention& source_int, const Intervention& target_int,
                   const Assignment& v_source, const SamplerConfig& cfg, Direction dir,
                   EquivVerdict& verdict, Compare compare) {
  Computation c1 = periodic_computation(make_scenario(source, context, v_source), source_int);
  const Assignment* hint =
      (dir == Direction::Forward && cfg.v2_hint.has_value()) ? &*cfg.v2_hint : nullptr;
  InstanceOutcome out = search_target(target, context, target_int, v_source, hint,
                                      [&](const PeriodicSeq& s2) { return compare(c1.seq, s2); });
  if (out.match.has_value()) return true;
  verdict.counterexample =
      Counterexample{dir, source_int, context, v_source, out.best_divergence_index,
                     out.divergence_variable};
  return false;
}

}  // namespace

EquivVerdict test_model_equivalence(const Model& m1, const Model& m2,
                                    const ObservableSet& observe, const SamplerConfig& cfg) {
  EquivVerdict verdict;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    std::mt19937_64 rng = sample_rng(cfg.seed, i);
    PeriodicSeq context = random_context(rng, m1.signature(), cfg);
    Intervention intervention = random_intervention(rng, m1, observe, cfg);
    Assignment v1 = random_assignment(rng, m1.signature().endogenous());
    Assignment v2 = random_assignment(rng, m2.signature().endogenous());
    ++verdict.instances_tested;
    auto plain = [&](const PeriodicSeq& a, const PeriodicSeq& b) {
      return first_divergence(a, b, observe.names);
    };
    if (!run_direction(m1, m2, context, intervention, intervention, v1, cfg,
                       Direction::Forward, verdict, plain))
      return verdict;
    if (!run_direction(m2, m1, context, intervention, intervention, v2, cfg,
                       Direction::Reverse, verdict, plain))
      return verdict;
  }
  return verdict;
}

Intervention scale_intervention(const Intervention& intervention, std::size_t k) {
  if (k == 0) fail(ErrorKind::Validation, "scale factor must be at least 1");
  std::vector<Intervention::Entry> entries = intervention.entries();
  for (Intervention::Entry& e : entries) e.time *= k;
  return Intervention(std::move(entries));
}

EquivVerdict test_rescalable_equivalence(const Model& m1, const Model& m2,
                                         const ObservableSet& observe, std::size_t k,
                                         const SamplerConfig& cfg) {
  if (k == 0) fail(ErrorKind::Validation, "scale factor must be at least 1");
  EquivVerdict verdict;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    std::mt19937_64 rng = sample_rng(cfg.seed, i);
    PeriodicSeq context = random_context(rng, m1.signature(), cfg);
    Intervention intervention = random_intervention(rng, m1, observe, cfg);
    Assignment v1 = random_assignment(rng, m1.signature().endogenous());
    ++verdict.instances_tested;
    // m2 sees the same context but its intervention times stretched by k;
    // agreement is demanded at the sampled indices i*k only.
    auto rescaled = [&](const PeriodicSeq& a, const PeriodicSeq& b) {
      return first_divergence(a, stepped(b, k), observe.names);
    };
    if (!run_direction(m1, m2, context, intervention, scale_intervention(intervention, k), v1,
                       cfg, Direction::Forward, verdict, rescaled))
      return verdict;
  }
  return verdict;
}

}  // namespace tsem
