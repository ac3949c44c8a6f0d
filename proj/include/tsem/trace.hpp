#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsem/model.hpp"

namespace tsem {

// A finite run: states[i] is the assignment at step i.
struct FiniteTrace {
  std::vector<Assignment> states;
};

// An ultimately periodic sequence of assignments: `prefix` followed by `loop`
// repeated forever. The loop is never empty; all states assign the same
// variable set. Value semantics, immutable.
class PeriodicSeq {
 public:
  PeriodicSeq(std::vector<Assignment> prefix, std::vector<Assignment> loop);
  static PeriodicSeq constant(Assignment state);

  const Assignment& at(std::size_t i) const;

  std::size_t prefix_len() const { return prefix_.size(); }
  std::size_t loop_len() const { return loop_.size(); }
  const std::vector<Assignment>& prefix() const { return prefix_; }
  const std::vector<Assignment>& loop() const { return loop_; }
  std::vector<std::string> variable_names() const { return loop_.front().names(); }

  // Same infinite sequence, minimal loop length, then minimal prefix length.
  PeriodicSeq normalized() const;

  // Pointwise projection to a subset of variables (UnknownObservable).
  PeriodicSeq restricted(const std::vector<std::string>& keep) const;

  // Representation equality; use seq_equal for sequence equality.
  bool operator==(const PeriodicSeq& o) const { return prefix_ == o.prefix_ && loop_ == o.loop_; }
  bool operator!=(const PeriodicSeq& o) const { return !(*this == o); }

  std::string to_string() const;  // "(s0, s1 | l0, l1)"

 private:
  std::vector<Assignment> prefix_, loop_;
};

FiniteTrace unroll(const PeriodicSeq& s, std::size_t n);

// Subsequence i -> s(i*k); k >= 1.
PeriodicSeq stepped(const PeriodicSeq& s, std::size_t k);

// Equality of the projections to `observe` at every index from 1 on
// (index 0 included only when `include_index0`). Decided exactly by
// comparing up to max(x1, x2) + lcm(y1, y2).
bool seq_equal(const PeriodicSeq& s1, const PeriodicSeq& s2,
               const std::vector<std::string>& observe, bool include_index0 = false);

// s1(i) vs s2(i*k) for all i >= 1.
bool seq_equal_rescaled(const PeriodicSeq& s1, const PeriodicSeq& s2,
                        const std::vector<std::string>& observe, std::size_t k);

// First index >= start where the projections differ, along with a differing
// variable; nullopt if the sequences agree.
struct Divergence {
  std::size_t index;
  std::string variable;
};
std::optional<Divergence> first_divergence(const PeriodicSeq& s1, const PeriodicSeq& s2,
                                           const std::vector<std::string>& observe,
                                           std::size_t start = 1);

}  // namespace tsem
