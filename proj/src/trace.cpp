#include "tsem/trace.hpp"

#include <algorithm>
#include <numeric>

#include "tsem/errors.hpp"

namespace tsem {

namespace {

void check_uniform_names(const std::vector<Assignment>& prefix,
                         const std::vector<Assignment>& loop) {
  const Assignment& ref = loop.front();
  auto same = [&](const Assignment& a) {
    if (a.size() != ref.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.entries()[i].first != ref.entries()[i].first) return false;
    return true;
  };
  for (const Assignment& a : prefix)
    if (!same(a)) fail(ErrorKind::Validation, "sequence states assign different variable sets");
  for (const Assignment& a : loop)
    if (!same(a)) fail(ErrorKind::Validation, "sequence states assign different variable sets");
}

void check_observables(const PeriodicSeq& s, const std::vector<std::string>& observe) {
  const Assignment& probe = s.loop().front();
  for (const std::string& name : observe)
    if (!probe.has(name))
      fail(ErrorKind::UnknownObservable, "observable '" + name + "' is not in the sequence");
}

}  // namespace

PeriodicSeq::PeriodicSeq(std::vector<Assignment> prefix, std::vector<Assignment> loop)
    : prefix_(std::move(prefix)), loop_(std::move(loop)) {
  if (loop_.empty()) fail(ErrorKind::Validation, "periodic sequence needs a non-empty loop");
  check_uniform_names(prefix_, loop_);
}

PeriodicSeq PeriodicSeq::constant(Assignment state) {
  return PeriodicSeq({}, {std::move(state)});
}

const Assignment& PeriodicSeq::at(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  return loop_[(i - prefix_.size()) % loop_.size()];
}

PeriodicSeq PeriodicSeq::normalized() const {
  // Minimal loop first: the smallest divisor d of y such that the loop word
  // is d-periodic. Any eventual period of the tail divides y, so checking
  // divisors is exhaustive.
  std::vector<Assignment> loop = loop_;
  std::size_t y = loop.size();
  for (std::size_t d = 1; d < y; ++d) {
    if (y % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < y && periodic; ++i)
      if (loop[i] != loop[i % d]) periodic = false;
    if (periodic) {
      loop.resize(d);
      y = d;
      break;
    }
  }
  // Then absorb the prefix tail: rotating the loop right by one step keeps
  // the sequence identical whenever the last prefix state equals the last
  // loop state. Rotation preserves the minimal loop length.
  std::vector<Assignment> prefix = prefix_;
  while (!prefix.empty() && prefix.back() == loop.back()) {
    prefix.pop_back();
    std::rotate(loop.begin(), loop.end() - 1, loop.end());
  }
  return PeriodicSeq(std::move(prefix), std::move(loop));
}

PeriodicSeq PeriodicSeq::restricted(const std::vector<std::string>& keep) const {
  check_observables(*this, keep);
  auto map = [&](const std::vector<Assignment>& in) {
    std::vector<Assignment> out;
    out.reserve(in.size());
    for (const Assignment& a : in) out.push_back(a.restricted(keep));
    return out;
  };
  return PeriodicSeq(map(prefix_), map(loop_));
}

std::string PeriodicSeq::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (i) s += ", ";
    s += prefix_[i].to_string();
  }
  s += prefix_.empty() ? "| " : " | ";
  for (std::size_t i = 0; i < loop_.size(); ++i) {
    if (i) s += ", ";
    s += loop_[i].to_string();
  }
  return s + ")";
}

FiniteTrace unroll(const PeriodicSeq& s, std::size_t n) {
  FiniteTrace t;
  t.states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.states.push_back(s.at(i));
  return t;
}

PeriodicSeq stepped(const PeriodicSeq& s, std::size_t k) {
  if (k == 0) fail(ErrorKind::Validation, "step factor must be at least 1");
  std::size_t x = s.prefix_len(), y = s.loop_len();
  // i*k clears the prefix once i >= ceil(x/k); the stepped loop closes after
  // y / gcd(k, y) further steps.
  std::size_t new_x = (x + k - 1) / k;
  std::size_t new_y = y / std::gcd(k, y);
  std::vector<Assignment> prefix, loop;
  for (std::size_t i = 0; i < new_x; ++i) prefix.push_back(s.at(i * k));
  for (std::size_t i = new_x; i < new_x + new_y; ++i) loop.push_back(s.at(i * k));
  return PeriodicSeq(std::move(prefix), std::move(loop));
}

std::optional<Divergence> first_divergence(const PeriodicSeq& s1, const PeriodicSeq& s2,
                                           const std::vector<std::string>& observe,
                                           std::size_t start) {
  check_observables(s1, observe);
  check_observables(s2, observe);
  std::size_t horizon = std::max(s1.prefix_len(), s2.prefix_len()) +
                        std::lcm(s1.loop_len(), s2.loop_len());
  for (std::size_t i = start; i <= horizon; ++i) {
    const Assignment& a = s1.at(i);
    const Assignment& b = s2.at(i);
    for (const std::string& name : observe)
      if (a.at(name) != b.at(name)) return Divergence{i, name};
  }
  return std::nullopt;
}

bool seq_equal(const PeriodicSeq& s1, const PeriodicSeq& s2,
               const std::vector<std::string>& observe, bool include_index0) {
  return !first_divergence(s1, s2, observe, include_index0 ? 0 : 1).has_value();
}

bool seq_equal_rescaled(const PeriodicSeq& s1, const PeriodicSeq& s2,
                        const std::vector<std::string>& observe, std::size_t k) {
  return seq_equal(s1, stepped(s2, k), observe);
}

}  // namespace tsem
