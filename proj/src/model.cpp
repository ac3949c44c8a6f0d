#include "tsem/model.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "tsem/errors.hpp"

namespace tsem {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!head(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [&](char c) { return head(c) || (c >= '0' && c <= '9'); });
}

bool is_reserved_name(std::string_view s) {
  static constexpr std::array<std::string_view, 14> reserved = {
      "X", "Y", "U", "S", "F", "G", "P", "H", "true", "false", "if", "then", "else", "mod"};
  return std::find(reserved.begin(), reserved.end(), s) != reserved.end();
}

// ---------------------------------------------------------------------------

Signature::Signature(std::vector<Variable> exogenous, std::vector<Variable> endogenous)
    : exo_(std::move(exogenous)), endo_(std::move(endogenous)) {
  if (endo_.empty()) fail(ErrorKind::Validation, "a model needs at least one endogenous variable");
  std::set<std::string, std::less<>> seen;
  auto check = [&](const Variable& v) {
    if (!is_identifier(v.name))
      fail(ErrorKind::Validation, "variable name '" + v.name + "' is not an identifier");
    if (is_reserved_name(v.name))
      fail(ErrorKind::ReservedName, "variable name '" + v.name + "' is reserved");
    if (!seen.insert(v.name).second)
      fail(ErrorKind::DuplicateName, "duplicate variable '" + v.name + "'");
  };
  for (const Variable& v : exo_) check(v);
  for (const Variable& v : endo_) check(v);
}

const Variable* Signature::find(std::string_view name) const {
  for (const Variable& v : endo_)
    if (v.name == name) return &v;
  for (const Variable& v : exo_)
    if (v.name == name) return &v;
  return nullptr;
}

const Variable& Signature::require(std::string_view name) const {
  const Variable* v = find(name);
  if (!v) fail(ErrorKind::UnknownVariable, "unknown variable '" + std::string(name) + "'");
  return *v;
}

bool Signature::is_endogenous(std::string_view name) const {
  const Variable* v = find(name);
  return v && v->kind == VarKind::Endogenous;
}

bool Signature::is_exogenous(std::string_view name) const {
  const Variable* v = find(name);
  return v && v->kind == VarKind::Exogenous;
}

std::vector<std::string> Signature::exogenous_names() const {
  std::vector<std::string> out;
  out.reserve(exo_.size());
  for (const Variable& v : exo_) out.push_back(v.name);
  return out;
}

std::vector<std::string> Signature::endogenous_names() const {
  std::vector<std::string> out;
  out.reserve(endo_.size());
  for (const Variable& v : endo_) out.push_back(v.name);
  return out;
}

// ---------------------------------------------------------------------------

Assignment::Assignment(std::vector<std::pair<std::string, Value>> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i - 1].first == entries_[i].first)
      fail(ErrorKind::DuplicateName, "duplicate assignment entry '" + entries_[i].first + "'");
}

void Assignment::set(const std::string& name, Value v) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                             [](const auto& e, const std::string& n) { return e.first < n; });
  if (it != entries_.end() && it->first == name) {
    it->second = std::move(v);
  } else {
    entries_.insert(it, {name, std::move(v)});
  }
}

bool Assignment::has(std::string_view name) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                             [](const auto& e, std::string_view n) { return e.first < n; });
  return it != entries_.end() && it->first == name;
}

const Value& Assignment::at(std::string_view name) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                             [](const auto& e, std::string_view n) { return e.first < n; });
  if (it == entries_.end() || it->first != name)
    fail(ErrorKind::UnknownVariable, "no value for variable '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> Assignment::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [n, v] : entries_) out.push_back(n);
  return out;
}

Assignment Assignment::restricted(const std::vector<std::string>& keep) const {
  std::vector<std::pair<std::string, Value>> out;
  out.reserve(keep.size());
  for (const std::string& n : keep) out.push_back({n, at(n)});
  return Assignment(std::move(out));
}

std::size_t Assignment::hash() const {
  std::size_t h = entries_.size();
  for (const auto& [n, v] : entries_) {
    h = hash_combine(h, std::hash<std::string>{}(n));
    h = hash_combine(h, v.hash());
  }
  return h;
}

std::string Assignment::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ", ";
    s += entries_[i].first + "=" + entries_[i].second.to_string();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

namespace {

// Step environment: lookups hit the previous step's values. Lag references
// never occur in one-step models (the parser rejects them).
class StepEnv final : public EvalEnv {
 public:
  StepEnv(const Assignment& u_prev, const Assignment& v_prev) : u_(u_prev), v_(v_prev) {}

  Value ref(const std::string& name) const override {
    if (v_.has(name)) return v_.at(name);
    return u_.at(name);
  }
  Value lag(const std::string& name, int) const override {
    fail(ErrorKind::TypeError, "lagged reference to '" + name + "' in a one-step model");
  }

 private:
  const Assignment& u_;
  const Assignment& v_;
};

void check_assignment_covers(const Assignment& a, const std::vector<Variable>& vars,
                             const char* what) {
  for (const Variable& v : vars) {
    if (!a.has(v.name))
      fail(ErrorKind::Validation, std::string(what) + " is missing variable '" + v.name + "'");
    if (!v.range.contains(a.at(v.name)))
      fail(ErrorKind::OutOfRangeValue, std::string(what) + " value " + a.at(v.name).to_string() +
                                           " is outside the range of '" + v.name + "'");
  }
  if (a.size() == vars.size()) return;
  for (const auto& [name, value] : a.entries()) {
    bool declared = false;
    for (const Variable& v : vars) declared = declared || v.name == name;
    if (!declared)
      fail(ErrorKind::Validation,
           std::string(what) + " assigns undeclared variable '" + name + "'");
  }
}

}  // namespace

Model::Model(Signature sig, std::map<std::string, ExprPtr, std::less<>> equations)
    : sig_(std::move(sig)), equations_(std::move(equations)) {
  for (const Variable& v : sig_.endogenous())
    if (equations_.find(v.name) == equations_.end())
      fail(ErrorKind::Validation, "missing equation for '" + v.name + "'");
  if (equations_.size() != sig_.endogenous().size())
    fail(ErrorKind::Validation, "equation present for a variable that is not endogenous");
}

const ExprPtr& Model::equation(std::string_view name) const {
  auto it = equations_.find(name);
  if (it == equations_.end())
    fail(ErrorKind::UnknownVariable, "no equation for variable '" + std::string(name) + "'");
  return it->second;
}

Assignment Model::step(const Assignment& u_prev, const Assignment& v_prev) const {
  StepEnv env(u_prev, v_prev);
  Assignment next;
  for (const Variable& v : sig_.endogenous()) {
    Value val = eval_expr(*equations_.at(v.name), env);
    if (!v.range.contains(val))
      fail(ErrorKind::OutOfRange, "equation for '" + v.name + "' produced " + val.to_string() +
                                      ", outside its range " + v.range.to_string());
    next.set(v.name, std::move(val));
  }
  return next;
}

// ---------------------------------------------------------------------------

Signature validate_signature(const std::vector<VariableDecl>& exogenous,
                             const std::vector<VariableDecl>& endogenous) {
  auto lift = [](const std::vector<VariableDecl>& decls, VarKind kind) {
    std::vector<Variable> out;
    out.reserve(decls.size());
    for (const VariableDecl& d : decls) {
      // Symbols in enumerated ranges follow the same naming rules as
      // variables; anything else would be unlexable in formulas.
      if (!d.range.is_int_interval()) {
        for (const Value& v : d.range.values()) {
          if (!v.is_symbol()) continue;
          if (!is_identifier(v.as_symbol()))
            fail(ErrorKind::Validation,
                 "symbol '" + v.as_symbol() + "' in range of '" + d.name + "' is not an identifier");
          if (is_reserved_name(v.as_symbol()))
            fail(ErrorKind::ReservedName,
                 "symbol '" + v.as_symbol() + "' in range of '" + d.name + "' is reserved");
        }
      }
      out.push_back({d.name, kind, d.range});
    }
    return out;
  };
  return Signature(lift(exogenous, VarKind::Exogenous), lift(endogenous, VarKind::Endogenous));
}

Model validate_model(const ModelDescription& d) {
  if (d.delayed) fail(ErrorKind::Validation, "delayed description passed to the one-step validator");
  if (d.xi.has_value()) fail(ErrorKind::Validation, "xi only applies to delayed models");
  Signature sig = validate_signature(d.exogenous, d.endogenous);

  std::map<std::string, ExprPtr, std::less<>> eqs;
  for (const auto& [name, text] : d.equations) {
    const Variable* v = sig.find(name);
    if (!v) fail(ErrorKind::UnknownVariable, "equation for unknown variable '" + name + "'");
    if (v->kind != VarKind::Endogenous)
      fail(ErrorKind::Validation, "equation for exogenous variable '" + name + "'");
    if (eqs.count(name)) fail(ErrorKind::DuplicateName, "two equations for variable '" + name + "'");
    ExprPtr e;
    try {
      e = parse_equation(text, sig, EquationMode::OneStep);
      typecheck_equation(*e, sig, *v);
    } catch (const Error& err) {
      throw Error(err.kind(), "in equation for '" + name + "': " + err.what());
    }
    eqs.emplace(name, std::move(e));
  }
  return Model(std::move(sig), std::move(eqs));
}

void validate_covers_exogenous(const Assignment& a, const Signature& sig) {
  check_assignment_covers(a, sig.exogenous(), "context entry");
}

void validate_covers_endogenous(const Assignment& a, const Signature& sig) {
  check_assignment_covers(a, sig.endogenous(), "initial assignment");
}

}  // namespace tsem
