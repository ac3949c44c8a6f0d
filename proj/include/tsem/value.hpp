#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace tsem {

// A model value: a bounded integer, an opaque symbol, or the distinguished
// undefined marker `#` used by compiled delay chains before they fill up.
// Values of different tags are never equal but are always comparable for
// equality; ordering is only defined between ints.
class Value {
 public:
  Value() : v_(std::int64_t{0}) {}

  static Value integer(std::int64_t n) { return Value(n); }
  static Value symbol(std::string name) { return Value(std::move(name)); }
  static Value undef() { return Value(UndefTag{}); }

  bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_symbol() const { return std::holds_alternative<std::string>(v_); }
  bool is_undef() const { return std::holds_alternative<UndefTag>(v_); }

  std::int64_t as_int() const;           // TypeError unless is_int()
  const std::string& as_symbol() const;  // TypeError unless is_symbol()

  bool operator==(const Value& o) const { return v_ == o.v_; }
  bool operator!=(const Value& o) const { return !(*this == o); }
  bool operator<(const Value& o) const { return v_ < o.v_; }  // container order only

  std::size_t hash() const;
  std::string to_string() const;  // "3", "half", "#"

 private:
  struct UndefTag {
    bool operator==(const UndefTag&) const { return true; }
    bool operator<(const UndefTag&) const { return false; }
  };

  explicit Value(std::int64_t n) : v_(n) {}
  explicit Value(std::string s) : v_(std::move(s)) {}
  explicit Value(UndefTag t) : v_(t) {}

  std::variant<std::int64_t, std::string, UndefTag> v_;
};

// A variable's range: either a bounded integer interval or an explicit
// enumeration of values (which may mix ints, symbols and `#`).
class Range {
 public:
  static Range int_interval(std::int64_t lo, std::int64_t hi);  // EmptyRange if lo > hi
  static Range enumerated(std::vector<Value> values);           // non-empty, distinct

  bool is_int_interval() const { return interval_; }
  std::int64_t lo() const;
  std::int64_t hi() const;

  bool contains(const Value& v) const;
  std::size_t size() const;
  std::vector<Value> values() const;  // enumeration in canonical order

  bool operator==(const Range& o) const;
  bool operator!=(const Range& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Range() = default;

  bool interval_ = false;
  std::int64_t lo_ = 0, hi_ = 0;
  std::vector<Value> values_;
};

inline std::size_t hash_combine(std::size_t seed, std::size_t h) {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace tsem
