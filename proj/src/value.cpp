#include "tsem/value.hpp"

#include <algorithm>
#include <functional>

#include "tsem/errors.hpp"

namespace tsem {

std::int64_t Value::as_int() const {
  if (!is_int()) fail(ErrorKind::TypeError, "value " + to_string() + " is not an int");
  return std::get<std::int64_t>(v_);
}

const std::string& Value::as_symbol() const {
  if (!is_symbol()) fail(ErrorKind::TypeError, "value " + to_string() + " is not a symbol");
  return std::get<std::string>(v_);
}

std::size_t Value::hash() const {
  if (is_int()) return hash_combine(1, std::hash<std::int64_t>{}(std::get<std::int64_t>(v_)));
  if (is_symbol()) return hash_combine(2, std::hash<std::string>{}(std::get<std::string>(v_)));
  return hash_combine(3, 0);
}

std::string Value::to_string() const {
  if (is_int()) return std::to_string(std::get<std::int64_t>(v_));
  if (is_symbol()) return std::get<std::string>(v_);
  return "#";
}

Range Range::int_interval(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) fail(ErrorKind::EmptyRange, "empty int range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  Range r;
  r.interval_ = true;
  r.lo_ = lo;
  r.hi_ = hi;
  return r;
}

Range Range::enumerated(std::vector<Value> values) {
  if (values.empty()) fail(ErrorKind::EmptyRange, "empty enumerated range");
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j])
        fail(ErrorKind::DuplicateName, "duplicate value " + values[i].to_string() + " in range");
  Range r;
  r.values_ = std::move(values);
  return r;
}

std::int64_t Range::lo() const {
  if (!interval_) fail(ErrorKind::TypeError, "range " + to_string() + " is not an int interval");
  return lo_;
}

std::int64_t Range::hi() const {
  if (!interval_) fail(ErrorKind::TypeError, "range " + to_string() + " is not an int interval");
  return hi_;
}

bool Range::contains(const Value& v) const {
  if (interval_) return v.is_int() && v.as_int() >= lo_ && v.as_int() <= hi_;
  return std::find(values_.begin(), values_.end(), v) != values_.end();
}

std::size_t Range::size() const {
  if (interval_) return static_cast<std::size_t>(hi_ - lo_ + 1);
  return values_.size();
}

std::vector<Value> Range::values() const {
  if (!interval_) return values_;
  std::vector<Value> out;
  out.reserve(size());
  for (std::int64_t v = lo_; v <= hi_; ++v) out.push_back(Value::integer(v));
  return out;
}

bool Range::operator==(const Range& o) const {
  if (interval_ != o.interval_) return false;
  if (interval_) return lo_ == o.lo_ && hi_ == o.hi_;
  return values_ == o.values_;
}

std::string Range::to_string() const {
  if (interval_) return "int[" + std::to_string(lo_) + ", " + std::to_string(hi_) + "]";
  std::string s = "{";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) s += ", ";
    s += values_[i].to_string();
  }
  return s + "}";
}

}  // namespace tsem
