#include "doctest.h"

#include "tsem/errors.hpp"
#include "tsem/value.hpp"

using namespace tsem;

TEST_CASE("value tags and accessors") {
  Value i = Value::integer(3);
  Value s = Value::symbol("half");
  Value u = Value::undef();

  CHECK(i.is_int());
  CHECK(i.as_int() == 3);
  CHECK(s.is_symbol());
  CHECK(s.as_symbol() == "half");
  CHECK(u.is_undef());

  CHECK_THROWS_AS(s.as_int(), Error);
  CHECK_THROWS_AS(i.as_symbol(), Error);

  CHECK(i.to_string() == "3");
  CHECK(s.to_string() == "half");
  CHECK(u.to_string() == "#");
}

TEST_CASE("value equality and hashing") {
  CHECK(Value::integer(2) == Value::integer(2));
  CHECK(Value::integer(2) != Value::integer(3));
  CHECK(Value::symbol("a") == Value::symbol("a"));
  CHECK(Value::symbol("a") != Value::symbol("b"));
  CHECK(Value::integer(0) != Value::symbol("0"));
  CHECK(Value::undef() == Value::undef());
  CHECK(Value::undef() != Value::integer(0));

  CHECK(Value::integer(7).hash() == Value::integer(7).hash());
  CHECK(Value::symbol("x").hash() == Value::symbol("x").hash());
}

TEST_CASE("int interval ranges") {
  Range r = Range::int_interval(0, 3);
  CHECK(r.is_int_interval());
  CHECK(r.lo() == 0);
  CHECK(r.hi() == 3);
  CHECK(r.size() == 4);
  CHECK(r.contains(Value::integer(0)));
  CHECK(r.contains(Value::integer(3)));
  CHECK_FALSE(r.contains(Value::integer(4)));
  CHECK_FALSE(r.contains(Value::symbol("half")));
  CHECK_FALSE(r.contains(Value::undef()));

  auto vals = r.values();
  REQUIRE(vals.size() == 4);
  CHECK(vals.front() == Value::integer(0));
  CHECK(vals.back() == Value::integer(3));

  CHECK_THROWS_AS(Range::int_interval(2, 1), Error);
  try {
    Range::int_interval(2, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyRange);
  }
}

TEST_CASE("enumerated ranges mix ints and symbols") {
  Range r = Range::enumerated({Value::integer(0), Value::symbol("half"), Value::integer(1)});
  CHECK_FALSE(r.is_int_interval());
  CHECK(r.size() == 3);
  CHECK(r.contains(Value::symbol("half")));
  CHECK(r.contains(Value::integer(1)));
  CHECK_FALSE(r.contains(Value::integer(2)));

  CHECK_THROWS_AS(Range::enumerated({}), Error);
  CHECK_THROWS_AS(Range::enumerated({Value::integer(1), Value::integer(1)}), Error);
}

TEST_CASE("range equality") {
  CHECK(Range::int_interval(0, 1) == Range::int_interval(0, 1));
  CHECK(Range::int_interval(0, 1) != Range::int_interval(0, 2));
  CHECK(Range::enumerated({Value::integer(0), Value::integer(1)}) !=
        Range::int_interval(0, 1));
  CHECK(Range::enumerated({Value::symbol("a")}) == Range::enumerated({Value::symbol("a")}));
}
