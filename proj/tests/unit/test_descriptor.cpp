#include <doctest.h>

#include "streamlens/descriptor.hpp"

using namespace streamlens;

TEST_CASE("value_as_number parses every value shape") {
    CHECK(*value_as_number(DescriptorValue{std::int64_t{42}}) == 42.0);
    CHECK(*value_as_number(DescriptorValue{2.5}) == 2.5);
    CHECK(*value_as_number(DescriptorValue{Rational{30000, 1001}}) ==
          doctest::Approx(29.97).epsilon(1e-3));
    CHECK(*value_as_number(DescriptorValue{std::string("44100")}) == 44100.0);
    CHECK(*value_as_number(DescriptorValue{std::string("30/1")}) == 30.0);
    CHECK(*value_as_number(DescriptorValue{std::string("10.000000")}) == 10.0);
}

TEST_CASE("value_as_number rejects non-numeric shapes") {
    CHECK_FALSE(value_as_number(DescriptorValue{std::string("N/A")}).has_value());
    CHECK_FALSE(value_as_number(DescriptorValue{std::string("h264")}).has_value());
    CHECK_FALSE(value_as_number(DescriptorValue{std::string("0/0")}).has_value());
    CHECK_FALSE(value_as_number(DescriptorValue{std::string("")}).has_value());
    CHECK_FALSE(value_as_number(DescriptorValue{std::string("12abc")}).has_value());
}

TEST_CASE("value_to_string is canonical per type") {
    CHECK(value_to_string(DescriptorValue{std::string("High")}) == "High");
    CHECK(value_to_string(DescriptorValue{std::int64_t{640}}) == "640");
    CHECK(value_to_string(DescriptorValue{Rational{30, 1}}) == "30/1");
    CHECK(value_to_string(DescriptorValue{2.5}) == "2.5");
}

TEST_CASE("sanitize_utf8 replaces invalid bytes and keeps valid sequences") {
    CHECK(sanitize_utf8("plain ascii") == "plain ascii");
    CHECK(sanitize_utf8("caf\xC3\xA9") == "caf\xC3\xA9");
    CHECK(sanitize_utf8("bad\xFFtail") == "bad\xEF\xBF\xBDtail");
    // truncated two-byte sequence at end of string
    CHECK(sanitize_utf8("x\xC3") == "x\xEF\xBF\xBD");
    // overlong encoding of '/' is rejected
    CHECK(sanitize_utf8("\xC0\xAF") == "\xEF\xBF\xBD\xEF\xBF\xBD");
    // CESU-8 style surrogate half
    CHECK(sanitize_utf8("\xED\xA0\x80") == "\xEF\xBF\xBD\xEF\xBF\xBD\xEF\xBF\xBD");
}

TEST_CASE("FieldMap keeps insertion order and overwrites in place") {
    FieldMap fields;
    fields.set("b", std::int64_t{1});
    fields.set("a", std::int64_t{2});
    fields.set("b", std::int64_t{3});
    REQUIRE(fields.size() == 2);
    CHECK(fields.begin()->first == "b");
    CHECK(std::get<std::int64_t>(*fields.find("b")) == 3);
}
