#pragma once

// JSON helpers that keep integers exact at any size. Integers beyond 64 bits
// live in tagged strings (see big_integer); parse_exact produces them and
// dump_exact writes them back as bare numeric literals, so parse/dump round
// trips are byte-exact.

#include "qfermat/ntheory/integer.hpp"

#include "json.hpp"

#include <string>

namespace qfermat::json {

using Json = nlohmann::ordered_json;

/// Parses text; integer literals beyond 64 bits become big_integer() values.
/// Throws ParseError.
Json parse_exact(const std::string& text);

/// Integer from a number, a big_integer() value or a digit string. Throws ParseError naming `what`.
Integer to_integer(const Json& v, const std::string& what);

/// JSON value for n: a number when it fits 64 bits, otherwise a tagged
/// string that dump_exact() writes as a bare literal.
Json big_integer(const Integer& n);

/// Compact (indent < 0) or pretty dump with tagged big integers expanded.
std::string dump_exact(const Json& v, int indent = -1);

}  // namespace qfermat::json
