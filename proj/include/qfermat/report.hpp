#pragma once

#include "qfermat/endgame.hpp"
#include "qfermat/json_util.hpp"
#include "qfermat/sieve.hpp"

#include <filesystem>
#include <string>

namespace qfermat {

/// Finite sets as an array, "ALL", or {"primes": [...], "above": B} for a
/// finite part plus every prime above B.
json::Json prime_set_json(const PrimeSet& s);

/// Keys in contract order: q, tset, p_min, forms, global_survivors, proved,
/// assumptions.
json::Json sieve_report_json(const SieveOutcome& outcome);

/// Keys: congruence, zero_pattern, valuation_argument, cited_theorems.
json::Json endgame_json(const EndgameCertificate& cert);

/// Human-readable rendering of a sieve report (with its "endgame" entry if
/// present).
std::string render_markdown(const json::Json& report);

/// Pretty JSON plus a trailing newline.
std::string report_text(const json::Json& report);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace qfermat
