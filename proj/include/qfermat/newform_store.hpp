#pragma once

#include "qfermat/ntheory/number_field.hpp"
#include "qfermat/ntheory/polynomial.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qfermat {

enum class DataSource { Bundled, Remote };

std::string to_string(DataSource s);

/// Hecke eigenvalue data of one Galois orbit of weight-2, trivial-character
/// newforms: a_1, a_2, ... as elements of the coefficient field Q[y]/(h).
struct NewformRecord {
    std::int64_t level = 0;
    std::string label;
    int dimension = 0;
    IntPolynomial field_poly;
    FieldPtr field;
    /// an[n - 1] holds a_n.
    std::vector<NumberFieldElement> an;
    std::optional<std::int64_t> cm_discriminant;
    DataSource source = DataSource::Bundled;

    std::size_t num_an() const { return an.size(); }
    /// a_n for n >= 1; throws MissingCoefficient past num_an().
    const NumberFieldElement& coefficient(std::size_t n) const;
};

/// Characteristic polynomial of a_n over Q (see element_char_poly).
IntPolynomial eigenvalue_char_poly(const NewformRecord& form, std::size_t n);

struct ValidationOptions {
    /// Primes at which the Hasse root-location check runs.
    std::vector<std::uint64_t> hasse_primes{2, 3, 5, 7, 11, 13, 17, 19};
};

/// Checks a_1 = 1, dimension = deg(field_poly), coordinate lengths,
/// a_6 = a_2 a_3 and a_10 = a_2 a_5, and the Hasse root location. Throws
/// InvariantViolation naming the form and the failed invariant.
void validate(const NewformRecord& form, const ValidationOptions& opts = {});

/// The set of newforms of one level, in cache-file order.
struct LevelData {
    std::int64_t level = 0;
    std::vector<NewformRecord> forms;

    const NewformRecord& find(const std::string& label) const;
};

/// Cache format: one compact JSON document per level,
/// {"level":N,"weight":2,"forms":[{"label":..,"dimension":..,"field_poly":[..],
///  "an":[[[num,den],...],...],"cm_discriminant":int|null}]}
/// Integers of any size are written as plain JSON numbers.
std::string serialize_level(const LevelData& data);
/// Throws ParseError naming the offending field.
LevelData parse_level(const std::string& text, DataSource source);

struct StoreConfig {
    std::filesystem::path cache_dir = ".qfermat-cache";
    std::filesystem::path bundled_dir = QFERMAT_BUNDLED_DATA_DIR;
    std::string source_url = "https://www.lmfdb.org";
    bool offline = false;
    std::size_t min_an = 600;
    /// Pause between consecutive remote requests.
    std::chrono::milliseconds request_interval{250};
    ValidationOptions validation;
};

class NewformStore {
public:
    explicit NewformStore(StoreConfig config);

    const StoreConfig& config() const { return config_; }

    /// All newforms of level N. Order of preference: the cache, the bundled
    /// snapshot (copied into the cache), the remote API (unless offline).
    /// Throws DataUnavailable when none applies.
    LevelData fetch_level(std::int64_t level) const;

    /// Reads and validates the cache file for N. Throws MissingFile when
    /// absent, InvariantViolation when a record fails validation.
    LevelData load_cached(std::int64_t level) const;

    std::filesystem::path cache_path(std::int64_t level) const;
    std::filesystem::path bundled_path(std::int64_t level) const;
    bool is_bundled(std::int64_t level) const;

private:
    void store(std::int64_t level, const std::string& text) const;
    LevelData fetch_remote(std::int64_t level) const;

    StoreConfig config_;
};

/// Converts one newform given in a Hecke-ring basis into power-basis
/// coordinates. basis_numerators[j] lists the power-basis coefficients of
/// the j-th basis vector times basis_denominators[j]. coords[n-1] are the
/// coordinates of a_n in that basis.
std::vector<NumberFieldElement> from_hecke_ring_basis(const FieldPtr& field,
                                                      const std::vector<std::vector<Integer>>& basis_numerators,
                                                      const std::vector<Integer>& basis_denominators,
                                                      const std::vector<std::vector<Integer>>& coords);

/// Fills a_n for n <= num_an from a_p at the primes p <= num_an using
/// multiplicativity and a_{p^(k+1)} = a_p a_{p^k} - p a_{p^(k-1)} for p not
/// dividing the level (a_{p^k} = a_p^k otherwise). primes[i] pairs with ap[i].
std::vector<NumberFieldElement> an_from_ap(const FieldPtr& field, std::int64_t level,
                                           const std::vector<std::uint64_t>& primes,
                                           const std::vector<NumberFieldElement>& ap, std::size_t num_an);

}  // namespace qfermat
