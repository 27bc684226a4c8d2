#include "qfermat/newform_store.hpp"

#include "qfermat/error.hpp"
#include "qfermat/json_util.hpp"
#include "qfermat/ntheory/factor.hpp"
#include "qfermat/ntheory/sturm.hpp"

#include "httplib.h"

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace qfermat {

namespace fs = std::filesystem;
using json::Json;

std::string to_string(DataSource s) { return s == DataSource::Bundled ? "bundled" : "remote"; }

const NumberFieldElement& NewformRecord::coefficient(std::size_t n) const {
    if (n == 0 || n > an.size())
        throw MissingCoefficient(label + ": a_" + std::to_string(n) + " requested but only " +
                                 std::to_string(an.size()) + " coefficients are stored");
    return an[n - 1];
}

IntPolynomial eigenvalue_char_poly(const NewformRecord& form, std::size_t n) {
    return element_char_poly(form.coefficient(n));
}

void validate(const NewformRecord& form, const ValidationOptions& opts) {
    auto fail = [&](const std::string& what) {
        throw InvariantViolation("newform " + form.label + " violates invariant: " + what);
    };
    if (form.field_poly.degree() != form.dimension) fail("dimension = deg(field_poly)");
    if (!form.field || !(form.field->defining_polynomial() == form.field_poly)) fail("field matches field_poly");
    for (const auto& a : form.an)
        if (a.coords().size() != static_cast<std::size_t>(form.dimension)) fail("coordinate length = dimension");
    if (form.an.empty() || !(form.an[0] == NumberFieldElement::from_rational(form.field, 1))) fail("a_1 = 1");
    auto product_check = [&](std::size_t n, std::size_t a, std::size_t b) {
        if (n <= form.num_an() && !(form.an[n - 1] == form.an[a - 1] * form.an[b - 1]))
            fail("a_" + std::to_string(n) + " = a_" + std::to_string(a) + " * a_" + std::to_string(b));
    };
    product_check(6, 2, 3);
    product_check(10, 2, 5);
    for (std::uint64_t t : opts.hasse_primes) {
        if (t > form.num_an()) continue;
        const IntPolynomial cp = element_char_poly(form.an[t - 1]);
        if (!real_roots_within_hasse_bound(cp, Integer(static_cast<unsigned long>(t))))
            fail("Hasse bound at t = " + std::to_string(t));
    }
}

const NewformRecord& LevelData::find(const std::string& label) const {
    for (const auto& f : forms)
        if (f.label == label) return f;
    throw InvalidInput("no newform labelled '" + label + "' at level " + std::to_string(level));
}

std::string serialize_level(const LevelData& data) {
    Json doc;
    doc["level"] = data.level;
    doc["weight"] = 2;
    Json forms = Json::array();
    for (const auto& f : data.forms) {
        Json jf;
        jf["label"] = f.label;
        jf["dimension"] = f.dimension;
        Json poly = Json::array();
        for (const auto& c : f.field_poly.coefficients()) poly.push_back(json::big_integer(c));
        jf["field_poly"] = std::move(poly);
        Json an = Json::array();
        for (const auto& a : f.an) {
            Json coords = Json::array();
            for (const auto& c : a.coords())
                coords.push_back(Json::array({json::big_integer(c.get_num()), json::big_integer(c.get_den())}));
            an.push_back(std::move(coords));
        }
        jf["an"] = std::move(an);
        jf["cm_discriminant"] = f.cm_discriminant ? Json(*f.cm_discriminant) : Json(nullptr);
        forms.push_back(std::move(jf));
    }
    doc["forms"] = std::move(forms);
    return json::dump_exact(doc) + "\n";
}

namespace {

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    return obj[key];
}

std::int64_t to_int64(const Json& v, const std::string& what) {
    Integer n = json::to_integer(v, what);
    if (!mpz_fits_slong_p(n.get_mpz_t())) throw ParseError(what + ": value out of range");
    return n.get_si();
}

NewformRecord parse_form(const Json& jf, std::int64_t level, DataSource source, std::size_t index) {
    const std::string where = "forms[" + std::to_string(index) + "]";
    NewformRecord rec;
    rec.level = level;
    rec.source = source;
    const Json& label = require(jf, "label", where);
    if (!label.is_string()) throw ParseError(where + ".label: expected a string");
    rec.label = label.get<std::string>();
    const std::string here = where + " (" + rec.label + ")";
    rec.dimension = static_cast<int>(to_int64(require(jf, "dimension", here), here + ".dimension"));

    const Json& poly = require(jf, "field_poly", here);
    if (!poly.is_array()) throw ParseError(here + ".field_poly: expected an array");
    std::vector<Integer> pc;
    for (std::size_t k = 0; k < poly.size(); ++k)
        pc.push_back(json::to_integer(poly[k], here + ".field_poly[" + std::to_string(k) + "]"));
    rec.field_poly = IntPolynomial(std::move(pc));
    try {
        rec.field = make_field(rec.field_poly);
    } catch (const InvalidInput& e) {
        throw ParseError(here + ".field_poly: " + e.what());
    }

    const Json& an = require(jf, "an", here);
    if (!an.is_array()) throw ParseError(here + ".an: expected an array");
    rec.an.reserve(an.size());
    for (std::size_t n = 0; n < an.size(); ++n) {
        const std::string at = here + ".an[" + std::to_string(n) + "]";
        if (!an[n].is_array()) throw ParseError(at + ": expected an array of [num, den] pairs");
        std::vector<Rational> coords;
        for (std::size_t k = 0; k < an[n].size(); ++k) {
            const Json& pair = an[n][k];
            if (!pair.is_array() || pair.size() != 2) throw ParseError(at + "[" + std::to_string(k) + "]: expected [num, den]");
            Integer num = json::to_integer(pair[0], at);
            Integer den = json::to_integer(pair[1], at);
            if (den == 0) throw ParseError(at + "[" + std::to_string(k) + "]: zero denominator");
            Rational q(num, den);
            q.canonicalize();
            coords.push_back(q);
        }
        try {
            rec.an.emplace_back(rec.field, std::move(coords));
        } catch (const InvalidInput& e) {
            throw ParseError(at + ": " + e.what());
        }
    }
    const Json& cm = require(jf, "cm_discriminant", here);
    if (!cm.is_null()) rec.cm_discriminant = to_int64(cm, here + ".cm_discriminant");
    return rec;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFile("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Exclusive lock file held for the lifetime of the object.
class LockFile {
public:
    explicit LockFile(fs::path path) : path_(std::move(path)) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
            if (fd_ >= 0) return;
            std::this_thread::sleep_for(std::chrono::milliseconds(50));
        }
        throw Error("cache is locked by another writer: " + path_.string());
    }
    ~LockFile() {
        ::close(fd_);
        std::error_code ec;
        fs::remove(path_, ec);
    }
    LockFile(const LockFile&) = delete;
    LockFile& operator=(const LockFile&) = delete;

private:
    fs::path path_;
    int fd_ = -1;
};

void write_atomic(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace

LevelData parse_level(const std::string& text, DataSource source) {
    Json doc = json::parse_exact(text);
    LevelData out;
    out.level = to_int64(require(doc, "level", "document"), "level");
    if (to_int64(require(doc, "weight", "document"), "weight") != 2) throw ParseError("weight: only weight 2 is supported");
    const Json& forms = require(doc, "forms", "document");
    if (!forms.is_array()) throw ParseError("forms: expected an array");
    for (std::size_t k = 0; k < forms.size(); ++k) out.forms.push_back(parse_form(forms[k], out.level, source, k));
    return out;
}

NewformStore::NewformStore(StoreConfig config) : config_(std::move(config)) {}

fs::path NewformStore::cache_path(std::int64_t level) const {
    return config_.cache_dir / ("level_" + std::to_string(level) + ".json");
}

fs::path NewformStore::bundled_path(std::int64_t level) const {
    return config_.bundled_dir / ("level_" + std::to_string(level) + ".json");
}

bool NewformStore::is_bundled(std::int64_t level) const { return fs::exists(bundled_path(level)); }

void NewformStore::store(std::int64_t level, const std::string& text) const {
    fs::create_directories(config_.cache_dir);
    fs::path lock = cache_path(level);
    lock += ".lock";
    LockFile guard(lock);
    write_atomic(cache_path(level), text);
}

LevelData NewformStore::load_cached(std::int64_t level) const {
    const fs::path path = cache_path(level);
    if (!fs::exists(path)) throw MissingFile("no cached newform data for level " + std::to_string(level) + " at " + path.string());
    const std::string text = read_file(path);
    DataSource source = DataSource::Remote;
    if (is_bundled(level) && read_file(bundled_path(level)) == text) source = DataSource::Bundled;
    LevelData data = parse_level(text, source);
    if (data.level != level)
        throw InvariantViolation(path.string() + " holds level " + std::to_string(data.level) + ", expected " +
                                 std::to_string(level));
    for (const auto& f : data.forms) validate(f, config_.validation);
    return data;
}

LevelData NewformStore::fetch_level(std::int64_t level) const {
    if (level < 1) throw InvalidInput("level must be positive");
    LevelData data;
    if (fs::exists(cache_path(level))) {
        data = load_cached(level);
    } else if (is_bundled(level)) {
        store(level, read_file(bundled_path(level)));
        data = load_cached(level);
    } else if (config_.offline) {
        throw DataUnavailable("level " + std::to_string(level) + " is neither cached nor bundled and --offline is set");
    } else {
        data = fetch_remote(level);
        store(level, serialize_level(data));
        data = load_cached(level);
    }
    for (const auto& f : data.forms)
        if (f.num_an() < config_.min_an)
            throw DataUnavailable(f.label + " has " + std::to_string(f.num_an()) + " coefficients, " +
                                  std::to_string(config_.min_an) + " required");
    return data;
}

std::vector<NumberFieldElement> from_hecke_ring_basis(const FieldPtr& field,
                                                      const std::vector<std::vector<Integer>>& basis_numerators,
                                                      const std::vector<Integer>& basis_denominators,
                                                      const std::vector<std::vector<Integer>>& coords) {
    const std::size_t n = field->degree();
    if (basis_numerators.size() != n || basis_denominators.size() != n)
        throw ParseError("Hecke ring basis has " + std::to_string(basis_numerators.size()) + " vectors, field degree is " +
                         std::to_string(n));
    std::vector<std::vector<Rational>> basis(n, std::vector<Rational>(n));
    for (std::size_t j = 0; j < n; ++j) {
        if (basis_denominators[j] == 0) throw ParseError("Hecke ring basis denominator is zero");
        if (basis_numerators[j].size() > n) throw ParseError("Hecke ring basis vector too long");
        for (std::size_t k = 0; k < basis_numerators[j].size(); ++k) {
            basis[j][k] = Rational(basis_numerators[j][k], basis_denominators[j]);
            basis[j][k].canonicalize();
        }
    }
    std::vector<NumberFieldElement> out;
    out.reserve(coords.size());
    for (std::size_t m = 0; m < coords.size(); ++m) {
        if (coords[m].size() != n)
            throw ParseError("coefficient " + std::to_string(m + 1) + " has " + std::to_string(coords[m].size()) +
                             " Hecke ring coordinates, expected " + std::to_string(n));
        std::vector<Rational> v(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (coords[m][j] == 0) continue;
            for (std::size_t k = 0; k < n; ++k) v[k] += Rational(coords[m][j]) * basis[j][k];
        }
        out.emplace_back(field, std::move(v));
    }
    return out;
}

std::vector<NumberFieldElement> an_from_ap(const FieldPtr& field, std::int64_t level,
                                           const std::vector<std::uint64_t>& primes,
                                           const std::vector<NumberFieldElement>& ap, std::size_t num_an) {
    if (primes.size() != ap.size()) throw InvalidInput("an_from_ap: primes and a_p differ in length");
    std::map<std::uint64_t, const NumberFieldElement*> by_prime;
    for (std::size_t i = 0; i < primes.size(); ++i) by_prime[primes[i]] = &ap[i];
    const auto zero = NumberFieldElement::from_rational(field, 0);
    std::vector<std::optional<NumberFieldElement>> an(num_an + 1);
    if (num_an >= 1) an[1] = NumberFieldElement::from_rational(field, 1);
    for (std::uint64_t p : primes_up_to(static_cast<std::uint32_t>(num_an))) {
        auto it = by_prime.find(p);
        if (it == by_prime.end()) throw MissingCoefficient("a_" + std::to_string(p) + " missing from the source data");
        const bool bad = level % static_cast<std::int64_t>(p) == 0;
        const auto pp = NumberFieldElement::from_rational(field, Rational(static_cast<long>(p)));
        NumberFieldElement prev = NumberFieldElement::from_rational(field, 1);
        NumberFieldElement cur = *it->second;
        for (std::uint64_t q = p; q <= num_an; q *= p) {
            an[q] = cur;
            NumberFieldElement next = bad ? cur * *it->second : cur * *it->second - pp * prev;
            prev = cur;
            cur = next;
            if (q > num_an / p) break;
        }
    }
    // Multiplicativity over coprime prime-power factors.
    for (std::size_t n = 2; n <= num_an; ++n) {
        if (an[n]) continue;
        std::size_t m = n, p = 2;
        while (m % p != 0) ++p;
        std::size_t pk = 1;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        an[n] = *an[pk] * *an[m];
    }
    std::vector<NumberFieldElement> out;
    out.reserve(num_an);
    for (std::size_t n = 1; n <= num_an; ++n) out.push_back(an[n] ? *an[n] : zero);
    return out;
}

namespace {

struct Url {
    std::string origin;  // scheme://host[:port]
    std::string prefix;  // path prefix without trailing slash
};

Url split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw InvalidInput("source URL needs a scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    Url u;
    u.origin = url.substr(0, path_start);
    u.prefix = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!u.prefix.empty() && u.prefix.back() == '/') u.prefix.pop_back();
    return u;
}

class ApiClient {
public:
    ApiClient(const std::string& base, fs::path archive, std::chrono::milliseconds interval)
        : url_(split_url(base)), client_(url_.origin), archive_(std::move(archive)), interval_(interval) {
        client_.set_connection_timeout(10);
        client_.set_read_timeout(60);
        client_.set_follow_location(true);
    }

    Json get(const std::string& path_and_query) {
        if (requests_++ > 0) std::this_thread::sleep_for(interval_);
        const std::string target = url_.prefix + path_and_query;
        auto res = client_.Get(target);
        if (!res) throw DataUnavailable("request to " + url_.origin + target + " failed: " + httplib::to_string(res.error()));
        if (res->status != 200)
            throw DataUnavailable("request to " + url_.origin + target + " returned HTTP " + std::to_string(res->status));
        fs::create_directories(archive_);
        write_atomic(archive_ / ("response_" + std::to_string(requests_) + ".json"), res->body);
        return json::parse_exact(res->body);
    }

    /// Follows LMFDB-style paging ("data" plus optional "next").
    std::vector<Json> get_all(std::string path_and_query) {
        std::vector<Json> rows;
        for (int page = 0; page < 100; ++page) {
            Json doc = get(path_and_query);
            const Json& data = require(doc, "data", "API response");
            if (!data.is_array()) throw ParseError("API response: 'data' is not an array");
            for (const auto& row : data) rows.push_back(row);
            if (!doc.contains("next") || doc["next"].is_null()) break;
            std::string next = doc["next"].get<std::string>();
            if (next.rfind("http", 0) == 0) next = next.substr(split_url(next).origin.size());
            if (!url_.prefix.empty() && next.rfind(url_.prefix, 0) == 0) next = next.substr(url_.prefix.size());
            path_and_query = next;
        }
        return rows;
    }

private:
    Url url_;
    httplib::Client client_;
    fs::path archive_;
    std::chrono::milliseconds interval_;
    int requests_ = 0;
};

std::vector<std::vector<Integer>> integer_matrix(const Json& v, const std::string& what) {
    if (!v.is_array()) throw ParseError(what + ": expected an array of arrays");
    std::vector<std::vector<Integer>> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_array()) throw ParseError(what + "[" + std::to_string(i) + "]: expected an array");
        std::vector<Integer> row;
        for (const auto& x : v[i]) row.push_back(json::to_integer(x, what));
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

LevelData NewformStore::fetch_remote(std::int64_t level) const {
    const fs::path archive = config_.cache_dir / "raw" / ("level_" + std::to_string(level));
    ApiClient api(config_.source_url, archive, config_.request_interval);
    const std::string lvl = std::to_string(level);
    auto forms = api.get_all("/api/mf_newforms/?level=" + lvl +
                             "&weight=2&char_order=1&_format=json&_fields=label,dim,field_poly,cm_discs,traces");
    LevelData out;
    out.level = level;
    for (std::size_t idx = 0; idx < forms.size(); ++idx) {
        const Json& row = forms[idx];
        const std::string where = "mf_newforms[" + std::to_string(idx) + "]";
        NewformRecord rec;
        rec.level = level;
        rec.source = DataSource::Remote;
        rec.label = require(row, "label", where).get<std::string>();
        rec.dimension = static_cast<int>(to_int64(require(row, "dim", where), where + ".dim"));
        if (row.contains("cm_discs") && row["cm_discs"].is_array() && !row["cm_discs"].empty())
            rec.cm_discriminant = to_int64(row["cm_discs"][0], where + ".cm_discs");
        if (rec.dimension == 1) {
            rec.field_poly = IntPolynomial{0, 1};
            rec.field = make_field(rec.field_poly);
            const Json& traces = require(row, "traces", where);
            if (!traces.is_array()) throw ParseError(where + ".traces: expected an array");
            for (std::size_t n = 0; n < traces.size() && n < config_.min_an; ++n)
                rec.an.push_back(NumberFieldElement::from_rational(
                    rec.field, Rational(json::to_integer(traces[n], where + ".traces"))));
        } else {
            auto nf = api.get_all("/api/mf_hecke_nf/?label=" + rec.label +
                                  "&_format=json&_fields=label,field_poly,hecke_ring_numerators,"
                                  "hecke_ring_denominators,ap,maxp");
            if (nf.empty()) throw DataUnavailable("no Hecke field data for " + rec.label);
            const Json& e = nf.front();
            const std::string ew = "mf_hecke_nf(" + rec.label + ")";
            std::vector<Integer> pc;
            for (const auto& c : require(e, "field_poly", ew)) pc.push_back(json::to_integer(c, ew + ".field_poly"));
            rec.field_poly = IntPolynomial(std::move(pc));
            rec.field = make_field(rec.field_poly);
            auto nums = integer_matrix(require(e, "hecke_ring_numerators", ew), ew + ".hecke_ring_numerators");
            std::vector<Integer> dens;
            for (const auto& d : require(e, "hecke_ring_denominators", ew))
                dens.push_back(json::to_integer(d, ew + ".hecke_ring_denominators"));
            auto ap_coords = integer_matrix(require(e, "ap", ew), ew + ".ap");
            auto ap = from_hecke_ring_basis(rec.field, nums, dens, ap_coords);
            std::vector<std::uint64_t> primes;
            auto all_primes = primes_up_to(1u << 20);
            for (std::size_t i = 0; i < ap.size(); ++i) primes.push_back(all_primes.at(i));
            std::size_t usable = config_.min_an;
            if (!primes.empty() && primes.back() < usable) usable = primes.back();
            rec.an = an_from_ap(rec.field, level, primes, ap, usable);
        }
        out.forms.push_back(std::move(rec));
    }
    if (out.forms.empty()) throw DataUnavailable("remote source returned no newforms for level " + lvl);
    return out;
}

}  // namespace qfermat
