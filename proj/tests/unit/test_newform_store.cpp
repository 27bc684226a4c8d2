#include "qfermat/error.hpp"
#include "qfermat/json_util.hpp"
#include "qfermat/newform_store.hpp"
#include "qfermat/ntheory/sturm.hpp"

#include "httplib.h"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

using namespace qfermat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("qfermat-store-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

StoreConfig offline_config(const fs::path& cache) {
    StoreConfig cfg;
    cfg.cache_dir = cache;
    cfg.offline = true;
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("level 32 is the CM form y^2 = x^3 - x") {
    TempDir dir;
    NewformStore store(offline_config(dir.path));
    auto data = store.fetch_level(32);
    REQUIRE(data.forms.size() == 1);
    const auto& f = data.forms[0];
    CHECK(f.dimension == 1);
    CHECK(f.cm_discriminant == -4);
    CHECK(f.source == DataSource::Bundled);
    CHECK(f.num_an() >= 600);
    CHECK(eigenvalue_char_poly(f, 3) == IntPolynomial{0, 1});
    CHECK(eigenvalue_char_poly(f, 5) == IntPolynomial{2, 1});
    CHECK(eigenvalue_char_poly(f, 1) == IntPolynomial{-1, 1});
    CHECK_THROWS_AS(eigenvalue_char_poly(f, f.num_an() + 1), MissingCoefficient);
    CHECK_THROWS_AS(f.coefficient(0), MissingCoefficient);
}

TEST_CASE("bundled levels") {
    TempDir dir;
    NewformStore store(offline_config(dir.path));
    auto d2336 = store.fetch_level(2336);
    CHECK(d2336.forms.size() == 12);
    // The form the sieve cannot eliminate at p = 17 has a degree-14 Hecke field.
    CHECK(d2336.find("2336.2.a.l").dimension == 14);
    int total_dim = 0;
    for (const auto& f : d2336.forms) total_dim += f.dimension;
    CHECK(total_dim == 72);  // dim S_2(Gamma_0(2336))^new
    CHECK(store.fetch_level(2848).level == 2848);
    CHECK(store.fetch_level(3616).level == 3616);
    CHECK(store.fetch_level(544).forms.size() == 10);
    CHECK_THROWS_AS(d2336.find("2336.2.a.zz"), InvalidInput);
}

TEST_CASE("charpoly of a_1 is (x - 1)^dimension") {
    TempDir dir;
    NewformStore store(offline_config(dir.path));
    for (const auto& f : store.fetch_level(2336).forms)
        CHECK(eigenvalue_char_poly(f, 1) == IntPolynomial{-1, 1}.pow(static_cast<unsigned>(f.dimension)));
}

TEST_CASE("every bundled eigenvalue a_t lies in the Hasse interval for t in {3, 7, 11, 19}") {
    TempDir dir;
    NewformStore store(offline_config(dir.path));
    int checked = 0;
    for (std::int64_t level : {32, 544, 2336, 2848, 3616})
        for (const auto& f : store.fetch_level(level).forms)
            for (long t : {3l, 7l, 11l, 19l}) {
                CHECK(real_roots_within_hasse_bound(eigenvalue_char_poly(f, static_cast<std::size_t>(t)), t));
                // all roots real: the charpoly of a totally real eigenvalue
                const auto cp = eigenvalue_char_poly(f, static_cast<std::size_t>(t));
                CHECK(count_real_roots(cp, Rational(-1000), Rational(1000)) > 0);
                ++checked;
            }
    CHECK(checked == 4 * (1 + 10 + 12 + 17 + 10));
}

TEST_CASE("fetch, cache, load round trip") {
    TempDir dir;
    NewformStore store(offline_config(dir.path));
    auto fetched = store.fetch_level(32);
    CHECK(fs::exists(store.cache_path(32)));
    CHECK(slurp(store.cache_path(32)) == slurp(store.bundled_path(32)));
    auto loaded = store.load_cached(32);
    REQUIRE(loaded.forms.size() == fetched.forms.size());
    CHECK(loaded.forms[0].label == fetched.forms[0].label);
    CHECK(loaded.forms[0].an == fetched.forms[0].an);
    CHECK(serialize_level(loaded) == slurp(store.cache_path(32)));
    auto big = store.fetch_level(3616);
    CHECK(serialize_level(big) == slurp(store.bundled_path(3616)));
}

TEST_CASE("missing and unavailable data") {
    TempDir dir;
    NewformStore store(offline_config(dir.path));
    CHECK_THROWS_AS(store.load_cached(9999), MissingFile);
    CHECK_THROWS_AS(store.fetch_level(9999), DataUnavailable);
    CHECK_THROWS_AS(store.fetch_level(0), InvalidInput);
}

TEST_CASE("a tampered cache file is rejected") {
    TempDir dir;
    NewformStore store(offline_config(dir.path));
    store.fetch_level(32);
    auto doc = json::parse_exact(slurp(store.cache_path(32)));
    // a_6 = a_2 a_3 = 0 for y^2 = x^3 - x; make it 1
    doc["forms"][0]["an"][5][0] = json::Json::array({1, 1});
    {
        std::ofstream out(store.cache_path(32), std::ios::binary | std::ios::trunc);
        out << json::dump_exact(doc) << "\n";
    }
    try {
        store.load_cached(32);
        FAIL("expected an invariant violation");
    } catch (const InvariantViolation& e) {
        const std::string msg = e.what();
        CHECK(msg.find("32.2.a.a") != std::string::npos);
        CHECK(msg.find("a_6") != std::string::npos);
    }
}

TEST_CASE("malformed payloads name the offending field") {
    auto expect_parse_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_level(text, DataSource::Remote);
            FAIL("expected a parse error for " << text);
        } catch (const ParseError& e) {
            CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
        }
    };
    expect_parse_error(R"({"weight":2,"forms":[]})", "level");
    expect_parse_error(R"({"level":32,"weight":2,"forms":[{"label":"x","dimension":1,"an":[]}]})", "field_poly");
    expect_parse_error(R"({"level":32,"weight":2,"forms":[{"label":"x","dimension":1,"field_poly":[0,1],"an":[[[1,0]]],"cm_discriminant":null}]})",
                       "an");
    expect_parse_error("{not json", "");
}

TEST_CASE("validation rejects a non-Hasse eigenvalue") {
    auto field = make_field(IntPolynomial{0, 1});
    NewformRecord f;
    f.level = 11;
    f.label = "fake";
    f.dimension = 1;
    f.field_poly = IntPolynomial{0, 1};
    f.field = field;
    for (long n : {1, 5, 1, 1, 1}) f.an.push_back(NumberFieldElement::from_rational(field, Rational(n)));
    // a_3 = 1, a_2 = 5: |a_2| > 2 sqrt 2
    CHECK_THROWS_AS(validate(f), InvariantViolation);
}

TEST_CASE("the level-32 coefficients follow from y^2 = x^3 - x") {
    TempDir dir;
    NewformStore store(offline_config(dir.path));
    const auto f = store.fetch_level(32).forms.at(0);
    for (long t : {3l, 5l, 7l, 11l, 13l, 17l, 19l, 23l, 29l, 97l}) {
        long count = 1;  // point at infinity
        for (long x = 0; x < t; ++x) {
            const long rhs = ((x * x % t) * x - x + t) % t;
            if (rhs == 0) count += 1;
            else {
                long legendre = 1, base = rhs, e = (t - 1) / 2;
                long acc = 1;
                while (e) {
                    if (e & 1) acc = acc * base % t;
                    base = base * base % t;
                    e >>= 1;
                }
                legendre = acc == 1 ? 1 : -1;
                count += 1 + legendre;
            }
        }
        CHECK(f.coefficient(static_cast<std::size_t>(t)).coords()[0] == Rational(t + 1 - count));
    }
}

TEST_CASE("remote fetch against a local mock API") {
    TempDir bundle_src, cache;
    // Serve the bundled 544 data back in the remote API's shape.
    NewformStore reference(offline_config(bundle_src.path));
    const auto ref = reference.fetch_level(544);
    constexpr std::size_t kCoeffs = 60;

    std::vector<json::Json> rows;
    std::map<std::string, json::Json> hecke;
    for (const auto& f : ref.forms) {
        json::Json row;
        row["label"] = f.label;
        row["dim"] = f.dimension;
        row["field_poly"] = json::Json::array();
        for (int k = 0; k <= f.field_poly.degree(); ++k) row["field_poly"].push_back(json::big_integer(f.field_poly.coeff(k)));
        row["cm_discs"] = f.cm_discriminant ? json::Json::array({*f.cm_discriminant}) : json::Json::array();
        if (f.dimension == 1) {
            row["traces"] = json::Json::array();
            for (std::size_t n = 1; n <= kCoeffs; ++n) row["traces"].push_back(json::big_integer(f.coefficient(n).coords()[0].get_num()));
        } else {
            // basis y^k / d with d clearing every denominator of the a_p
            Integer d = 1;
            for (std::size_t n = 1; n <= kCoeffs; ++n)
                for (const auto& c : f.coefficient(n).coords()) d = ilcm(d, c.get_den());
            json::Json e;
            e["label"] = f.label;
            e["field_poly"] = row["field_poly"];
            e["hecke_ring_numerators"] = json::Json::array();
            e["hecke_ring_denominators"] = json::Json::array();
            for (int k = 0; k < f.dimension; ++k) {
                json::Json v = json::Json::array();
                for (int j = 0; j < f.dimension; ++j) v.push_back(j == k ? 1 : 0);
                e["hecke_ring_numerators"].push_back(v);
                e["hecke_ring_denominators"].push_back(json::big_integer(d));
            }
            e["ap"] = json::Json::array();
            for (std::size_t p = 2; p <= kCoeffs; ++p) {
                bool prime = true;
                for (std::size_t q = 2; q * q <= p; ++q) prime = prime && p % q != 0;
                if (!prime) continue;
                json::Json v = json::Json::array();
                for (const auto& c : f.coefficient(p).coords()) {
                    Rational scaled = c * Rational(d);
                    v.push_back(json::big_integer(scaled.get_num()));
                }
                e["ap"].push_back(v);
            }
            e["maxp"] = 59;
            hecke[f.label] = e;
        }
        rows.push_back(row);
    }

    httplib::Server server;
    int newform_requests = 0;
    server.Get("/api/mf_newforms/", [&](const httplib::Request& req, httplib::Response& res) {
        ++newform_requests;
        CHECK(req.get_param_value("level") == "544");
        CHECK(req.get_param_value("char_order") == "1");
        const bool second = req.has_param("_offset");
        json::Json doc;
        doc["data"] = json::Json::array();
        const std::size_t half = rows.size() / 2;
        for (std::size_t i = second ? half : 0; i < (second ? rows.size() : half); ++i) doc["data"].push_back(rows[i]);
        if (!second) doc["next"] = "/api/mf_newforms/?level=544&weight=2&char_order=1&_format=json&_offset=5";
        res.set_content(json::dump_exact(doc), "application/json");
    });
    server.Get("/api/mf_hecke_nf/", [&](const httplib::Request& req, httplib::Response& res) {
        json::Json doc;
        doc["data"] = json::Json::array({hecke.at(req.get_param_value("label"))});
        res.set_content(json::dump_exact(doc), "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread th([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    StoreConfig cfg;
    cfg.cache_dir = cache.path;
    cfg.bundled_dir = cache.path / "no-bundle";
    cfg.source_url = "http://127.0.0.1:" + std::to_string(port);
    cfg.min_an = 59;
    cfg.request_interval = std::chrono::milliseconds(0);
    NewformStore store(cfg);
    auto got = store.fetch_level(544);
    server.stop();
    th.join();

    CHECK(newform_requests == 2);
    REQUIRE(got.forms.size() == ref.forms.size());
    for (std::size_t i = 0; i < got.forms.size(); ++i) {
        const auto& a = got.forms[i];
        const auto& b = ref.forms[i];
        CHECK(a.label == b.label);
        CHECK(a.source == DataSource::Remote);
        CHECK(a.field_poly == b.field_poly);
        CHECK(a.cm_discriminant == b.cm_discriminant);
        REQUIRE(a.num_an() >= 59);
        for (std::size_t n = 1; n <= 59; ++n) CHECK(a.coefficient(n) == b.coefficient(n));
    }
    // raw responses archived, parsed cache written
    CHECK(fs::exists(cache.path / "raw" / "level_544" / "response_1.json"));
    CHECK(fs::exists(store.cache_path(544)));
    // second fetch is served from the cache with the server gone
    CHECK(store.fetch_level(544).forms.size() == ref.forms.size());
}

TEST_CASE("remote failure without a cache is reported as unavailable") {
    TempDir cache;
    StoreConfig cfg;
    cfg.cache_dir = cache.path;
    cfg.bundled_dir = cache.path / "no-bundle";
    cfg.source_url = "http://127.0.0.1:9";  // discard port, nothing listening
    NewformStore store(cfg);
    CHECK_THROWS_AS(store.fetch_level(544), DataUnavailable);
}
