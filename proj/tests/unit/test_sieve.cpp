#include "qfermat/error.hpp"
#include "qfermat/sieve.hpp"

#include <doctest.h>

#include <filesystem>

using namespace qfermat;

namespace {

const NewformStore& store() {
    static const NewformStore s([] {
        StoreConfig cfg;
        cfg.cache_dir = std::filesystem::temp_directory_path() / ("qfermat-sieve-" + std::to_string(::getpid()));
        cfg.offline = true;
        return cfg;
    }());
    return s;
}

const LevelData& level(std::int64_t n) {
    static std::map<std::int64_t, LevelData> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, store().fetch_level(n)).first;
    return it->second;
}

}  // namespace

TEST_CASE("allowed trace scalars") {
    CHECK(allowed_trace_scalars(3).scalars == std::vector<std::int64_t>{-2, -1, 0, 1, 2});
    CHECK(allowed_trace_scalars(7).scalars.size() == 7);
    CHECK(allowed_trace_scalars(19).scalars.back() == 6);
    CHECK_THROWS_AS(allowed_trace_scalars(5), InvalidInput);
    CHECK(trace_polynomial(0) == IntPolynomial{0, 1});
    CHECK(trace_polynomial(2) == IntPolynomial{-8, 0, 1});
    CHECK(trace_polynomial(-2) == trace_polynomial(2));
}

TEST_CASE("t always survives at t") {
    for (std::int64_t n : {2336, 2848})
        for (const auto& f : level(n).forms)
            for (std::uint64_t t : {3u, 7u, 11u, 19u}) CHECK(survivors_at(f, t).contains(Integer(static_cast<unsigned long>(t))));
}

TEST_CASE("survivors_at by hand for a rational form") {
    // a_t = b rational: the resultants are Res(x^2 - 2c^2, x - b) = b^2 - 2c^2 and Res(x, x - b) = -b.
    const auto& f = level(2336).forms.front();
    REQUIRE(f.dimension == 1);
    const long b3 = f.coefficient(3).coords()[0].get_num().get_si();
    PrimeSet expect{3};
    bool all = false;
    for (long c = 0; c * c <= 6; ++c) {
        const long r = c == 0 ? -b3 : b3 * b3 - 2 * c * c;
        if (r == 0) all = true;
        else expect = expect.unite(prime_divisors(Integer(r)).as_prime_set());
    }
    CHECK(survivors_at(f, 3) == (all ? PrimeSet::all() : expect));
}

TEST_CASE("preconditions") {
    const auto& f = level(2336).forms.front();
    CHECK_THROWS_AS(survivors_at(f, 5), InvalidInput);
    CHECK_THROWS_AS(survivors_at(f, 15), InvalidInput);
    const auto& g = level(544).forms.front();
    CHECK_NOTHROW(survivors_at(g, 3));
    CHECK_THROWS_AS(sieve_level(73, {3, 5}, level(2336)), InvalidInput);
    CHECK_THROWS_AS(sieve_level(73, {}, level(2336)), InvalidInput);
    CHECK_THROWS_AS(sieve_level(89, {3}, level(2336)), InvalidInput);
}

TEST_CASE("q = 73 leaves exactly (2336.2.a.l, 17)") {
    const auto out = sieve_level(73, kDefaultTset, level(2336));
    CHECK_FALSE(out.proved);
    REQUIRE(out.reports.size() == 12);
    CHECK(std::is_sorted(out.reports.begin(), out.reports.end(),
                         [](const auto& a, const auto& b) { return a.label < b.label; }));
    const auto pairs = out.survivor_pairs();
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].first == "2336.2.a.l");
    CHECK(pairs[0].second == 17);
    CHECK(out.global_survivors.size() == 1);
}

TEST_CASE("q = 89 and q = 113 are proved") {
    auto o89 = sieve_level(89, kDefaultTset, level(2848));
    CHECK(o89.proved);
    CHECK(o89.reports.size() == 17);
    auto o113 = sieve_level(113, kDefaultTset, level(3616));
    CHECK(o113.proved);
    CHECK(o113.reports.size() == 10);
}

TEST_CASE("soundness witness: p = 17 survives for q = 73 under every valid tset") {
    const std::vector<std::uint64_t> pool{3, 7, 11, 19, 23, 31};
    const auto& l = level(2336).find("2336.2.a.l");
    for (unsigned mask = 1; mask < (1u << pool.size()); ++mask) {
        std::vector<std::uint64_t> tset;
        for (std::size_t k = 0; k < pool.size(); ++k)
            if (mask & (1u << k)) tset.push_back(pool[k]);
        CHECK(sieve_form(l, tset).survivors.contains(17));
    }
}

TEST_CASE("monotone in tset") {
    const std::vector<std::vector<std::uint64_t>> chain{{3}, {3, 7}, {3, 7, 11}, {3, 7, 11, 19}, {3, 7, 11, 19, 23}};
    for (const auto& f : level(2336).forms) {
        PrimeSet prev = PrimeSet::all();
        for (const auto& tset : chain) {
            auto cur = sieve_form(f, tset).survivors;
            CHECK(cur.subset_of(prev));
            prev = cur;
        }
    }
}

TEST_CASE("deterministic") {
    auto a = sieve_level(73, kDefaultTset, level(2336));
    auto b = sieve_level(73, kDefaultTset, level(2336));
    REQUIRE(a.reports.size() == b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i) {
        CHECK(a.reports[i].label == b.reports[i].label);
        CHECK(a.reports[i].survivors == b.reports[i].survivors);
        CHECK(a.reports[i].per_t == b.reports[i].per_t);
    }
}

TEST_CASE("the form of the trivial solution of q = 17 is never eliminated") {
    // 17 = 1 + 2^4 is a biquadrate sum; the level-544 form attached to
    // E_(2,1) has a_t = c sqrt 2 exactly, so some resultant vanishes at every t.
    bool found = false;
    for (const auto& f : level(544).forms) {
        bool all = true;
        for (std::uint64_t t : {3u, 7u, 11u, 19u}) all = all && survivors_at(f, t).is_all();
        found = found || all;
    }
    CHECK(found);
    CHECK_THROWS_AS(sieve_level(17, kDefaultTset, level(544)), MethodInapplicable);
    CHECK_THROWS_AS(sieve_level(41, kDefaultTset, level(544)), MethodInapplicable);
}
