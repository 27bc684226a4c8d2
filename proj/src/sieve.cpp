#include "qfermat/sieve.hpp"

#include "qfermat/classifier.hpp"
#include "qfermat/error.hpp"

#include <algorithm>
#include <future>

namespace qfermat {

TraceCandidates allowed_trace_scalars(std::uint64_t t) {
    if (t % 4 != 3) throw InvalidInput("a_t = c*sqrt(2) only holds for t = 3 mod 4, got t = " + std::to_string(t));
    TraceCandidates out;
    out.t = t;
    const auto bound = static_cast<std::int64_t>(isqrt(Integer(static_cast<unsigned long>(2 * t))).get_si());
    for (std::int64_t c = -bound; c <= bound; ++c) out.scalars.push_back(c);
    return out;
}

IntPolynomial trace_polynomial(std::int64_t c) {
    if (c == 0) return IntPolynomial{0, 1};
    return IntPolynomial(std::vector<Integer>{Integer(-2) * c * c, 0, 1});
}

TraceSurvivors survivors_at_detailed(const NewformRecord& form, std::uint64_t t, const FactorOptions& factor_opts) {
    const TraceCandidates cand = allowed_trace_scalars(t);
    if (!is_probable_prime(Integer(static_cast<unsigned long>(t)))) throw InvalidInput(std::to_string(t) + " is not prime");
    if (form.level % static_cast<std::int64_t>(t) == 0)
        throw InvalidInput("t = " + std::to_string(t) + " divides the level " + std::to_string(form.level));
    const IntPolynomial bt = eigenvalue_char_poly(form, t);

    TraceSurvivors out;
    out.survivors = PrimeSet{static_cast<long>(t)};
    bool all = false;
    for (std::int64_t c : cand.scalars) {
        if (c < 0) continue;
        ResultantAuditEntry entry;
        entry.t = t;
        entry.c = c;
        entry.resultant = resultant(trace_polynomial(c), bt);
        if (entry.resultant == 0) {
            all = true;
        } else {
            entry.divisors = prime_divisors(entry.resultant, factor_opts);
            out.survivors = out.survivors.unite(entry.divisors.as_prime_set());
        }
        out.audit.push_back(std::move(entry));
    }
    if (all) out.survivors = PrimeSet::all();
    return out;
}

PrimeSet survivors_at(const NewformRecord& form, std::uint64_t t) { return survivors_at_detailed(form, t).survivors; }

EliminationReport sieve_form(const NewformRecord& form, const std::vector<std::uint64_t>& tset, std::uint64_t p_min) {
    if (tset.empty()) throw InvalidInput("sieve_form needs at least one t");
    EliminationReport rep;
    rep.label = form.label;
    rep.level = form.level;
    rep.dimension = form.dimension;
    PrimeSet acc = PrimeSet::all();
    for (std::uint64_t t : tset) {
        auto ts = survivors_at_detailed(form, t);
        acc = acc.intersect(ts.survivors);
        rep.per_t[t] = std::move(ts.survivors);
        rep.audit.insert(rep.audit.end(), ts.audit.begin(), ts.audit.end());
    }
    const Integer lower(static_cast<unsigned long>(p_min));
    rep.survivors = acc.at_least(lower);
    rep.below_p_min = PrimeSet(acc.members_below(lower));
    return rep;
}

std::vector<std::pair<std::string, Integer>> SieveOutcome::survivor_pairs() const {
    std::vector<std::pair<std::string, Integer>> out;
    for (const auto& g : global_survivors)
        if (g.primes.is_finite())
            for (const auto& p : g.primes.primes()) out.emplace_back(g.label, p);
    return out;
}

SieveOutcome sieve_level(const Integer& q, const std::vector<std::uint64_t>& tset, const LevelData& level_data,
                         std::uint64_t p_min) {
    const Classification cls = classify(q);
    if (cls.verdict != Verdict::Interesting) {
        std::string why;
        switch (cls.verdict) {
            case Verdict::NotOneMod8:
                why = "u^4 = -1 has no solution mod q, so there are no primitive solutions and nothing to sieve";
                break;
            case Verdict::BiquadrateSum:
                why = "q is a sum of two fourth powers; the newform attached to the trivial solution has the same "
                      "coefficient field and inner twist, so no congruence can be contradicted";
                break;
            case Verdict::A4B2Form:
                why = "q = (2A)^4 + B^2; the Q-curve attached to (2A, B, 1) gives a level-32q newform with the same "
                      "coefficient field and inner twist, so the method cannot succeed at level 32q";
                break;
            case Verdict::Interesting: break;
        }
        throw MethodInapplicable("q = " + q.get_str() + " classifies as " + cls.to_string() + ": " + why);
    }
    if (tset.empty()) throw InvalidInput("empty tset");
    for (std::uint64_t t : tset) {
        if (t % 4 != 3) throw InvalidInput("t = " + std::to_string(t) + " is not 3 mod 4");
        if (mod_u64(q, t) == 0) throw InvalidInput("t = " + std::to_string(t) + " divides q");
    }
    if (level_data.level != 32 * q)
        throw InvalidInput("level data is for level " + std::to_string(level_data.level) + ", expected 32q = " +
                           Integer(32 * q).get_str());

    SieveOutcome out;
    out.q = q;
    out.tset = tset;
    out.p_min = p_min;
    std::vector<std::future<EliminationReport>> jobs;
    for (const auto& form : level_data.forms)
        jobs.push_back(std::async(std::launch::async, [&form, &tset, p_min] { return sieve_form(form, tset, p_min); }));
    for (auto& j : jobs) out.reports.push_back(j.get());
    std::sort(out.reports.begin(), out.reports.end(),
              [](const EliminationReport& a, const EliminationReport& b) { return a.label < b.label; });
    for (const auto& r : out.reports)
        if (!r.survivors.empty()) out.global_survivors.push_back({r.label, r.survivors});
    out.proved = out.global_survivors.empty();
    return out;
}

std::vector<std::string> sieve_assumptions() {
    return {
        "Modularity of Q-curves (Ellenberg-Skinner): E_(A,B) has good reduction at 3, so its Weil restriction is "
        "attached to a weight-2 newform f with an inner twist by the mod-4 character.",
        "The 2-part of the conductor of the family is 32 for A even (Ellenberg).",
        "Irreducibility of the residual representations for every l > 13 (Ellenberg, generalizing Mazur/Momose).",
        "Ribet level lowering: for P | p the residual representation arises from a newform of level 32q, giving "
        "a_t = b_t (mod P) for primes t not dividing 2qC.",
        "Every prime dividing C is 1 mod 8, so every t = 3 mod 4 is a prime of good reduction where a_t = c*sqrt(2), "
        "|c| <= sqrt(2t).",
        "Newform data: weight 2, trivial character, level 32q; coefficients from the bundled snapshot or the remote "
        "source.",
    };
}

}  // namespace qfermat
