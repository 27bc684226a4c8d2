#include "qfermat/report.hpp"

#include "qfermat/error.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace qfermat {

using json::Json;

namespace {

Json integers(const std::vector<std::uint64_t>& v) {
    Json out = Json::array();
    for (auto x : v) out.push_back(x);
    return out;
}

Json audit_json(const ResultantAuditEntry& e) {
    Json j;
    j["t"] = e.t;
    j["c"] = e.c;
    j["polynomial"] = trace_polynomial(e.c).to_string();
    j["resultant"] = json::big_integer(e.resultant);
    Json primes = Json::array();
    for (const auto& p : e.divisors.primes) primes.push_back(json::big_integer(p));
    j["prime_divisors"] = primes;
    j["unknown_cofactor"] = e.divisors.has_unknown() ? json::big_integer(e.divisors.unknown_cofactor) : Json(nullptr);
    return j;
}

// Strings unquoted; numbers (including big_integer values) as literals.
std::string inline_value(const Json& v) {
    if (v.is_string() && v.get_ref<const std::string&>().rfind('\x01', 0) != 0) return v.get<std::string>();
    return json::dump_exact(v);
}

}  // namespace

Json prime_set_json(const PrimeSet& s) {
    if (s.is_all()) return "ALL";
    Json primes = Json::array();
    for (const auto& p : s.primes()) primes.push_back(json::big_integer(p));
    if (s.is_finite()) return primes;
    Json j;
    j["primes"] = primes;
    j["above"] = json::big_integer(*s.tail_bound());
    return j;
}

Json sieve_report_json(const SieveOutcome& outcome) {
    Json doc;
    doc["q"] = json::big_integer(outcome.q);
    doc["tset"] = integers(outcome.tset);
    doc["p_min"] = outcome.p_min;
    Json forms = Json::array();
    for (const auto& r : outcome.reports) {
        Json f;
        f["label"] = r.label;
        Json per_t;
        for (const auto& [t, s] : r.per_t) per_t[std::to_string(t)] = prime_set_json(s);
        f["per_t"] = per_t;
        f["survivors"] = prime_set_json(r.survivors);
        Json audit = Json::array();
        for (const auto& e : r.audit) audit.push_back(audit_json(e));
        f["resultant_audit"] = audit;
        forms.push_back(f);
    }
    doc["forms"] = forms;
    Json global = Json::array();
    for (const auto& g : outcome.global_survivors) {
        if (g.primes.is_finite()) {
            for (const auto& p : g.primes.primes()) global.push_back(Json{{"label", g.label}, {"p", json::big_integer(p)}});
        } else {
            global.push_back(Json{{"label", g.label}, {"p", prime_set_json(g.primes)}});
        }
    }
    doc["global_survivors"] = global;
    doc["proved"] = outcome.proved;
    Json assumptions = Json::array();
    for (const auto& a : sieve_assumptions()) assumptions.push_back(a);
    doc["assumptions"] = assumptions;
    return doc;
}

Json endgame_json(const EndgameCertificate& cert) {
    const auto& c = cert.congruence;
    Json cong;
    cong["form_a"] = c.form_a;
    cong["form_b"] = c.form_b;
    cong["ell"] = c.ell;
    cong["prime_above_ell_a"] = c.holds ? Json(c.prime_a) : Json(nullptr);
    cong["prime_above_ell_b"] = c.holds ? Json(c.prime_b) : Json(nullptr);
    cong["lcm_level"] = c.lcm_level;
    cong["bound"] = c.bound;
    Json idx;
    idx["rule"] = "1 <= n <= " + std::to_string(c.bound) + ", gcd(n, " + std::to_string(c.lcm_level) + ") = 1";
    idx["count"] = c.indices_checked.size();
    Json list = Json::array();
    for (auto n : c.indices_checked) list.push_back(n);
    idx["indices"] = list;
    cong["indices_checked"] = idx;
    cong["verdict"] = c.holds ? "holds" : "fails";
    Json attempts = Json::array();
    for (const auto& a : c.attempts) {
        Json j;
        j["prime_above_ell_a"] = a.prime_a;
        j["prime_above_ell_b"] = a.prime_b;
        j["holds"] = a.holds;
        j["first_failure"] = a.first_failure ? Json(*a.first_failure) : Json(nullptr);
        if (!a.note.empty()) j["note"] = a.note;
        attempts.push_back(j);
    }
    cong["attempts"] = attempts;

    Json doc;
    doc["congruence"] = cong;
    doc["zero_pattern"] = cert.zero_pattern.holds;
    Json val;
    val["statement"] = cert.valuation_statement;
    Json checks = Json::array();
    for (const auto& s : cert.spot_checks) {
        Json j;
        j["A"] = json::big_integer(s.A);
        j["B"] = json::big_integer(s.B);
        j["pi"] = s.residue.pi.to_string();
        j["pi_bar"] = s.residue.pi_bar.to_string();
        j["v_pi"] = s.residue.v_pi;
        j["v_pi_bar"] = s.residue.v_pi_bar;
        j["residues"] = Json::array({s.residue.r_pi, s.residue.r_pi_bar});
        checks.push_back(j);
    }
    val["spot_checks"] = checks;
    doc["valuation_argument"] = val;
    Json cited = Json::array();
    for (const auto& t : cert.cited_theorems) cited.push_back(t);
    doc["cited_theorems"] = cited;
    return doc;
}

std::string render_markdown(const Json& r) {
    std::ostringstream md;
    md << "# x^4 + y^4 = " << inline_value(r.at("q")) << " z^p\n\n";
    md << "- tset: " << inline_value(r.at("tset")) << "\n";
    md << "- p_min: " << inline_value(r.at("p_min")) << "\n";
    md << "- proved: " << (r.at("proved").get<bool>() ? "yes" : "no") << "\n\n";

    md << "## Forms\n\n| label | survivors |";
    std::vector<std::string> ts;
    if (!r.at("forms").empty())
        for (const auto& [t, v] : r.at("forms")[0].at("per_t").items()) ts.push_back(t);
    for (const auto& t : ts) md << " t = " << t << " |";
    md << "\n|---|---|";
    for (std::size_t i = 0; i < ts.size(); ++i) md << "---|";
    md << "\n";
    for (const auto& f : r.at("forms")) {
        md << "| " << f.at("label").get<std::string>() << " | " << inline_value(f.at("survivors")) << " |";
        for (const auto& t : ts) md << " " << inline_value(f.at("per_t").at(t)) << " |";
        md << "\n";
    }

    md << "\n## Global survivors\n\n";
    if (r.at("global_survivors").empty()) md << "none\n";
    for (const auto& g : r.at("global_survivors"))
        md << "- " << g.at("label").get<std::string>() << ", p = " << inline_value(g.at("p")) << "\n";

    md << "\n## Assumptions\n\n";
    for (const auto& a : r.at("assumptions")) md << "- " << a.get<std::string>() << "\n";

    if (r.contains("endgame")) {
        const Json& e = r.at("endgame");
        const Json& c = e.at("congruence");
        md << "\n## Endgame\n\n";
        md << "### Congruence\n\n";
        md << "- " << c.at("form_a").get<std::string>() << " vs " << c.at("form_b").get<std::string>() << " mod "
           << inline_value(c.at("ell")) << ": " << c.at("verdict").get<std::string>() << "\n";
        if (!c.at("prime_above_ell_a").is_null())
            md << "- primes above " << inline_value(c.at("ell")) << ": " << c.at("prime_above_ell_a").get<std::string>()
               << " and " << c.at("prime_above_ell_b").get<std::string>() << "\n";
        md << "- indices: " << c.at("indices_checked").at("rule").get<std::string>() << " ("
           << inline_value(c.at("indices_checked").at("count")) << " checked)\n";
        md << "\n| prime above l (a) | prime above l (b) | holds | first failure |\n|---|---|---|---|\n";
        for (const auto& a : c.at("attempts"))
            md << "| " << a.at("prime_above_ell_a").get<std::string>() << " | "
               << a.at("prime_above_ell_b").get<std::string>() << " | " << (a.at("holds").get<bool>() ? "yes" : "no")
               << " | " << (a.at("first_failure").is_null() ? "-" : inline_value(a.at("first_failure"))) << " |\n";
        md << "\n### Zero-trace pattern\n\n" << (e.at("zero_pattern").get<bool>() ? "holds" : "fails") << "\n";
        md << "\n### Valuation argument\n\n" << e.at("valuation_argument").at("statement").get<std::string>() << "\n\n";
        md << "| A | B | v at pi | v at conj(pi) | residues |\n|---|---|---|---|---|\n";
        for (const auto& s : e.at("valuation_argument").at("spot_checks"))
            md << "| " << inline_value(s.at("A")) << " | " << inline_value(s.at("B")) << " | "
               << inline_value(s.at("v_pi")) << " | " << inline_value(s.at("v_pi_bar")) << " | "
               << inline_value(s.at("residues")) << " |\n";
        md << "\n### Cited theorems\n\n";
        for (const auto& t : e.at("cited_theorems")) md << "- " << t.get<std::string>() << "\n";
    }
    return md.str();
}

std::string report_text(const Json& report) { return json::dump_exact(report, 2) + "\n"; }

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw Error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qfermat
