// Command-line driver: classify, fetch, sieve, endgame, prove.
//
// Exit codes: 0 proved / success, 1 survivors remain, 2 usage or argument
// error, 3 method inapplicable, 4 data unavailable or failed validation.

#include "qfermat/classifier.hpp"
#include "qfermat/endgame.hpp"
#include "qfermat/error.hpp"
#include "qfermat/newform_store.hpp"
#include "qfermat/report.hpp"
#include "qfermat/sieve.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace qfermat;
using json::Json;

namespace {

enum Exit { kOk = 0, kSurvivors = 1, kUsage = 2, kInapplicable = 3, kUnavailable = 4 };

struct RunConfig {
    std::string source_url = "https://www.lmfdb.org";
    std::string cache_dir = ".qfermat-cache";
    std::vector<std::uint64_t> tset = kDefaultTset;
    std::uint64_t p_min = kDefaultPMin;
    bool offline = false;
    std::string format = "json";
    std::string out;  // report path; default reports/q<q>.json
};

Integer parse_positive(const std::string& s, const char* what) {
    Integer n;
    if (s.empty() || n.set_str(s, 10) != 0 || n < 1) throw InvalidInput(std::string(what) + " must be a positive integer, got '" + s + "'");
    return n;
}

NewformStore make_store(const RunConfig& cfg) {
    StoreConfig sc;
    sc.cache_dir = cfg.cache_dir;
    sc.source_url = cfg.source_url;
    sc.offline = cfg.offline;
    return NewformStore(sc);
}

std::int64_t level_of(const Integer& q) {
    const Integer n = 32 * q;
    if (!n.fits_slong_p()) throw InvalidInput("level 32q out of range");
    return n.get_si();
}

fs::path report_path(const RunConfig& cfg, const Integer& q) {
    if (!cfg.out.empty()) return cfg.out;
    return fs::path("reports") / ("q" + q.get_str() + ".json");
}

void write_report(const RunConfig& cfg, const fs::path& path, const Json& report) {
    write_file_atomic(path, report_text(report));
    std::cout << "report: " << path.string() << "\n";
    if (cfg.format == "md") {
        fs::path md = path;
        md.replace_extension(".md");
        write_file_atomic(md, render_markdown(report));
        std::cout << "report: " << md.string() << "\n";
    }
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const NewformRecord& cm_form_at_32(const LevelData& level32) {
    for (const auto& f : level32.forms)
        if (f.cm_discriminant) return f;
    throw DataUnavailable("no CM form in the level-32 data");
}

void print_outcome(const SieveOutcome& out) {
    std::cout << "q = " << out.q << ": " << out.reports.size() << " newforms at level " << 32 * out.q << ", tset";
    for (auto t : out.tset) std::cout << " " << t;
    std::cout << "\n";
    if (out.proved) {
        std::cout << "proved: no solutions for p >= " << out.p_min << "\n";
        return;
    }
    for (const auto& g : out.global_survivors)
        std::cout << "survivor: " << g.label << " p in " << g.primes.to_string() << "\n";
}

int cmd_classify(const std::string& q_text) {
    const Classification c = classify(parse_positive(q_text, "q"));
    std::cout << c.to_string() << "\n";
    return kOk;
}

int cmd_fetch(const RunConfig& cfg, const std::string& level_text) {
    const Integer level = parse_positive(level_text, "level");
    if (!level.fits_slong_p()) throw InvalidInput("level too large");
    const auto data = make_store(cfg).fetch_level(level.get_si());
    int dim = 0;
    for (const auto& f : data.forms) dim += f.dimension;
    std::cout << "level " << data.level << ": " << data.forms.size() << " newforms, total dimension " << dim << ", source "
              << (data.forms.empty() ? "-" : to_string(data.forms.front().source)) << "\n";
    for (const auto& f : data.forms)
        std::cout << "  " << f.label << " dim " << f.dimension << (f.cm_discriminant ? " CM " + std::to_string(*f.cm_discriminant) : "")
                  << "\n";
    return kOk;
}

SieveOutcome run_sieve(const RunConfig& cfg, const Integer& q) {
    // Reject before touching data, so inapplicable q never triggers a fetch.
    const Classification c = classify(q);
    if (c.verdict != Verdict::Interesting) return sieve_level(q, cfg.tset, LevelData{}, cfg.p_min);
    const auto level = make_store(cfg).fetch_level(level_of(q));
    return sieve_level(q, cfg.tset, level, cfg.p_min);
}

int cmd_sieve(const RunConfig& cfg, const std::string& q_text) {
    const Integer q = parse_positive(q_text, "q");
    const SieveOutcome out = run_sieve(cfg, q);
    write_report(cfg, report_path(cfg, q), sieve_report_json(out));
    print_outcome(out);
    return out.proved ? kOk : kSurvivors;
}

EndgameCertificate endgame_for(const RunConfig& cfg, const Integer& q, unsigned long p, const std::string& label) {
    const auto store = make_store(cfg);
    const auto level = store.fetch_level(level_of(q));
    const auto level32 = store.fetch_level(32);
    return run_endgame(q, p, level.find(label), cm_form_at_32(level32));
}

void print_endgame(const EndgameCertificate& cert) {
    const auto& c = cert.congruence;
    std::cout << "congruence " << c.form_a << " = " << c.form_b << " mod " << c.ell << ": " << (c.holds ? "holds" : "fails");
    if (c.holds) std::cout << " at " << c.prime_a << " / " << c.prime_b;
    std::cout << " (" << c.indices_checked.size() << " indices n <= " << c.bound << ", gcd(n, " << c.lcm_level << ") = 1)\n";
    std::cout << "zero-trace pattern: " << (cert.zero_pattern.holds ? "holds at " + cert.zero_pattern.prime : "fails") << " ("
              << cert.zero_pattern.primes_checked.size() << " primes t = 3 mod 4)\n";
    std::cout << "valuation spot checks: " << cert.spot_checks.size() << "\n";
    std::cout << "endgame: " << (cert.verified() ? "verified" : "NOT verified") << "\n";
}

int cmd_endgame(const RunConfig& cfg, const std::string& q_text, const std::string& p_text, const std::string& label) {
    const Integer q = parse_positive(q_text, "q");
    const Integer p = parse_positive(p_text, "p");
    if (!p.fits_ulong_p()) throw InvalidInput("p too large");
    const fs::path path = report_path(cfg, q);
    if (!fs::exists(path))
        throw InvalidInput("no sieve report at " + path.string() + "; run 'qfermat sieve " + q.get_str() + "' first");
    Json report = json::parse_exact(read_text(path));
    bool listed = false;
    for (const auto& g : report.at("global_survivors"))
        if (g.at("label") == label && g.at("p").is_number_integer() && json::to_integer(g.at("p"), "p") == p) listed = true;
    if (!listed)
        throw InvalidInput("(" + label + ", p = " + p.get_str() + ") is not a survivor in " + path.string());
    const EndgameCertificate cert = endgame_for(cfg, q, p.get_ui(), label);
    report["endgame"] = endgame_json(cert);
    write_report(cfg, path, report);
    print_endgame(cert);
    return cert.verified() ? kOk : kSurvivors;
}

int cmd_prove(const RunConfig& cfg, const std::string& q_text) {
    const Integer q = parse_positive(q_text, "q");
    const Classification c = classify(q);
    std::cout << "classification: " << c.to_string() << "\n";
    if (c.verdict == Verdict::NotOneMod8) {
        std::cout << "proved: u^4 = -1 has no solution mod " << q << ", so there is no primitive solution for any p\n";
        return kOk;
    }
    const SieveOutcome out = run_sieve(cfg, q);
    Json report = sieve_report_json(out);
    print_outcome(out);
    int code = out.proved ? kOk : kSurvivors;
    const auto pairs = out.survivor_pairs();
    if (!out.proved && pairs.size() == 1 && out.global_survivors.size() == 1 && pairs[0].second.fits_ulong_p()) {
        const EndgameCertificate cert = endgame_for(cfg, q, pairs[0].second.get_ui(), pairs[0].first);
        if (cert.zero_pattern.holds) {
            report["endgame"] = endgame_json(cert);
            print_endgame(cert);
            if (cert.verified()) {
                std::cout << "proved: no solutions for p >= " << out.p_min << " (survivor closed by the endgame)\n";
                code = kOk;
            }
        }
    }
    write_report(cfg, report_path(cfg, q), report);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponent elimination for x^4 + y^4 = q z^p via Q-curves and level-32q newforms"};
    app.fallthrough();
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--source-url", cfg.source_url, "Base URL of the newform database API")
        ->envname("QFERMAT_SOURCE_URL")
        ->capture_default_str();
    app.add_option("--cache-dir", cfg.cache_dir, "Directory for cached newform data and raw responses")
        ->envname("QFERMAT_CACHE_DIR")
        ->capture_default_str();
    app.add_option("--tset", cfg.tset, "Primes t = 3 mod 4 used by the sieve")
        ->delimiter(',')
        ->envname("QFERMAT_TSET")
        ->capture_default_str();
    app.add_option("--p-min", cfg.p_min, "Smallest exponent p the sieve reports on")
        ->envname("QFERMAT_P_MIN")
        ->capture_default_str();
    app.add_flag("--offline", cfg.offline, "Never use the network; only cached or bundled data")->envname("QFERMAT_OFFLINE");
    app.add_option("--format", cfg.format, "Report format; md also writes a markdown rendering")
        ->check(CLI::IsMember({"json", "md"}))
        ->envname("QFERMAT_FORMAT")
        ->capture_default_str();
    app.add_option("--out", cfg.out, "Report path (default reports/q<q>.json)")->envname("QFERMAT_OUT");

    std::string q, p, label, level;
    int code = kOk;
    auto* classify_cmd = app.add_subcommand("classify", "Classify q: NotOneMod8, BiquadrateSum, A4B2Form or Interesting");
    classify_cmd->add_option("q", q, "Prime q")->required();
    classify_cmd->callback([&] { code = cmd_classify(q); });

    auto* fetch_cmd = app.add_subcommand("fetch", "Populate the cache with the newforms of a level");
    fetch_cmd->add_option("level", level, "Level N")->required();
    fetch_cmd->callback([&] { code = cmd_fetch(cfg, level); });

    auto* sieve_cmd = app.add_subcommand("sieve", "Eliminate exponents p with the level-32q newforms");
    sieve_cmd->add_option("q", q, "Prime q")->required();
    sieve_cmd->callback([&] { code = cmd_sieve(cfg, q); });

    auto* endgame_cmd = app.add_subcommand("endgame", "Close a survivor (form, p) of a prior sieve report");
    endgame_cmd->add_option("q", q, "Prime q")->required();
    endgame_cmd->add_option("p", p, "Surviving exponent")->required();
    endgame_cmd->add_option("label", label, "Label of the surviving newform")->required();
    endgame_cmd->callback([&] { code = cmd_endgame(cfg, q, p, label); });

    auto* prove_cmd = app.add_subcommand("prove", "classify, fetch, sieve and, for a single survivor, endgame");
    prove_cmd->add_option("q", q, "Prime q")->required();
    prove_cmd->callback([&] { code = cmd_prove(cfg, q); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const MethodInapplicable& e) {
        std::cerr << "method inapplicable: " << e.what() << "\n";
        return kInapplicable;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DataUnavailable& e) {
        std::cerr << "data unavailable: " << e.what() << "\n";
        return kUnavailable;
    } catch (const MissingCoefficient& e) {
        std::cerr << "data unavailable: " << e.what() << "\n";
        return kUnavailable;
    } catch (const Error& e) {
        std::cerr << "data check failed: " << e.what() << "\n";
        return kUnavailable;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnavailable;
    }
    return code;
}
