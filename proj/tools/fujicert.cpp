// fujicert: command-line front end to the certification toolkit.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fujita/bounds/bounds.hpp"
#include "fujita/verifier/coverage.hpp"
#include "fujita/verifier/report.hpp"

namespace fv = fujita::verify;
using fujita::Enclosure;
using fujita::Rational;
using nlohmann::json;

namespace {

// CLI11 validator for exact rationals ("5.9999", "11/100", "2").
const CLI::Validator rational_arg(
    [](std::string& s) -> std::string {
        try {
            Rational::parse(s);
            return {};
        } catch (const std::exception& e) {
            return e.what();
        }
    },
    "RATIONAL");

void write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fujita::DomainError("cannot write " + path);
    out << text;
}

json enclosure_json(const Enclosure& e, int digits = 12) {
    return {{"lo", e.lo().str()}, {"hi", e.hi().str()}, {"lo_decimal", e.lo().decimal(digits)},
            {"hi_decimal", e.hi().decimal(digits)}, {"width", e.width().decimal(digits + 3)}};
}

std::string verdict_line(const fv::Claim& c, const fv::ClaimResult& r) {
    std::string s = to_string(r.cert.verdict);
    s.resize(13, ' ');
    s += c.id;
    if (r.cert.upper) s += "  bound " + r.cert.upper->decimal(7);
    if (r.escalated) s += "  (escalated to " + std::to_string(r.budget) + ")";
    if (r.cert.vacuous) s += "  (vacuous)";
    if (c.expected != fujita::Verdict::Certified) s += std::string("  [expected ") + to_string(c.expected) + "]";
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fujicert: exact-arithmetic certificates for the numeric case analysis"};
    app.set_version_flag("--version", fv::toolkit_version);
    app.require_subcommand(1);

    fv::RunConfig cfg;
    std::string eps_s = "1/1000000000";
    auto budget_opts = [&](CLI::App* sc) {
        sc->add_option("--budget", cfg.budget, "leaf boxes per claim")->capture_default_str()->check(CLI::PositiveNumber);
        sc->add_option("--eps", eps_s, "root enclosure width used while certifying")
            ->capture_default_str()
            ->check(rational_arg);
    };

    // verify ---------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "certify ledger claims");
    verify->require_subcommand(1);

    auto* all = verify->add_subcommand("all", "certify the whole ledger and run every check");
    std::string json_path = "fujicert_report.json", md_path = "fujicert_report.md";
    budget_opts(all);
    all->add_option("--json", json_path, "JSON report path ('-' for stdout)")->capture_default_str();
    all->add_option("--md", md_path, "Markdown report path ('-' for stdout)")->capture_default_str();
    all->add_option("--threads", cfg.threads, "worker threads (0: all cores)")->capture_default_str();
    all->add_option("--only", cfg.only, "run just these claim ids");
    all->add_option("--mld-vertices", cfg.mld_vertices, "enumeration: max vertices")->capture_default_str();
    all->add_option("--mld-weight", cfg.mld_weight, "enumeration: max weight")->capture_default_str();
    bool quiet = false;
    all->add_flag("-q,--quiet", quiet, "only print the summary");

    auto* one = verify->add_subcommand("claim", "certify one ledger claim and print its certificate");
    std::string claim_id;
    one->add_option("id", claim_id, "claim id")->required();
    budget_opts(one);

    auto* file = verify->add_subcommand("file", "certify claims read from a JSON file (one claim or an array)");
    std::string claims_path;
    file->add_option("path", claims_path)->required()->check(CLI::ExistingFile);
    budget_opts(file);

    // inspection -------------------------------------------------------------
    auto* constants = app.add_subcommand("constants", "recompute the printed decimal constants");

    auto* mld = app.add_subcommand("mld", "minimal log discrepancy of one dual graph");
    std::string graph_path;
    mld->add_option("--graph", graph_path, "JSON {\"weights\": [...], \"edges\": [[i, j], ...]}, 1-based")
        ->required()
        ->check(CLI::ExistingFile);

    auto* scan = app.add_subcommand("mld-scan", "check mld <= 2/m over all small rational trees");
    int max_v = 6, max_w = 6;
    scan->add_option("--max-vertices", max_v)->capture_default_str()->check(CLI::Range(1, 8));
    scan->add_option("--max-weight", max_w)->capture_default_str()->check(CLI::Range(2, 12));

    auto* mu = app.add_subcommand("mu", "enclosure of mu(w)");
    std::string w_s, sigma_s = "5.9999";
    int n = 5;
    mu->add_option("--w", w_s)->required()->check(rational_arg);
    mu->add_option("--sigma", sigma_s)->capture_default_str()->check(rational_arg);
    mu->add_option("--n", n)->capture_default_str();
    std::string width_s = "1/1000000000";
    mu->add_option("--eps", width_s, "enclosure width")->capture_default_str()->check(rational_arg);

    auto* alpha = app.add_subcommand("alpha", "alpha_{d,e}(m) and beta_{d,e}(m)");
    int d = 3, e = 5, m = 2;
    alpha->add_option("--d", d)->required();
    alpha->add_option("--e", e)->required();
    alpha->add_option("--m", m)->required();

    auto* eta = app.add_subcommand("eta-prime", "root eta' of the volume lower bound");
    std::string s_s = "0.11", def_s = "5/3";
    eta->add_option("--s", s_s)->capture_default_str()->check(rational_arg);
    eta->add_option("--def", def_s)->capture_default_str()->check(rational_arg);
    eta->add_option("--eps", width_s, "enclosure width")->capture_default_str()->check(rational_arg);

    auto* ledger = app.add_subcommand("ledger", "list the ledger; with --manifest, check display coverage");
    std::string manifest_path, listing_path;
    ledger->add_option("--manifest", manifest_path)->check(CLI::ExistingFile);
    ledger->add_option("--out", listing_path, "write the grouped Markdown listing here");
    bool ledger_json = false;
    ledger->add_flag("--json", ledger_json, "dump claim statements as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.eps = Rational::parse(eps_s);

        if (*all) {
            fv::Report rep = fv::run_all(cfg);
            if (!quiet)
                for (std::size_t i = 0; i < rep.claims.size(); ++i)
                    std::cerr << verdict_line(rep.claims[i], rep.results[i]) << "\n";
            write_file(json_path, fv::to_json(rep).dump(2) + "\n");
            write_file(md_path, fv::to_markdown(rep));
            auto failing = rep.failing();
            std::cerr << rep.claims.size() << " claims, " << rep.claims.size() - failing.size() << " certified";
            if (rep.surf) std::cerr << ", " << rep.surf->mld.violations.size() << " mld violations";
            std::cerr << "\n";
            if (!failing.empty()) {
                std::cerr << "not certified:";
                for (const auto& id : failing) std::cerr << " " << id;
                std::cerr << "\n";
            }
            auto unexpected = rep.unexpected();
            if (!unexpected.empty()) {
                std::cerr << "verdict differs from ledger expectation:";
                for (const auto& id : unexpected) std::cerr << " " << id;
                std::cerr << "\n";
            }
            std::cerr << (rep.pass() ? "PASS" : "FAIL") << "\n";
            return rep.exit_code();
        }

        if (*one || *file) {
            std::vector<fv::Claim> claims;
            if (*one) {
                for (auto& c : fv::build_ledger(cfg.ledger))
                    if (c.id == claim_id) claims.push_back(std::move(c));
                if (claims.empty()) throw fujita::DomainError("no claim with id '" + claim_id + "'");
            } else {
                std::ifstream in(claims_path);
                json j = json::parse(in);
                if (j.is_array())
                    for (const auto& x : j) claims.push_back(fv::claim_from_json(x));
                else
                    claims.push_back(fv::claim_from_json(j));
            }
            auto results = fv::certify_all(claims, cfg);
            json out = json::array();
            bool ok = true;
            for (std::size_t i = 0; i < claims.size(); ++i) {
                out.push_back(fv::claim_entry(claims[i], results[i]));
                ok = ok && results[i].cert.certified();
            }
            std::cout << (out.size() == 1 ? out[0] : out).dump(2) << "\n";
            return ok ? 0 : 1;
        }

        if (*constants) {
            auto rep = fv::check_derived_constants(cfg.ledger, cfg.budget);
            std::cout << fv::to_json(rep).dump(2) << "\n";
            return rep.passed() ? 0 : 1;
        }

        if (*mld) {
            std::ifstream in(graph_path);
            auto g = fujita::surf::graph_from_json(json::parse(in)); // rejects non-negative-definite input
            json out{{"graph", fujita::surf::to_json(g)}};
            auto z = fujita::surf::fundamental_cycle(g);
            bool rational = fujita::surf::is_rational(g);
            out["fundamental_cycle"] = z;
            out["rational"] = rational;
            if (rational) {
                long mult = fujita::surf::multiplicity(g);
                Rational v = fujita::surf::mld(g);
                json k = json::array();
                for (const auto& a : fujita::surf::discrepancies(g)) k.push_back(a.str());
                out["multiplicity"] = mult;
                out["embedding_dimension"] = fujita::surf::embedding_dimension(g);
                out["discrepancies"] = k;
                out["mld"] = v.str();
                out["bound_2_over_m"] = Rational(2, mult).str();
                out["within_bound"] = v <= Rational(2, mult);
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*scan) {
            auto rep = fujita::surf::verify_mld_theorem(max_v, max_w);
            std::cout << fujita::surf::to_json(rep).dump(2) << "\n";
            return rep.passed() ? 0 : 1;
        }

        if (*mu) {
            auto r = fujita::bounds::mu_min_detailed(Rational::parse(w_s), Rational::parse(sigma_s), n, Rational::parse(width_s));
            json out = enclosure_json(r.mu);
            out["descartes_sign_changes"] = r.descartes_sign_changes;
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*alpha) {
            json out{{"d", d}, {"e", e}, {"m", m}, {"alpha", fujita::bounds::alpha_de(d, e, m)},
                     {"beta", enclosure_json(fujita::bounds::beta_de(d, e, m))}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*eta) {
            auto r = fujita::volume::eta_prime_detailed(Enclosure(Rational::parse(s_s)), Enclosure(Rational::parse(def_s)),
                                                        Rational::parse(width_s));
            json out = enclosure_json(r.eta);
            out["monotone"] = r.monotone;
            out["search_range"] = {r.range_lo.str(), r.range_hi.str()};
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (*ledger) {
            auto claims = fv::build_ledger(cfg.ledger);
            if (ledger_json) {
                json out = json::array();
                for (const auto& c : claims) out.push_back(fv::to_json(c));
                std::cout << out.dump(2) << "\n";
            } else if (manifest_path.empty()) {
                for (const auto& c : claims) std::cout << c.group << "  " << c.id << "  " << c.anchor << "\n";
            }
            if (manifest_path.empty()) return 0;
            json manifest = fv::load_manifest(manifest_path);
            if (!listing_path.empty()) write_file(listing_path, fv::ledger_markdown(manifest, claims));
            auto cov = fv::check_coverage(manifest, claims);
            std::cout << fv::to_json(cov).dump(2) << "\n";
            return cov.passed() ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
