#pragma once

// run_all: the ledger, negative controls, derived constants, the volume
// chain and the surface-singularity scan, merged into one report.

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "fujita/surfsing/enumerate.hpp"
#include "fujita/verifier/constants.hpp"

namespace fujita::verify {

inline constexpr const char* toolkit_version = "1.0.0";

struct RunConfig {
    std::int64_t budget = 100000;          // leaf boxes per claim (escalated once x10)
    Rational eps{1, 1000000000};           // root enclosure width during certification
    std::vector<std::string> only;         // non-empty: run just these claims, nothing else
    int mld_vertices = 6, mld_weight = 6;  // surface enumeration limits
    unsigned threads = 0;                  // 0: hardware concurrency
    LedgerOptions ledger;
};

struct VolumeSection {
    std::vector<volume::LengthdivCase> lengthdiv;
    std::vector<std::pair<Rational, std::vector<volume::Breakpoint>>> breakpoints; // per r
    volume::EtaPrimeResult eta_endpoint;  // eta'(0.11, 5/3)
    Enclosure g_endpoint;                 // g(5/3)
    volume::GridMonotonicity g_grid;      // g on [1.63, 5/3]

    bool continuous() const {
        for (const auto& [r, bs] : breakpoints)
            for (const auto& b : bs)
                if (!b.continuous()) return false;
        return true;
    }
    bool passed() const {
        for (const auto& c : lengthdiv)
            if (!c.holds()) return false;
        return continuous() && eta_endpoint.eta.width() <= Rational(1, 1000000);
    }
};

struct SurfSection {
    surf::MldReport mld;
    surf::M3Report m3;
    surf::LauferCheck laufer;
    bool passed() const { return mld.passed() && m3.passed() && laufer.passed(); }
};

struct Report {
    RunConfig config;
    std::vector<Claim> claims;  // ledger order
    std::vector<ClaimResult> results;
    std::vector<Claim> controls;
    std::vector<ClaimResult> control_results;
    std::optional<ConstantsReport> constants;
    std::optional<VolumeSection> volume;
    std::optional<SurfSection> surf;

    std::vector<std::string> failing() const {
        std::vector<std::string> out;
        for (const auto& r : results)
            if (!r.cert.certified()) out.push_back(r.id);
        return out;
    }
    /// Claims whose verdict differs from the ledger's expectation.
    std::vector<std::string> unexpected() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < results.size(); ++i)
            if (!results[i].as_expected(claims[i].expected)) out.push_back(results[i].id);
        for (std::size_t i = 0; i < control_results.size(); ++i)
            if (!control_results[i].as_expected(controls[i].expected)) out.push_back(control_results[i].id);
        return out;
    }
    /// Overall verdict: every claim Certified and no mld violation.
    bool pass() const { return failing().empty() && (!surf || surf->mld.violations.empty()); }
    int exit_code() const { return pass() ? 0 : 1; }
};

/// Certify claims in parallel; results come back in input order.
inline std::vector<ClaimResult> certify_all(const std::vector<Claim>& claims, const RunConfig& cfg) {
    std::vector<ClaimResult> out(claims.size());
    unsigned n = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(claims.size(), 1)));
    EvalOptions eval;
    eval.eps = cfg.eps;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < claims.size(); i = next++) out[i] = certify_claim(claims[i], cfg.budget, eval);
    };
    if (n <= 1) {
        work();
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return out;
}

inline VolumeSection run_volume_chain(const RunConfig& cfg) {
    VolumeSection v;
    CertifyOptions opts;
    opts.budget = cfg.budget;
    v.lengthdiv = volume::verify_lengthdiv_cases(opts);
    for (const Rational& r : {Rational(1), Rational(89, 100), Rational(1, 2)})
        v.breakpoints.emplace_back(r, volume::h_breakpoints(r));
    const Rational& eps = cfg.ledger.eps;
    v.eta_endpoint = volume::eta_prime_detailed(Enclosure(volume::g_s()), Enclosure(Rational(5, 3)), eps);
    v.g_endpoint = volume::f_eta(v.eta_endpoint.eta, Enclosure(Rational(5, 3)), cfg.ledger.sigma);
    v.g_grid = volume::g_increasing_on_grid(Rational::parse("1.63"), Rational(5, 3), 12, eps);
    return v;
}

inline Report run_all(const RunConfig& cfg = {}) {
    Report rep;
    rep.config = cfg;
    std::vector<Claim> ledger = build_ledger(cfg.ledger);
    if (cfg.only.empty()) {
        rep.claims = std::move(ledger);
    } else {
        for (const auto& id : cfg.only) {
            auto it = std::find_if(ledger.begin(), ledger.end(), [&](const Claim& c) { return c.id == id; });
            if (it == ledger.end()) throw DomainError("no claim with id '" + id + "' in the ledger");
            rep.claims.push_back(*it);
        }
    }
    rep.results = certify_all(rep.claims, cfg);
    if (!cfg.only.empty()) return rep;

    rep.controls = negative_controls(cfg.ledger);
    rep.control_results = certify_all(rep.controls, cfg);
    rep.constants = check_derived_constants(cfg.ledger, cfg.budget);
    rep.volume = run_volume_chain(cfg);
    SurfSection s;
    s.mld = surf::verify_mld_theorem(cfg.mld_vertices, cfg.mld_weight);
    s.m3 = surf::verify_m3_minus2_claim(cfg.mld_vertices, cfg.mld_weight);
    s.laufer = surf::verify_laufer_brute_force(std::min(cfg.mld_vertices, 4), cfg.mld_weight, 6);
    rep.surf = std::move(s);
    return rep;
}

// ---------------------------------------------------------------------------
// Serialization. No timings or thread counts: fixed config, fixed bytes.

inline nlohmann::json claim_entry(const Claim& c, const ClaimResult& r) {
    nlohmann::json j = to_json(c);
    j.erase("expr"); // the formula string is enough in a report
    j["certificate"] = to_json(r.cert);
    j["budget"] = r.budget;
    j["escalated"] = r.escalated;
    j["as_expected"] = r.as_expected(c.expected);
    return j;
}

inline nlohmann::json to_json(const VolumeSection& v) {
    nlohmann::json ld = nlohmann::json::array();
    for (const auto& c : v.lengthdiv) {
        nlohmann::json j{{"regime", c.name},
                         {"inequality", c.inequality},
                         {"difference", c.difference.str()},
                         {"exact_minimum", c.exact.minimum.str()},
                         {"exact_argmin", c.exact.argmin.str()},
                         {"exact", c.exact.holds},
                         {"engine", to_json(c.engine)},
                         {"bookkeeping", c.bookkeeping},
                         {"holds", c.holds()}};
        if (c.exact.a) j["square_form"] = {{"a", c.exact.a->str()}, {"h", c.exact.h->str()}, {"k", c.exact.k->str()}};
        ld.push_back(j);
    }
    nlohmann::json bp = nlohmann::json::array();
    for (const auto& [r, bs] : v.breakpoints)
        for (const auto& b : bs)
            bp.push_back({{"r", r.str()},
                          {"t", b.t.str()},
                          {"below", b.left.str()},
                          {"above", b.right.str()},
                          {"continuous", b.continuous()}});
    nlohmann::json grid = nlohmann::json::array();
    for (std::size_t i = 0; i < v.g_grid.grid.size(); ++i)
        grid.push_back({{"def", v.g_grid.grid[i].str()},
                        {"lo", v.g_grid.values[i].lo().decimal(9)},
                        {"hi", v.g_grid.values[i].hi().decimal(9)}});
    return {{"lengthdiv", ld},
            {"h_breakpoints", bp},
            {"h_continuous", v.continuous()},
            {"eta_prime",
             {{"s", volume::g_s().str()},
              {"def", "5/3"},
              {"lo", v.eta_endpoint.eta.lo().decimal(12)},
              {"hi", v.eta_endpoint.eta.hi().decimal(12)},
              {"width", v.eta_endpoint.eta.width().decimal(15)},
              {"monotone", v.eta_endpoint.monotone}}},
            {"g_endpoint", {{"lo", v.g_endpoint.lo().decimal(9)}, {"hi", v.g_endpoint.hi().decimal(9)}}},
            {"g_grid", {{"increasing", v.g_grid.increasing}, {"points", grid}}},
            {"passed", v.passed()}};
}

inline nlohmann::json to_json(const Report& rep) {
    nlohmann::json claims = nlohmann::json::array();
    for (std::size_t i = 0; i < rep.claims.size(); ++i) claims.push_back(claim_entry(rep.claims[i], rep.results[i]));
    nlohmann::json controls = nlohmann::json::array();
    for (std::size_t i = 0; i < rep.controls.size(); ++i)
        controls.push_back(claim_entry(rep.controls[i], rep.control_results[i]));
    std::map<std::string, long> tally;
    for (const auto& r : rep.results) ++tally[to_string(r.cert.verdict)];
    nlohmann::json j{{"toolkit", "fujicert"},
                     {"version", toolkit_version},
                     {"config",
                      {{"budget", rep.config.budget},
                       {"eps", rep.config.eps.str()},
                       {"sigma", rep.config.ledger.sigma.str()},
                       {"enclosure_eps", rep.config.ledger.eps.str()},
                       {"only", rep.config.only},
                       {"mld_max_vertices", rep.config.mld_vertices},
                       {"mld_max_weight", rep.config.mld_weight}}},
                     {"summary",
                      {{"claims", rep.claims.size()},
                       {"verdicts", tally},
                       {"failing", rep.failing()},
                       {"unexpected", rep.unexpected()},
                       {"pass", rep.pass()}}},
                     {"claims", claims}};
    if (!rep.controls.empty()) j["negative_controls"] = controls;
    if (rep.constants) j["derived_constants"] = to_json(*rep.constants);
    if (rep.volume) j["volume_chain"] = to_json(*rep.volume);
    if (rep.surf)
        j["surface_singularities"] = {{"mld_theorem", surf::to_json(rep.surf->mld)},
                                      {"multiplicity3_minus2", surf::to_json(rep.surf->m3)},
                                      {"laufer_brute_force", surf::to_json(rep.surf->laufer)}};
    return j;
}

inline std::string bound_text(const Claim& c, const Certificate& cert) {
    // the side of the extremum that the verdict speaks about
    const auto& b = cert.verdict == Verdict::Refuted ? cert.lower : cert.upper;
    if (!b) return "-";
    std::string side = c.sense == Sense::Upper ? (cert.verdict == Verdict::Refuted ? "sup ≥ " : "sup ≤ ")
                                               : (cert.verdict == Verdict::Refuted ? "inf ≤ " : "inf ≥ ");
    return side + b->decimal(7);
}

inline std::string to_markdown(const Report& rep) {
    std::ostringstream md;
    md << "# fujicert report\n\n";
    md << "Version " << toolkit_version << ", budget " << rep.config.budget << " leaf boxes, eps "
       << rep.config.eps.str() << ".\n\n";
    md << "**Overall: " << (rep.pass() ? "PASS" : "FAIL") << "** (" << rep.claims.size() << " claims";
    auto failing = rep.failing(), unexpected = rep.unexpected();
    md << ", " << failing.size() << " not certified, " << unexpected.size() << " differing from expectation)\n\n";
    if (!failing.empty()) {
        md << "Not certified:";
        for (const auto& id : failing) md << " `" << id << "`";
        md << "\n\n";
    }
    auto table = [&](const std::vector<Claim>& cs, const std::vector<ClaimResult>& rs) {
        md << "| id | displayed inequality | verdict | achieved bound | expected |\n|---|---|---|---|---|\n";
        for (std::size_t i = 0; i < cs.size(); ++i) {
            md << "| `" << cs[i].id << "` | " << cs[i].anchor << " | " << to_string(rs[i].cert.verdict)
               << (rs[i].cert.vacuous ? " (vacuous)" : "") << (rs[i].escalated ? " (escalated)" : "") << " | "
               << bound_text(cs[i], rs[i].cert) << " | " << to_string(cs[i].expected) << " |\n";
        }
        md << "\n";
    };
    int group = -1;
    std::vector<Claim> gc;
    std::vector<ClaimResult> gr;
    for (std::size_t i = 0; i <= rep.claims.size(); ++i) {
        if (i == rep.claims.size() || rep.claims[i].group != group) {
            if (!gc.empty()) table(gc, gr);
            gc.clear();
            gr.clear();
            if (i == rep.claims.size()) break;
            group = rep.claims[i].group;
            md << "## Group " << group << "\n\n";
        }
        gc.push_back(rep.claims[i]);
        gr.push_back(rep.results[i]);
    }
    if (!rep.controls.empty()) {
        md << "## Negative controls\n\n";
        table(rep.controls, rep.control_results);
    }
    if (rep.constants) {
        md << "## Derived constants\n\n| constant | formula | exact | printed | match |\n|---|---|---|---|---|\n";
        for (const auto& c : rep.constants->constants)
            md << "| " << c.name << " | " << c.formula << " | " << c.exact.decimal(10) << " | " << c.printed << " | "
               << (c.matches ? "yes" : "**no**: " + c.explanation) << " |\n";
        md << "\n| threshold | equation | value | check | holds |\n|---|---|---|---|---|\n";
        for (const auto& x : rep.constants->crossings)
            md << "| " << x.name << " | " << x.equation << " | " << x.exact.decimal(8) << " | " << x.claim << " | "
               << (x.holds ? "yes" : "no") << " |\n";
        md << "\nAffected claim under both readings: `" << rep.constants->recomputed_reading.id << "` "
           << to_string(rep.constants->recomputed_reading.cert.verdict) << ", `" << rep.constants->printed_reading.id
           << "` " << to_string(rep.constants->printed_reading.cert.verdict) << ".\n\n";
    }
    if (rep.volume) {
        const auto& v = *rep.volume;
        md << "## Volume chain\n\n| regime | inequality | exact | engine | bookkeeping |\n|---|---|---|---|---|\n";
        for (const auto& c : v.lengthdiv)
            md << "| " << c.name << " | " << c.inequality << " | " << (c.exact.holds ? "yes" : "no") << " (min "
               << c.exact.minimum.str() << ") | " << to_string(c.engine.verdict) << " | "
               << (c.bookkeeping ? "yes" : "no") << " |\n";
        md << "\nh continuous at all breakpoints: " << (v.continuous() ? "yes" : "no") << ".\n";
        md << "eta'(0.11, 5/3) in [" << v.eta_endpoint.eta.lo().decimal(10) << ", " << v.eta_endpoint.eta.hi().decimal(10)
           << "], g(5/3) in [" << v.g_endpoint.lo().decimal(6) << ", " << v.g_endpoint.hi().decimal(6)
           << "], g increasing on the grid: " << (v.g_grid.increasing ? "yes" : "no") << ".\n\n";
    }
    if (rep.surf) {
        const auto& s = *rep.surf;
        md << "## Surface singularities\n\n";
        md << s.mld.graphs << " rational trees with at most " << s.mld.max_vertices << " vertices and weights at most "
           << s.mld.max_weight << "; " << s.mld.violations.size() << " violations of mld <= 2/m; "
           << s.mld.not_log_canonical << " not log canonical.\n\n| m | graphs | min mld | max mld | 2/m |\n|---|---|---|---|---|\n";
        for (const auto& [m, range] : s.mld.by_multiplicity)
            md << "| " << m << " | " << range.count << " | " << range.min_mld.str() << " | " << range.max_mld.str()
               << " | " << Rational(2, m).str() << " |\n";
        md << "\nMultiplicity 3 with a (-2)-curve: " << s.m3.note() << ", " << s.m3.violations.size()
           << " above 2/3. Laufer vs brute force: " << s.laufer.graphs << " graphs, "
           << s.laufer.disagreements.size() << " disagreements.\n";
    }
    return md.str();
}

} // namespace fujita::verify
