// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed here.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sys/wait.h>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "fujita/bounds/bounds.hpp"
#include "fujita/expr/derivative.hpp"
#include "fujita/verifier/report.hpp"

using namespace fujita;
using namespace fujita::verify;
using namespace fujita::bounds;

namespace {

// Pinned tolerances and limits.
const Rational kSigma = Rational::parse("5.9999");
const Rational kMuWidth(1, 1000000);      // mu enclosure width
const Rational kEtaWidth(1, 1000000);     // eta' enclosure width
constexpr double kMuSeconds = 1.0;        // per mu computation
constexpr double kAlphaSeconds = 1.0;
constexpr double kLedgerSeconds = 300.0;
constexpr double kVolumeSeconds = 60.0;
constexpr double kSurfSeconds = 120.0;
constexpr int kIntervalTrials = 10000;
constexpr int kRootTrials = 1000;
constexpr int kDerivativePoints = 100;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
    std::cout << "CRITERION " << n << ": " << (ok ? "PASS" : "FAIL") << " - " << detail << std::endl;
    if (!ok) ++failures;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s.empty() ? "none" : s;
}

// 1 -------------------------------------------------------------------------
void mu_bounds() {
    struct Row { int w; const char* below; };
    bool ok = true;
    std::ostringstream d;
    for (Row r : {Row{3, "0.0391"}, Row{2, "0.0044"}, Row{1, "0.0002"}}) {
        auto t0 = Clock::now();
        Enclosure mu = mu_min(Rational(r.w), kSigma, 5, Rational(1, 100000000));
        double secs = since(t0);
        bool row = mu.hi() < Rational::parse(r.below) && mu.width() <= kMuWidth && secs < kMuSeconds &&
                   mu_inequality_holds(Rational(r.w), kSigma, 5, mu.hi());
        ok = ok && row;
        d << "mu(" << r.w << ") in [" << mu.lo().decimal(9) << ", " << mu.hi().decimal(9) << "] < " << r.below << " ("
          << secs << " s); ";
    }
    report(1, ok, d.str());
}

// 2 -------------------------------------------------------------------------
void alpha_table() {
    auto t0 = Clock::now();
    bool ok = true;
    std::vector<std::pair<int, int>> want{{2, 2}, {3, 2}, {4, 1}, {5, 1}, {6, 1}};
    std::ostringstream d;
    for (auto [m, a] : want) {
        int got = alpha_de(3, 5, m);
        ok = ok && got == a;
        d << "a35(" << m << ")=" << got << " ";
    }
    for (int m = 2; m <= 6; ++m) ok = ok && alpha_de(2, m + 1, m) == 1;
    double secs = since(t0);
    ok = ok && secs < kAlphaSeconds;
    d << "; a2,m+1(m)=1 for m=2..6: " << (ok ? "yes" : "no") << " (" << secs << " s)";
    report(2, ok, d.str());
}

// 3 -------------------------------------------------------------------------
void ledger_run() {
    auto t0 = Clock::now();
    auto claims = build_ledger();
    RunConfig cfg;
    auto results = certify_all(claims, cfg);
    auto controls = negative_controls();
    auto control_results = certify_all(controls, cfg);
    double secs = since(t0);
    std::set<int> groups;
    std::vector<std::string> failing, controls_bad;
    for (std::size_t i = 0; i < claims.size(); ++i) {
        groups.insert(claims[i].group);
        if (!results[i].cert.certified()) failing.push_back(claims[i].id + "=" + to_string(results[i].cert.verdict));
    }
    for (std::size_t i = 0; i < controls.size(); ++i)
        if (control_results[i].cert.verdict != Verdict::Refuted) controls_bad.push_back(controls[i].id);
    bool ok = claims.size() >= 40 && groups.size() == 9 && failing.empty() && controls.size() >= 3 &&
              controls_bad.empty() && secs < kLedgerSeconds;
    std::ostringstream d;
    d << claims.size() << " claims in " << groups.size() << " groups, " << claims.size() - failing.size()
      << " certified in " << secs << " s; not certified: " << join(failing) << "; negative controls refuted: "
      << controls.size() - controls_bad.size() << "/" << controls.size();
    report(3, ok, d.str());
}

// 4 -------------------------------------------------------------------------
void constants() {
    ConstantsReport rep = check_derived_constants();
    std::map<std::string, bool> m;
    for (const auto& c : rep.constants) m[c.printed] = c.matches;
    bool ok = m.at("3.23459609") && m.at("5.73027116") && !m.at("3.2339961") &&
              rep.recomputed_reading.cert.certified() && rep.printed_reading.cert.certified();
    std::ostringstream d;
    d << "3.23459609 " << (m.at("3.23459609") ? "matches" : "differs") << ", 5.73027116 "
      << (m.at("5.73027116") ? "matches" : "differs") << ", 3.2339961 flagged: " << (!m.at("3.2339961") ? "yes" : "no")
      << "; affected claim " << to_string(rep.recomputed_reading.cert.verdict) << " (recomputed) / "
      << to_string(rep.printed_reading.cert.verdict) << " (printed)";
    report(4, ok, d.str());
}

// 5 -------------------------------------------------------------------------
void volume_chain() {
    auto t0 = Clock::now();
    auto cases = volume::verify_lengthdiv_cases();
    bool lengthdiv = cases.size() == 3;
    bool square = false;
    for (const auto& c : cases) {
        lengthdiv = lengthdiv && c.holds();
        if (!c.hi && c.exact.a) square = c.exact.minimum.sign() == 0; // t >= 4: a perfect square, minimum 0
    }
    bool continuous = true;
    for (const Rational& r : {Rational(1), Rational(89, 100), Rational(7, 3)}) {
        auto bs = volume::h_breakpoints(r);
        continuous = continuous && bs.size() == 3;
        for (const auto& b : bs) continuous = continuous && b.continuous();
    }
    ClaimResult f, g;
    for (const auto& c : build_ledger()) {
        if (c.id == "S6.3-f-below-3") f = certify_claim(c, 100000);
        if (c.id == "S6.3-g-endpoint") g = certify_claim(c, 100000);
    }
    auto eta = volume::eta_prime_detailed(Enclosure(volume::g_s()), Enclosure(Rational(5, 3)), Rational(1, 10000000));
    Enclosure gv = volume::f_eta(eta.eta, Enclosure(Rational(5, 3)), kSigma);
    double secs = since(t0);
    bool narrow = eta.eta.width() <= kEtaWidth;
    bool ok = lengthdiv && square && continuous && f.cert.certified() && g.cert.certified() && narrow &&
              secs < kVolumeSeconds;
    std::ostringstream d;
    d << "lengthdiv regimes exact: " << (lengthdiv ? "yes" : "no") << " (t>=4 square: " << (square ? "yes" : "no")
      << "); h continuous: " << (continuous ? "yes" : "no") << "; f(eta, def) < 3: " << to_string(f.cert.verdict)
      << "; g(5/3) <= 2.98: " << to_string(g.cert.verdict) << ", g(5/3) in [" << gv.lo().decimal(7) << ", "
      << gv.hi().decimal(7) << "], eta' width " << eta.eta.width().decimal(12) << "; " << secs << " s";
    report(5, ok, d.str());
}

// 6 -------------------------------------------------------------------------
void surface_singularities() {
    auto t0 = Clock::now();
    auto mld = surf::verify_mld_theorem(6, 6);
    bool single = true;
    for (int b = 2; b <= 6; ++b) {
        surf::DualGraph g({b}, {});
        single = single && surf::multiplicity(g) == b && surf::mld(g) == Rational(2, b);
    }
    auto laufer = surf::verify_laufer_brute_force(4, 6, 6);
    double secs = since(t0);
    bool ok = mld.graphs > 0 && mld.passed() && single && mld.single_vertex_equality && laufer.passed() &&
              secs < kSurfSeconds;
    std::ostringstream d;
    d << mld.graphs << " rational trees (<= 6 vertices, weights <= 6), " << mld.violations.size()
      << " violations of mld <= 2/m; single -b curve equality b=2..6: " << (single ? "yes" : "no") << "; Laufer = brute force on "
      << laufer.graphs << " graphs with <= 4 vertices: " << (laufer.passed() ? "yes" : "no") << "; " << secs << " s";
    report(6, ok, d.str());
}

// 7 -------------------------------------------------------------------------
Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> den(1, 97);
    long dn = den(rng);
    std::uniform_int_distribution<long> num(-20 * dn, 20 * dn);
    return {num(rng), dn};
}

void kernel_properties() {
    std::mt19937_64 rng(987654321);
    long interval_violations = 0;
    std::uniform_int_distribution<long> step(0, 1000);
    auto member = [&](const Enclosure& e) { return e.lo() + e.width() * Rational(step(rng), 1000); };
    for (int i = 0; i < kIntervalTrials; ++i) {
        Rational a1 = random_rational(rng), a2 = random_rational(rng), b1 = random_rational(rng), b2 = random_rational(rng);
        Enclosure A(min(a1, a2), max(a1, a2)), B(min(b1, b2), max(b1, b2));
        Rational a = member(A), b = member(B);
        interval_violations += !(A + B).contains(a + b);
        interval_violations += !(A - B).contains(a - b);
        interval_violations += !(A * B).contains(a * b);
        interval_violations += !pow(A, i % 5).contains(pow(a, i % 5));
        if (!B.contains_zero()) interval_violations += !(A / B).contains(a / b);
    }

    long root_violations = 0;
    std::uniform_int_distribution<long> num(0, 100000), den(1, 1000), deg(2, 6);
    for (int i = 0; i < kRootTrials; ++i) {
        Rational x(num(rng), den(rng));
        long n = deg(rng);
        Enclosure e = nth_root(x, static_cast<unsigned long>(n), Rational(1, 1000000));
        root_violations += !(pow(e.lo(), n) <= x && x <= pow(e.hi(), n));
    }

    // Central differences at two exact step sizes: error must shrink by ~4.
    long derivative_failures = 0;
    Expr x = var("x"), y = var("y");
    std::vector<Expr> es{x * x * x * y - y / (x + 2), (x + 1) * (x + 1) / (y * y + 1), kSigma * x / (kSigma - 5 + x)};
    std::uniform_int_distribution<int> coord(1, 99);
    for (int i = 0; i < kDerivativePoints; ++i) {
        const Expr& e = es[static_cast<std::size_t>(i) % es.size()];
        std::map<std::string, Rational> p{{"x", Rational(50 + coord(rng), 100)}, {"y", Rational(50 + coord(rng), 100)}};
        Rational exact = eval_at(derivative(e, "x"), p).lo();
        auto fd = [&](const Rational& h) {
            auto a = p, b = p;
            a["x"] += h;
            b["x"] -= h;
            return (eval_at(e, a).lo() - eval_at(e, b).lo()) / (Rational(2) * h);
        };
        Rational e1 = abs(fd(Rational(1, 1000)) - exact), e2 = abs(fd(Rational(1, 2000)) - exact);
        bool quadratic = e1.sign() == 0 ? e2.sign() == 0 : (e2 * 3 <= e1 && e1 <= e2 * 5);
        derivative_failures += !quadratic;
    }
    bool ok = interval_violations == 0 && root_violations == 0 && derivative_failures == 0;
    std::ostringstream d;
    d << kIntervalTrials << " interval trials: " << interval_violations << " violations; " << kRootTrials
      << " nth_root inputs: " << root_violations << " violations; " << kDerivativePoints
      << " derivative points: " << derivative_failures << " without quadratic shrinkage";
    report(7, ok, d.str());
}

// 8 -------------------------------------------------------------------------
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void determinism() {
    std::string dir = std::filesystem::temp_directory_path().string();
    std::string a = dir + "/fujicert_acceptance_a.json", b = dir + "/fujicert_acceptance_b.json";
    auto cmd = [&](const std::string& out) {
        return std::string(FUJICERT_PATH) + " verify all --quiet --json " + out + " --md " + out + ".md 2>/dev/null";
    };
    int r1 = std::system(cmd(a).c_str()), r2 = std::system(cmd(b).c_str());
    std::string ja = slurp(a), jb = slurp(b);
    bool ok = !ja.empty() && ja == jb;
    std::ostringstream d;
    d << "two verify-all runs, " << ja.size() << " and " << jb.size() << " bytes, identical: " << (ja == jb ? "yes" : "no")
      << " (exit codes " << WEXITSTATUS(r1) << ", " << WEXITSTATUS(r2) << ")";
    report(8, ok, d.str());
}

} // namespace

int main() {
    mu_bounds();
    alpha_table();
    ledger_run();
    constants();
    volume_chain();
    surface_singularities();
    kernel_properties();
    determinism();
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
    return failures == 0 ? 0 : 1;
}
