#pragma once

// Recomputes the decimal constants printed in the multiplicity-2 divisor
// case from their defining formulas and compares them with the printed
// strings character for character (as exact rationals).

#include <string>
#include <vector>

#include "fujita/verifier/ledger.hpp"

namespace fujita::verify {

struct ConstantCheck {
    std::string name;
    std::string formula;  // defining formula
    Rational exact;       // its exact value
    std::string printed;  // decimal as printed
    bool matches = false; // printed == exact
    std::string explanation;
};

/// A threshold on q derived from an equality of two bounds on lambda.
struct CrossingCheck {
    std::string name;
    std::string equation;
    Rational exact;
    std::string claim; // what the printed thresholds assert about it
    bool holds = false;
};

struct ConstantsReport {
    std::vector<ConstantCheck> constants;
    std::vector<CrossingCheck> crossings;
    // The claim affected by the mismatched constant, certified under both readings.
    ClaimResult recomputed_reading, printed_reading;

    std::vector<std::string> mismatches() const {
        std::vector<std::string> out;
        for (const auto& c : constants)
            if (!c.matches) out.push_back(c.printed);
        return out;
    }
    bool passed() const {
        for (const auto& c : crossings)
            if (!c.holds) return false;
        return recomputed_reading.cert.certified() && printed_reading.cert.certified();
    }
};

inline ConstantsReport check_derived_constants(const LedgerOptions& o = {}, std::int64_t budget = 100000) {
    using detail::r;
    const Rational& s = o.sigma;
    const Rational c1 = Rational(3) + r("0.0391") * s;
    const Rational c2 = r("3.9999") + r("0.2884") * s;
    ConstantsReport rep;

    auto check = [&](std::string name, std::string formula, const Rational& exact, std::string printed,
                     std::string explanation = {}) {
        ConstantCheck c{std::move(name), std::move(formula), exact, printed, Rational::parse(printed) == exact,
                        std::move(explanation)};
        rep.constants.push_back(std::move(c));
    };
    check("C1", "3 + 0.0391 sigma", c1, "3.23459609");
    check("C2", "3.9999 + 0.2884 sigma", c2, "5.73027116");
    check("C1 (second printing)", "3 + 0.0391 sigma", c1, "3.2339961",
          "equals 3 + 0.039 sigma = " + (Rational(3) + r("0.039") * s).decimal(8) +
              "; the claim using it is certified under both readings");
    check("C2 (second printing)", "3.9999 + 0.2884 sigma", c2, "5.7278712",
          "equals 3.9999 + 0.288 sigma = " + (r("3.9999") + r("0.288") * s).decimal(8) +
              "; the region claim of that case uses the recomputed line");
    check("C2 - 1", "2.9999 + 0.2884 sigma", c2 - Rational(1), "4.73027116");
    check("1.0391", "1 + 0.0391", Rational(1) + r("0.0391"), "1.0391");
    check("1.2884", "1 + 0.2884", Rational(1) + r("0.2884"), "1.2884");

    // 2/(1.2884 q - C2) = 1/(C2 - 0.2884 q)  <=>  q = 3 C2 / 1.8652.
    // The same q solves 3/q = 2/(1.2884 q - C2) and 3/q = 1/(C2 - 0.2884 q).
    Rational qstar = Rational(3) * c2 / r("1.8652");
    rep.crossings.push_back({"q* (near line)", "2/(1.2884q - C2) = 1/(C2 - 0.2884q) = 3/q", qstar,
                             "9.2 < q* < 9.22", r("9.2") < qstar && qstar < r("9.22")});
    // 2/(1.0391 q - C1) = 3/q  <=>  q = 3 C1 / 1.1173; below 10, so the
    // first branch for q > 10 is never empty.
    Rational q1 = Rational(3) * c1 / r("1.1173");
    rep.crossings.push_back({"q1 (far line)", "2/(1.0391q - C1) = 3/q", q1, "q1 < 10", q1 < Rational(10)});
    // The two lines 3 - 0.0391(q - sigma) and 3.9999 - 0.2884(q - sigma) meet
    // just above 10; using only the far line for q > 10 is conservative.
    Rational qlines = s + r("0.9999") / r("0.2493");
    rep.crossings.push_back({"phi lines", "3 - 0.0391(q - sigma) = 3.9999 - 0.2884(q - sigma)", qlines,
                             "10 < q_lines", Rational(10) < qlines});

    for (const auto& c : build_ledger(o)) {
        if (c.id == "S6.2-L61-case1b-r") rep.recomputed_reading = certify_claim(c, budget);
        if (c.id == "S6.2-L61-case1b-r-printed") rep.printed_reading = certify_claim(c, budget);
    }
    return rep;
}

inline nlohmann::json to_json(const ConstantsReport& rep) {
    nlohmann::json cs = nlohmann::json::array(), xs = nlohmann::json::array();
    for (const auto& c : rep.constants) {
        nlohmann::json j{{"name", c.name},         {"formula", c.formula}, {"exact", c.exact.str()},
                         {"decimal", c.exact.decimal(12)}, {"printed", c.printed}, {"matches", c.matches}};
        if (!c.explanation.empty()) j["explanation"] = c.explanation;
        cs.push_back(j);
    }
    for (const auto& x : rep.crossings)
        xs.push_back({{"name", x.name},
                      {"equation", x.equation},
                      {"exact", x.exact.str()},
                      {"decimal", x.exact.decimal(12)},
                      {"claim", x.claim},
                      {"holds", x.holds}});
    return {{"constants", cs},
            {"crossings", xs},
            {"mismatched_printings", rep.mismatches()},
            {"affected_claim",
             {{"recomputed", {{"id", rep.recomputed_reading.id}, {"certificate", to_json(rep.recomputed_reading.cert)}}},
              {"printed", {{"id", rep.printed_reading.id}, {"certificate", to_json(rep.printed_reading.cert)}}}}},
            {"passed", rep.passed()}};
}

} // namespace fujita::verify
