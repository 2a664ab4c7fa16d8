#pragma once

// A numeric inequality of the main argument, stated over a parameter region,
// and its certification.

#include <functional>
#include <string>

#include <json.hpp>

#include "fujita/expr/certify.hpp"
#include "fujita/expr/serialize.hpp"

namespace fujita::verify {

struct Claim {
    std::string id;
    int group = 0;         // which part of the case analysis (1..9)
    std::string title;     // one line: the case and what is bounded
    Expr expr;
    Box box;
    Rational threshold;
    bool strict = true;
    Sense sense = Sense::Upper; // Upper: sup expr < threshold; Lower: inf expr > threshold
    std::string anchor;         // the displayed inequality this claim transcribes
    std::string note;
    Verdict expected = Verdict::Certified;

    // Claims about quantities that are not a single expression over a box
    // (g(def) needs eta'(def) recomputed per subbox) supply their own engine;
    // `expr` then only documents the formula.
    std::function<Certificate(const CertifyOptions&)> engine;

    std::string relation() const {
        if (sense == Sense::Upper) return strict ? "<" : "<=";
        return strict ? ">" : ">=";
    }
};

struct ClaimResult {
    std::string id;
    Certificate cert;
    std::int64_t budget = 0; // budget of the run that produced `cert`
    bool escalated = false;  // first run was Inconclusive and was retried at 10x budget

    bool as_expected(Verdict expected) const { return cert.verdict == expected; }
};

namespace detail {

inline Certificate run_once(const Claim& c, const CertifyOptions& opts) {
    try {
        if (c.engine) return c.engine(opts);
        return certify(c.expr, c.box, c.sense, c.threshold, c.strict, opts);
    } catch (const std::exception& ex) {
        Certificate cert;
        cert.verdict = Verdict::Inconclusive;
        cert.message = std::string("evaluation error: ") + ex.what();
        return cert;
    }
}

} // namespace detail

/// Certify one claim. An Inconclusive first run is retried once with ten
/// times the budget before it is reported.
inline ClaimResult certify_claim(const Claim& c, std::int64_t budget, const EvalOptions& eval = {}) {
    CertifyOptions opts;
    opts.budget = budget;
    opts.eval = eval;
    ClaimResult r{c.id, detail::run_once(c, opts), budget, false};
    if (r.cert.verdict == Verdict::Inconclusive) {
        opts.budget = budget * 10;
        r.cert = detail::run_once(c, opts);
        r.budget = opts.budget;
        r.escalated = true;
    }
    return r;
}

inline std::optional<Verdict> verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::Certified, Verdict::Refuted, Verdict::Inconclusive})
        if (s == to_string(v)) return v;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json rational_json(const Rational& r) { return {{"exact", r.str()}, {"decimal", r.decimal(12)}}; }

inline nlohmann::json to_json(const Certificate& c) {
    nlohmann::json j{{"verdict", to_string(c.verdict)}, {"leaves", c.leaves}, {"vacuous", c.vacuous}};
    if (c.upper) j["upper"] = rational_json(*c.upper);
    if (c.lower) j["lower"] = rational_json(*c.lower);
    if (!c.witness.empty()) {
        nlohmann::json w = nlohmann::json::object();
        for (const auto& [k, v] : c.witness) w[k] = v.str();
        j["witness"] = w;
    }
    if (c.open_box) {
        nlohmann::json b = nlohmann::json::object();
        for (const auto& [k, v] : *c.open_box) b[k] = v.str();
        j["open_box"] = b;
    }
    if (!c.message.empty()) j["message"] = c.message;
    return j;
}

/// The claim statement; round-trips through claim_from_json except for
/// custom engines.
inline nlohmann::json to_json(const Claim& c) {
    return {{"id", c.id},
            {"group", c.group},
            {"title", c.title},
            {"expr", fujita::to_json(c.expr)},
            {"formula", c.expr.str()},
            {"box", fujita::to_json(c.box)},
            {"relation", c.relation()},
            {"sense", to_string(c.sense)},
            {"strict", c.strict},
            {"threshold", c.threshold.str()},
            {"anchor", c.anchor},
            {"note", c.note},
            {"expected", to_string(c.expected)},
            {"custom_engine", static_cast<bool>(c.engine)}};
}

inline Claim claim_from_json(const nlohmann::json& j) {
    Claim c;
    c.id = j.at("id").get<std::string>();
    c.group = j.value("group", 0);
    c.title = j.value("title", std::string());
    c.expr = expr_from_json(j.at("expr"));
    c.box = j.contains("box") ? box_from_json(j.at("box")) : Box();
    c.threshold = Rational::parse(j.at("threshold").get<std::string>());
    c.strict = j.value("strict", true);
    std::string sense = j.value("sense", std::string("upper"));
    if (sense != "upper" && sense != "lower") throw DomainError("claim sense must be upper or lower, got " + sense);
    c.sense = sense == "upper" ? Sense::Upper : Sense::Lower;
    c.anchor = j.value("anchor", std::string());
    c.note = j.value("note", std::string());
    if (j.contains("expected")) {
        auto v = verdict_from_string(j.at("expected").get<std::string>());
        if (!v) throw DomainError("unknown expected verdict " + j.at("expected").dump());
        c.expected = *v;
    }
    if (j.value("custom_engine", false))
        throw DomainError("claim " + c.id + " needs a built-in engine and cannot be loaded from a file");
    return c;
}

} // namespace fujita::verify
