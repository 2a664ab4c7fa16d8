#pragma once

// Coverage of the hand-transcribed display manifest by the ledger, and the
// grouped claim listing generated from it.

#include <fstream>
#include <set>
#include <sstream>

#include "fujita/verifier/ledger.hpp"

namespace fujita::verify {

struct CoverageReport {
    long displays = 0;
    std::vector<std::string> missing;      // manifest displays with no claim of that id
    std::vector<std::string> misfiled;     // claim exists but in another group
    std::vector<std::string> untracked;    // ledger claims the manifest does not list
    std::vector<std::string> no_anchor;    // ledger claims with an empty anchor
    std::vector<std::string> duplicate_ids;
    bool passed() const {
        return displays > 0 && missing.empty() && misfiled.empty() && untracked.empty() && no_anchor.empty() &&
               duplicate_ids.empty();
    }
};

inline nlohmann::json load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open manifest " + path);
    return nlohmann::json::parse(in);
}

inline CoverageReport check_coverage(const nlohmann::json& manifest, const std::vector<Claim>& ledger) {
    CoverageReport rep;
    std::map<std::string, int> group_of;
    for (const auto& c : ledger) {
        if (!group_of.emplace(c.id, c.group).second) rep.duplicate_ids.push_back(c.id);
        if (c.anchor.empty()) rep.no_anchor.push_back(c.id);
    }
    std::set<std::string> listed;
    for (const auto& g : manifest.at("groups")) {
        int group = g.at("group").get<int>();
        for (const auto& d : g.at("displays")) {
            ++rep.displays;
            auto id = d.at("claim").get<std::string>();
            listed.insert(id);
            auto it = group_of.find(id);
            if (it == group_of.end())
                rep.missing.push_back(id + ": " + d.at("display").get<std::string>());
            else if (it->second != group)
                rep.misfiled.push_back(id);
        }
    }
    if (manifest.contains("count") && manifest.at("count").get<long>() != rep.displays)
        rep.missing.push_back("manifest count " + manifest.at("count").dump() + " disagrees with its " +
                              std::to_string(rep.displays) + " entries");
    for (const auto& c : ledger)
        if (!listed.count(c.id)) rep.untracked.push_back(c.id);
    return rep;
}

inline nlohmann::json to_json(const CoverageReport& r) {
    return {{"displays", r.displays},       {"missing", r.missing},     {"misfiled", r.misfiled},
            {"untracked", r.untracked},     {"no_anchor", r.no_anchor}, {"duplicate_ids", r.duplicate_ids},
            {"passed", r.passed()}};
}

/// Markdown listing of the ledger by group, titles from the manifest.
inline std::string ledger_markdown(const nlohmann::json& manifest, const std::vector<Claim>& ledger) {
    std::map<int, std::string> titles;
    for (const auto& g : manifest.at("groups")) titles[g.at("group").get<int>()] = g.at("title").get<std::string>();
    std::ostringstream md;
    md << "# Claim ledger\n\n" << ledger.size() << " claims.\n";
    int group = -1;
    for (const auto& c : ledger) {
        if (c.group != group) {
            group = c.group;
            md << "\n## " << group << ". " << titles[group] << "\n\n| id | display | checked expression | region | relation |\n|---|---|---|---|---|\n";
        }
        md << "| `" << c.id << "` | " << c.anchor << " | `" << c.expr.str() << "` | " << (c.box.vars().empty() ? std::string("-") : c.box.str()) << " | " << c.relation() << " "
           << c.threshold.str() << (c.expected != Verdict::Certified ? std::string(" (expected ") + to_string(c.expected) + ")" : "")
           << " |\n";
    }
    return md.str();
}

} // namespace fujita::verify
