#pragma once

#include "gstlink/pillowcase.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gstlink {

extern const char* const tool_version;

struct Annotation {
    std::string entry;
    std::string target;  // "full" or a sublink name such as "Q+V_{1,1,+,0,1}"
    std::string signature;
    bool verified = false;
    std::string status;
    std::string verifier_version;
};

struct CatalogEntry {
    std::string id;
    Params params;
    std::vector<VertexRef> starts;
    nlohmann::ordered_json selection;
    std::string pd_text;
    nlohmann::ordered_json pd;
    nlohmann::ordered_json invariants;
    std::vector<Annotation> annotations;
    std::string version, timestamp;
    std::optional<std::string> failure;

    bool certified() const;
};

// "3-2-2-3/1,1,+,0,1" with further starts joined by '+'
std::string entry_id(const Params& P, const std::vector<VertexRef>& starts);

// full pipeline; throws ParamError / std::invalid_argument on bad input
CatalogEntry generate_entry(const Params& P, const std::vector<VertexRef>& starts);
CatalogEntry failure_entry(const Params& P, const std::vector<VertexRef>& starts, const std::string& why);

nlohmann::ordered_json entry_json(const CatalogEntry& e);
CatalogEntry entry_from_json(const nlohmann::ordered_json& j);

// JSON-lines file: entry lines plus annotation lines appended by the bridge
class Catalog {
public:
    explicit Catalog(std::string path) : path_(std::move(path)) {}
    const std::string& path() const { return path_; }
    std::vector<CatalogEntry> load() const;
    std::optional<CatalogEntry> find(const std::string& id) const;
    // false when an entry with the same id already exists
    bool append(const CatalogEntry& e) const;

private:
    std::string path_;
};

// (p,q,c,d) of a sweep family member, nullopt if the member is not a valid tuple
std::optional<Params> family_member(const std::string& family, int n);
bool known_family(const std::string& family);

// lift index sets: every single lift, then every pair
std::vector<std::vector<int>> sweep_variants(const Params& P);

struct SweepStats {
    int generated = 0, duplicates = 0, failures = 0, skipped_members = 0;
};

SweepStats run_sweep(const Catalog& cat, const std::string& family, int from, int to, int jobs, std::ostream& log);

struct MatchGroup {
    std::string signature;
    std::vector<std::pair<std::string, std::string>> members;  // (entry id, target)
    bool cross_parameter = false;
};

struct MatchReport {
    std::vector<MatchGroup> matches;
    int annotated_entries = 0;
    int skipped_entries = 0;
    std::string notice;
};

MatchReport match_catalog(const std::vector<CatalogEntry>& entries);
nlohmann::ordered_json match_json(const MatchReport& r);

}  // namespace gstlink
