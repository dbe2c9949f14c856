#ifndef SPANFORGE_REPORT_HPP
#define SPANFORGE_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spanforge {

enum class IssueKind {
    DanglingReference,
    DuplicateName,
    BadIdentity,
    MissingComposite,
    SpuriousComposite,
    DuplicateComposite,
    BadCompositeEndpoints,
    AssociativityViolation,
    NotAFunctor,
};

const char* issue_kind_name(IssueKind kind);

/// One violated axiom, with the offending pair/triple spelled out in `detail`.
struct ValidationIssue {
    IssueKind kind;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;

    void add(IssueKind kind, std::string detail) {
        ok = false;
        issues.push_back({kind, std::move(detail)});
    }

    std::string to_json_string() const;
    std::string to_text() const;
};

/// A witness or counterexample entry in a CheckReport. Morphisms and objects
/// are rendered by name so reports are self-contained.
struct ReportEntry {
    std::string role;   // e.g. "cospan", "span", "pair"
    std::string detail; // human-readable description with names
};

/// Outcome of a decision procedure: verdict plus the evidence that supports
/// it and the exact search statistics, in deterministic order.
struct CheckReport {
    bool verdict = false;
    std::vector<ReportEntry> witnesses;
    std::optional<ReportEntry> counterexample;
    std::vector<std::pair<std::string, std::uint64_t>> stats;
    bool budget_hit = false;

    void stat(const std::string& key, std::uint64_t value) { stats.emplace_back(key, value); }
    std::uint64_t stat_value(const std::string& key) const;

    void fail(std::string role, std::string detail) {
        verdict = false;
        if (!counterexample) counterexample = ReportEntry{std::move(role), std::move(detail)};
    }

    std::string to_json_string() const;
    std::string to_text() const;
};

} // namespace spanforge

#endif
