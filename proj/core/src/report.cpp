#include "spanforge/report.hpp"

#include <json.hpp>

#include "spanforge/errors.hpp"

namespace spanforge {

using ordered_json = nlohmann::ordered_json;

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotComposable: return "NotComposable";
        case ErrorCode::FeetMismatch: return "FeetMismatch";
        case ErrorCode::NotPaired: return "NotPaired";
        case ErrorCode::NoFPullback: return "NoFPullback";
        case ErrorCode::NotSpanTight: return "NotSpanTight";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::HomSetTooLarge: return "HomSetTooLarge";
        case ErrorCode::ApexExceedsCap: return "ApexExceedsCap";
        case ErrorCode::NotAPartialOrder: return "NotAPartialOrder";
        case ErrorCode::NotAGroup: return "NotAGroup";
        case ErrorCode::NotAFunctor: return "NotAFunctor";
        case ErrorCode::PreconditionFailed: return "PreconditionFailed";
        case ErrorCode::DanglingReference: return "DanglingReference";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

const char* issue_kind_name(IssueKind kind) {
    switch (kind) {
        case IssueKind::DanglingReference: return "DanglingReference";
        case IssueKind::DuplicateName: return "DuplicateName";
        case IssueKind::BadIdentity: return "BadIdentity";
        case IssueKind::MissingComposite: return "MissingComposite";
        case IssueKind::SpuriousComposite: return "SpuriousComposite";
        case IssueKind::DuplicateComposite: return "DuplicateComposite";
        case IssueKind::BadCompositeEndpoints: return "BadCompositeEndpoints";
        case IssueKind::AssociativityViolation: return "AssociativityViolation";
        case IssueKind::NotAFunctor: return "NotAFunctor";
    }
    return "Unknown";
}

std::string ValidationReport::to_json_string() const {
    ordered_json j;
    j["ok"] = ok;
    j["issues"] = ordered_json::array();
    for (const auto& issue : issues) {
        j["issues"].push_back({{"kind", issue_kind_name(issue.kind)}, {"detail", issue.detail}});
    }
    return j.dump(2) + "\n";
}

std::string ValidationReport::to_text() const {
    if (ok) return "valid\n";
    std::string out = "invalid (" + std::to_string(issues.size()) + " issue(s))\n";
    for (const auto& issue : issues) {
        out += std::string("  [") + issue_kind_name(issue.kind) + "] " + issue.detail + "\n";
    }
    return out;
}

std::uint64_t CheckReport::stat_value(const std::string& key) const {
    for (const auto& [k, v] : stats) {
        if (k == key) return v;
    }
    return 0;
}

std::string CheckReport::to_json_string() const {
    ordered_json j;
    j["verdict"] = verdict;
    j["witnesses"] = ordered_json::array();
    for (const auto& w : witnesses) {
        j["witnesses"].push_back({{"role", w.role}, {"detail", w.detail}});
    }
    if (counterexample) {
        j["counterexample"] = {{"role", counterexample->role},
                               {"detail", counterexample->detail}};
    } else {
        j["counterexample"] = nullptr;
    }
    ordered_json s = ordered_json::object();
    for (const auto& [k, v] : stats) s[k] = v;
    j["stats"] = s;
    j["budget_hit"] = budget_hit;
    return j.dump(2) + "\n";
}

std::string CheckReport::to_text() const {
    std::string out = std::string("verdict: ") + (verdict ? "true" : "false") + "\n";
    for (const auto& w : witnesses) {
        out += "  witness [" + w.role + "] " + w.detail + "\n";
    }
    if (counterexample) {
        out += "  counterexample [" + counterexample->role + "] " + counterexample->detail + "\n";
    }
    for (const auto& [k, v] : stats) {
        out += "  " + k + " = " + std::to_string(v) + "\n";
    }
    return out;
}

} // namespace spanforge
