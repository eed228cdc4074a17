#pragma once

#include <string>
#include <vector>

namespace perfval {

enum class Verdict { pass, fail, not_applicable };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "not_applicable";
    }
}

/// One verified claim.  lhs/rhs are the two compared quantities rendered
/// as exact rationals or canonical element text; witness carries whatever
/// makes a failure reproducible.
struct CheckReport {
    std::string claim;
    std::string lhs;
    std::string rhs;
    Verdict verdict = Verdict::pass;
    std::string witness;

    bool passed() const { return verdict != Verdict::fail; }
    std::string json() const;
};

inline CheckReport make_report(std::string claim, std::string lhs, std::string rhs, bool ok,
                               std::string witness = "") {
    return CheckReport{std::move(claim), std::move(lhs), std::move(rhs),
                       ok ? Verdict::pass : Verdict::fail, std::move(witness)};
}

inline bool all_passed(const std::vector<CheckReport>& rs) {
    for (const auto& r : rs)
        if (!r.passed()) return false;
    return true;
}

std::string json_escape(const std::string& s);
std::string reports_json(const std::vector<CheckReport>& rs);

}  // namespace perfval
