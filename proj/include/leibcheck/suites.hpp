#pragma once

#include "leibcheck/description.hpp"
#include "leibcheck/transfer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace leibcheck {

struct SuiteConfig {
    int max_arity = 5;
    unsigned long long seed = 1;
    std::vector<std::string> suites; // empty or "all" selects everything
    int mutation_trials = 24;
};

enum class CheckStatus { pass, fail, skip, inconclusive };

struct SuiteCheck {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string witness;
};

struct SuiteResult {
    std::string name;
    std::vector<SuiteCheck> checks;
    bool failed() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::fail) return true;
        return false;
    }
};

struct RunResult {
    std::vector<SuiteResult> suites;

    int failures() const;
    /// 0 when every selected check passed, 1 otherwise.
    int exit_code() const { return failures() == 0 ? 0 : 1; }
    /// Human-readable report, one line per check.
    std::string text_report() const;
    /// Machine-readable report; byte-identical for identical inputs and seed.
    std::string json_report(const SuiteConfig& config, const std::string& input) const;
};

/// Names of the available suites, in execution order.
const std::vector<std::string>& suite_names();

/// Runs the selected verification suites against a loaded session.
RunResult run_suites(const Session& session, const SuiteConfig& config);

/// The B tables of the session's transfer data (requires morphism + element).
BTables compute_b_tables(const Session& session, int max_arity);

} // namespace leibcheck
