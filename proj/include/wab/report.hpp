#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "wab/scalar.hpp"

namespace wab {

/// One nonzero residual located by a window check.
struct ResidualEntry {
    std::string relation;        // "LL", "LW", "WW", "iso", "jacobi", ...
    std::vector<long> indices;   // generator/basis indices, relation-specific
    std::string at;              // basis label or extra locator, may be empty
    Scalar residual;
};

/// Outcome of a symbolic window check: passed iff no residuals. Skipped
/// assertions (window truncation clipped an intermediate term) are counted,
/// never failed.
struct VerificationReport {
    bool passed = true;
    int window_k = 0;
    int window_m = 0;
    long checks = 0;
    long skips = 0;
    std::vector<ResidualEntry> residuals;

    void add_residual(ResidualEntry e) {
        passed = false;
        residuals.push_back(std::move(e));
    }

    void merge(const VerificationReport& o) {
        passed = passed && o.passed;
        checks += o.checks;
        skips += o.skips;
        residuals.insert(residuals.end(), o.residuals.begin(), o.residuals.end());
    }

    /// Deterministic serial form: residuals ordered by (relation, indices, at).
    nlohmann::json to_json() const {
        auto sorted = residuals;
        std::sort(sorted.begin(), sorted.end(), [](const ResidualEntry& x, const ResidualEntry& y) {
            if (x.relation != y.relation) return x.relation < y.relation;
            if (x.indices != y.indices) return x.indices < y.indices;
            return x.at < y.at;
        });
        nlohmann::json rs = nlohmann::json::array();
        for (auto& r : sorted) {
            rs.push_back({{"relation", r.relation},
                          {"indices", r.indices},
                          {"at", r.at},
                          {"residual", r.residual.text()}});
        }
        return {{"passed", passed},
                {"window", {window_k, window_m}},
                {"checks", checks},
                {"skips", skips},
                {"residuals", rs}};
    }
};

}  // namespace wab
