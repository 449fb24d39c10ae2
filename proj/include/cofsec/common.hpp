#ifndef COFSEC_COMMON_HPP
#define COFSEC_COMMON_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace cofsec {

/// Diagnostic outcome of a constraint check. Never throws; callers inspect
/// the violation list.
struct ValidationResult {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void fail(std::string msg) { violations.push_back(std::move(msg)); }
    std::string joined() const {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += v;
        }
        return out;
    }
};

/// Requested power budget cannot support a constraint-satisfying allocation.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numeric routine could not produce a meaningful result
/// (rank-deficient coefficients, no eligible decode index, ...).
struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cofsec

#endif
