#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace p5 {

// f(0)=0, f(1)=1, f(2)=3, f(w) = w^{log2 w} for w >= 3, evaluated as
// 2^{(log2 w)^2}. Exactly 2^{k^2} when w = 2^k.
//
// Every real leaving this module is an outward-rounded enclosure [lo, hi];
// comparisons go through enclosures, so a "holds" verdict is certified, not
// "probably right in binary64".
struct FValue {
    int w = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::string decimal;  // nearest-rounded, precision_digits significant digits
};

struct InequalityReport {
    int w = 0;
    bool holds = false;
    // enclosure of f(w) - (f(w-1) + (w+2) f(floor(w/2)))
    double slack_lo = 0.0;
    double slack_hi = 0.0;
};

struct HypothesesReport {
    int omega_base = 0;
    int w_max = 0;
    bool monotone = false;
    bool recursion_holds = false;        // inequality for all omega_base < w <= w_max
    bool base_case_by_citation = false;  // omega_base == 4: chi <= 3, 5, 15 at omega = 2, 3, 4
    std::vector<int> failed_w;           // inequality failures (expected empty)
    double min_slack = 0.0;              // smallest certified slack seen, lower bound
    int min_slack_w = -1;

    bool pass() const { return monotone && recursion_holds; }
};

class BoundFunction {
public:
    explicit BoundFunction(int omega_base = 4, int precision_digits = 30);

    int omega_base() const { return omega_base_; }
    int precision_digits() const { return precision_digits_; }

    FValue f_value(int w) const;

    // floor(f(w)), with the working precision widened until the floor is
    // unambiguous. The plain form refuses values past 64 bits.
    std::uint64_t color_budget(int w) const;
    std::string color_budget_string(int w) const;

    // pre: w >= 5
    InequalityReport check_recursion_inequality(int w) const;

    // Monotonicity of f on [0, w_max] plus the recursion inequality on
    // (omega_base, w_max]. The omega_base = 4 base cases (chi <= 3, 5, 15)
    // rest on cited theorems, recorded as base_case_by_citation and
    // cross-checked empirically by the experiment harness.
    HypothesesReport check_binding_hypotheses(int omega_base, int w_max) const;

private:
    std::pair<double, double> enclosure(int w) const;  // cached

    int omega_base_;
    int precision_digits_;
    mutable std::mutex cache_mutex_;
    mutable std::map<int, std::pair<double, double>> cache_;
};

}  // namespace p5
