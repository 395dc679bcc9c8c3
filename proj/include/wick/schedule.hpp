#pragma once

#include <functional>
#include <string>
#include <vector>

namespace wick {

// Mollifier-size sequence b_n for the convergence experiments.  The Gaussian
// experiment needs b_n/n -> 0 and b_n/n^{2/3} -> +infinity; the Poisson one
// b_n/n -> 0 and b_n/sqrt(n) -> +infinity.  A power rule b_n = ceil(n^beta)
// satisfies the former for beta in (2/3, 1) and the latter for beta in
// (1/2, 1).
class SequenceSchedule {
public:
    static SequenceSchedule power_rule(double beta);
    static SequenceSchedule custom(std::function<double(int)> rule);

    double operator()(int n) const;
    bool is_power_rule() const { return is_power_; }
    double exponent() const; // power rules only

private:
    SequenceSchedule() = default;
    bool is_power_ = false;
    double beta_ = 0.0;
    std::function<double(int)> rule_;
};

enum class ScheduleMode { gaussian, poisson };

struct ScheduleCheck {
    bool ok;
    std::string message; // empty when ok
};

// Power rules are judged by their exponent range.  Custom rules are judged
// on the finite n list: b_n/n must trend down and b_n/n^{2/3} (resp.
// b_n/sqrt(n)) must trend up, each with 2% slack for integer rounding
// wobble; the default power rule itself violates strict monotonicity at
// small n, which is why exponent-range validation takes precedence.
ScheduleCheck check_schedule(const SequenceSchedule& schedule, ScheduleMode mode,
                             const std::vector<int>& n_list);

} // namespace wick
