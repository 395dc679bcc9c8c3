#include "wick/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace wick {

SequenceSchedule SequenceSchedule::power_rule(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument(
            "In wick::SequenceSchedule::power_rule: exponent must lie in (0,1), got " +
            std::to_string(beta));
    SequenceSchedule s;
    s.is_power_ = true;
    s.beta_ = beta;
    return s;
}

SequenceSchedule SequenceSchedule::custom(std::function<double(int)> rule) {
    if (!rule)
        throw std::invalid_argument(
            "In wick::SequenceSchedule::custom: empty rule");
    SequenceSchedule s;
    s.rule_ = std::move(rule);
    return s;
}

double SequenceSchedule::operator()(int n) const {
    if (n < 1)
        throw std::invalid_argument(
            "In wick::SequenceSchedule::operator(): n must be positive, got " +
            std::to_string(n));
    double b = is_power_ ? std::ceil(std::pow(static_cast<double>(n), beta_))
                         : rule_(n);
    if (!(b >= 0.0) || !std::isfinite(b))
        throw std::runtime_error(
            "In wick::SequenceSchedule::operator(): rule produced an invalid "
            "b_n at n = " +
            std::to_string(n));
    return b;
}

double SequenceSchedule::exponent() const {
    if (!is_power_)
        throw std::logic_error(
            "In wick::SequenceSchedule::exponent: not a power rule");
    return beta_;
}

ScheduleCheck check_schedule(const SequenceSchedule& schedule, ScheduleMode mode,
                             const std::vector<int>& n_list) {
    double lower = mode == ScheduleMode::gaussian ? 2.0 / 3.0 : 0.5;
    const char* growth = mode == ScheduleMode::gaussian
                             ? "b_n/n^(2/3) -> infinity"
                             : "b_n/n^(1/2) -> infinity";
    if (schedule.is_power_rule()) {
        double beta = schedule.exponent();
        if (beta <= lower)
            return {false, "schedule exponent " + std::to_string(beta) +
                               " violates " + growth +
                               "; the exponent must exceed " + std::to_string(lower)};
        if (beta >= 1.0)
            return {false, "schedule exponent " + std::to_string(beta) +
                               " violates b_n/n -> 0; the exponent must be below 1"};
        return {true, ""};
    }

    if (n_list.size() < 2)
        return {true, ""};
    constexpr double slack = 1.02;
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
        int n0 = n_list[i], n1 = n_list[i + 1];
        double b0 = schedule(n0), b1 = schedule(n1);
        if (b1 / n1 > slack * b0 / n0)
            return {false, "schedule fails the b_n/n -> 0 trend between n = " +
                               std::to_string(n0) + " and n = " + std::to_string(n1)};
        double g0 = b0 / std::pow(static_cast<double>(n0), lower);
        double g1 = b1 / std::pow(static_cast<double>(n1), lower);
        if (g1 * slack < g0)
            return {false, "schedule fails the " + std::string(growth) +
                               " trend between n = " + std::to_string(n0) +
                               " and n = " + std::to_string(n1)};
    }
    // Flat sequences pass the pairwise slack checks, so both limits also get
    // an end-to-end test over the n list.
    int nf = n_list.front(), nl = n_list.back();
    double bf = schedule(nf), bl = schedule(nl);
    if (bl / nl > 0.98 * bf / nf)
        return {false, "schedule fails b_n/n -> 0 over the n list (ratio " +
                           std::to_string(bf / nf) + " at n = " + std::to_string(nf) +
                           " vs " + std::to_string(bl / nl) + " at n = " +
                           std::to_string(nl) + ")"};
    double gf = bf / std::pow(static_cast<double>(nf), lower);
    double gl = bl / std::pow(static_cast<double>(nl), lower);
    if (!(gl > slack * gf))
        return {false, "schedule fails " + std::string(growth) +
                           " over the n list (ratio " + std::to_string(gf) +
                           " at n = " + std::to_string(nf) + " vs " +
                           std::to_string(gl) + " at n = " + std::to_string(nl) + ")"};
    return {true, ""};
}

} // namespace wick
