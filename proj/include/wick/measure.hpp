#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace wick {

// Reference measures for the two chaos calculi: the standard Gaussian law on
// the real line and the Poisson law of intensity a on the nonnegative
// integers.  The degree-j basis weight w_j is j! respectively a^j j!.
enum class MeasureKind { gaussian, poisson };

class Measure {
public:
    static Measure gaussian() { return Measure(MeasureKind::gaussian, 0.0); }

    static Measure poisson(double a) {
        if (!(a > 0.0))
            throw std::invalid_argument(
                "In wick::Measure::poisson: intensity must be positive, got " +
                std::to_string(a));
        return Measure(MeasureKind::poisson, a);
    }

    MeasureKind kind() const { return kind_; }
    bool is_gaussian() const { return kind_ == MeasureKind::gaussian; }
    bool is_poisson() const { return kind_ == MeasureKind::poisson; }

    double intensity() const {
        if (!is_poisson())
            throw std::logic_error(
                "In wick::Measure::intensity: Gaussian measure has no intensity");
        return a_;
    }

    // log w_j; finite for every j, unlike w_j itself.
    double log_weight(int j) const {
        double lw = std::lgamma(static_cast<double>(j) + 1.0);
        if (is_poisson()) lw += j * std::log(a_);
        return lw;
    }

    // w_j = j! or a^j j!.  Overflows double near j = 170; callers working at
    // high degree must stay in log scale.
    double weight(int j) const { return std::exp(log_weight(j)); }

    bool operator==(const Measure& o) const {
        return kind_ == o.kind_ && (is_gaussian() || a_ == o.a_);
    }
    bool operator!=(const Measure& o) const { return !(*this == o); }

private:
    Measure(MeasureKind k, double a) : kind_(k), a_(a) {}
    MeasureKind kind_;
    double a_;
};

} // namespace wick
