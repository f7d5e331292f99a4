#pragma once

#include <limits>
#include <string>

#include "cellrate/errors.hpp"

namespace cellrate {

// Which user the base station serves each slot.
struct SchedulerSpec {
    enum class Kind { RoundRobin, Greedy, ProportionalFair, TruncatedGaussian };

    Kind kind = Kind::RoundRobin;
    // Radial spread of the truncated-Gaussian selection density; only
    // meaningful for Kind::TruncatedGaussian (infinity reproduces round-robin).
    double sigma_m = std::numeric_limits<double>::infinity();

    static SchedulerSpec round_robin() { return {Kind::RoundRobin, std::numeric_limits<double>::infinity()}; }
    static SchedulerSpec greedy() { return {Kind::Greedy, 0.0}; }
    static SchedulerSpec proportional_fair() { return {Kind::ProportionalFair, 0.0}; }
    static SchedulerSpec truncated_gaussian(double sigma_m) { return {Kind::TruncatedGaussian, sigma_m}; }

    std::string name() const {
        switch (kind) {
            case Kind::RoundRobin: return "rr";
            case Kind::Greedy: return "greedy";
            case Kind::ProportionalFair: return "pf";
            case Kind::TruncatedGaussian: return "tg";
        }
        throw Error("unreachable scheduler kind");
    }
};

}  // namespace cellrate
