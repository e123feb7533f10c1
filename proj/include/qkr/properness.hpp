#pragma once

// Properness and freeness of the action generated by a family representative.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qkr/family.hpp"

namespace qkr {

enum class Verdict { proper_free, proper_iff_commensurable, not_proper };
std::string to_string(Verdict v);

struct RatioReconstruction {
    double value = 0.0;  // params[i] / params[0] for the first nonzero parameter
    std::optional<mpq_class> ratio;
    double error = 0.0;
};

struct ProperReport {
    Verdict verdict = Verdict::proper_free;
    bool proper = true;
    bool exact = false;  // verdict decided in exact arithmetic
    // IV_4 only
    bool commensurable = false;
    std::optional<bool> irregular_points;          // set when proper
    std::optional<std::vector<mpz_class>> integer_rates;  // gcd 1, when proper and nonzero
    std::vector<RatioReconstruction> reconstruction;     // float parameters only
};

constexpr long kRatioMaxDen = 1000000;
constexpr double kRatioRelTol = 1e-9;

ProperReport is_proper_free(const FamilyLabel& fl);

}  // namespace qkr
