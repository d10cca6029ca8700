// Error taxonomy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace umk {

enum class errc {
  // model construction
  non_monotone_radius,
  degree_one,
  mass_mismatch,
  mass_gap,
  unknown_leaf,
  sigma_out_of_range,
  non_monotone_psi,
  non_decreasing_phi,
  not_non_increasing,
  // queries
  diagonal_query,
  transiency_violation,
  family_mismatch,
  unknown_growth_law,
  // p-adic arithmetic
  prime_mismatch,
  precision_underflow,
  // walks
  sub_stochastic_interior,
  non_absorbing,
  degenerate_green,
  // cli
  config_error,
  model_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_monotone_radius: return "NonMonotoneRadius";
    case errc::degree_one: return "DegreeOne";
    case errc::mass_mismatch: return "MassMismatch";
    case errc::mass_gap: return "MassGap";
    case errc::unknown_leaf: return "UnknownLeaf";
    case errc::sigma_out_of_range: return "SigmaOutOfRange";
    case errc::non_monotone_psi: return "NonMonotonePsi";
    case errc::non_decreasing_phi: return "NonDecreasingPhi";
    case errc::not_non_increasing: return "NotNonIncreasing";
    case errc::diagonal_query: return "DiagonalQuery";
    case errc::transiency_violation: return "TransiencyViolation";
    case errc::family_mismatch: return "FamilyMismatch";
    case errc::unknown_growth_law: return "UnknownGrowthLaw";
    case errc::prime_mismatch: return "PrimeMismatch";
    case errc::precision_underflow: return "PrecisionUnderflow";
    case errc::sub_stochastic_interior: return "SubStochasticInterior";
    case errc::non_absorbing: return "NonAbsorbing";
    case errc::degenerate_green: return "DegenerateGreen";
    case errc::config_error: return "ConfigError";
    case errc::model_error: return "ModelError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace umk
