#ifndef MOMENTKIT_ERRORS_HPP
#define MOMENTKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace momentkit {

// Error kinds, split into input/validation failures (CLI exit code 2) and
// numerical failures such as conditioning aborts (CLI exit code 3).
enum class errc {
  // validation
  empty_input,
  nonpositive_mass,
  unknown_family,
  odd_shift_on_hamburger,
  too_short,
  not_stieltjes,
  coincident_points,
  lower_half_plane_point,
  degenerate_sequence,
  zero_denominator,
  krein_corner_undefined,
  pole_hit,
  not_exists,
  unsupported_shape,
  coincident_nodes,
  invalid_density,
  schema_error,
  // numerical
  non_real_result,
  convergence_failure,
  cross_check_failure,
  non_herglotz_output,
  nonpositive_radicand,
};

inline const char* errc_name(errc e) {
  switch (e) {
    case errc::empty_input: return "EmptyInput";
    case errc::nonpositive_mass: return "NonpositiveMass";
    case errc::unknown_family: return "UnknownFamily";
    case errc::odd_shift_on_hamburger: return "OddShiftOnHamburger";
    case errc::too_short: return "TooShort";
    case errc::not_stieltjes: return "NotStieltjes";
    case errc::coincident_points: return "CoincidentPoints";
    case errc::lower_half_plane_point: return "LowerHalfPlanePoint";
    case errc::degenerate_sequence: return "DegenerateSequence";
    case errc::zero_denominator: return "ZeroDenominator";
    case errc::krein_corner_undefined: return "KreinCornerUndefined";
    case errc::pole_hit: return "PoleHit";
    case errc::not_exists: return "NotExists";
    case errc::unsupported_shape: return "UnsupportedShape";
    case errc::coincident_nodes: return "CoincidentNodes";
    case errc::invalid_density: return "InvalidDensity";
    case errc::schema_error: return "SchemaError";
    case errc::non_real_result: return "NonRealResult";
    case errc::convergence_failure: return "ConvergenceFailure";
    case errc::cross_check_failure: return "CrossCheckFailure";
    case errc::non_herglotz_output: return "NonHerglotzOutput";
    case errc::nonpositive_radicand: return "NonpositiveRadicand";
  }
  return "Unknown";
}

inline bool is_numerical(errc e) {
  switch (e) {
    case errc::non_real_result:
    case errc::convergence_failure:
    case errc::cross_check_failure:
    case errc::non_herglotz_output:
    case errc::nonpositive_radicand:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace momentkit

#endif  // MOMENTKIT_ERRORS_HPP
