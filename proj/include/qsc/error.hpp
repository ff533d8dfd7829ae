#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsc {

// Invariant-violation codes surfaced to callers and to the CLI (exit code 1).
enum class ErrorCode {
    duplicate_id,
    dangling_side_ref,
    side_glued_twice,
    not_valid_complex,
    side_not_free,
    degree_violation,
    one_sided_component,
    boundary_point_in_closed_curve,
    rank_collision,
    invalid_curve,
    not_a_crossing,
    path_curve_mismatch,
    non_orientable_integer_target,
    inconsistent_target,
    complex_mismatch,
    points_on_side,
    single_side_boundary,
    host_not_on_face,
    not_same_face,
    already_crossing,
    bad_config,
    arc_not_in_positive_chamber,
    parse_error,
};

inline std::string_view error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::duplicate_id: return "DUPLICATE_ID";
        case ErrorCode::dangling_side_ref: return "DANGLING_SIDE_REF";
        case ErrorCode::side_glued_twice: return "SIDE_GLUED_TWICE";
        case ErrorCode::not_valid_complex: return "NOT_VALID_COMPLEX";
        case ErrorCode::side_not_free: return "SIDE_NOT_FREE";
        case ErrorCode::degree_violation: return "DEGREE_VIOLATION";
        case ErrorCode::one_sided_component: return "ONE_SIDED_COMPONENT";
        case ErrorCode::boundary_point_in_closed_curve: return "BOUNDARY_POINT_IN_CLOSED_CURVE";
        case ErrorCode::rank_collision: return "RANK_COLLISION";
        case ErrorCode::invalid_curve: return "INVALID_CURVE";
        case ErrorCode::not_a_crossing: return "NOT_A_CROSSING";
        case ErrorCode::path_curve_mismatch: return "PATH_CURVE_MISMATCH";
        case ErrorCode::non_orientable_integer_target: return "NON_ORIENTABLE_INTEGER_TARGET";
        case ErrorCode::inconsistent_target: return "INCONSISTENT_TARGET";
        case ErrorCode::complex_mismatch: return "COMPLEX_MISMATCH";
        case ErrorCode::points_on_side: return "POINTS_ON_SIDE";
        case ErrorCode::single_side_boundary: return "SINGLE_SIDE_BOUNDARY";
        case ErrorCode::host_not_on_face: return "HOST_NOT_ON_FACE";
        case ErrorCode::not_same_face: return "NOT_SAME_FACE";
        case ErrorCode::already_crossing: return "ALREADY_CROSSING";
        case ErrorCode::bad_config: return "BAD_CONFIG";
        case ErrorCode::arc_not_in_positive_chamber: return "ARC_NOT_IN_POSITIVE_CHAMBER";
        case ErrorCode::parse_error: return "PARSE_ERROR";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

} // namespace qsc
