#pragma once

#include <stdexcept>
#include <string>

namespace cpnsurf {

enum class Errc {
    none = 0,
    invalid_argument,
    parse_error,
    pole_at_base,
    shape_mismatch,
    division_by_singular_jet,
    order_exhausted,
    branch_cut,
    zero_base,
    invalid_dimension,
    null_vector,
    tower_depth_exceeded,
    quadrature_divergence,
    path_through_singularity,
    non_convergent,
    not_anti_hermitian,
    degenerate_metric,
    zero_of_f,
    root_finding_failure,
    clustered_roots,
    seed_at_critical_point,
    step_too_large,
};

const char* errc_name(Errc c);

/// Single exception type carrying a machine-readable error class.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::none: return "None";
        case Errc::invalid_argument: return "InvalidArgument";
        case Errc::parse_error: return "ParseError";
        case Errc::pole_at_base: return "PoleAtBase";
        case Errc::shape_mismatch: return "ShapeMismatch";
        case Errc::division_by_singular_jet: return "DivisionBySingularJet";
        case Errc::order_exhausted: return "OrderExhausted";
        case Errc::branch_cut: return "BranchCut";
        case Errc::zero_base: return "ZeroBase";
        case Errc::invalid_dimension: return "InvalidDimension";
        case Errc::null_vector: return "NullVector";
        case Errc::tower_depth_exceeded: return "TowerDepthExceeded";
        case Errc::quadrature_divergence: return "QuadratureDivergence";
        case Errc::path_through_singularity: return "PathThroughSingularity";
        case Errc::non_convergent: return "NonConvergent";
        case Errc::not_anti_hermitian: return "NotAntiHermitian";
        case Errc::degenerate_metric: return "DegenerateMetric";
        case Errc::zero_of_f: return "ZeroOfF";
        case Errc::root_finding_failure: return "RootFindingFailure";
        case Errc::clustered_roots: return "ClusteredRoots";
        case Errc::seed_at_critical_point: return "SeedAtCriticalPoint";
        case Errc::step_too_large: return "StepTooLarge";
    }
    return "Unknown";
}

}  // namespace cpnsurf
