#include "stagger/errors.hpp"

namespace stagger {

const char* error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidScenario: return "InvalidScenario";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::DegenerateAngle: return "DegenerateAngle";
        case ErrorCode::EmptyAnnulus: return "EmptyAnnulus";
        case ErrorCode::NonFiniteSample: return "NonFiniteSample";
        case ErrorCode::ZeroArgument: return "ZeroArgument";
        case ErrorCode::OnBranchCut: return "OnBranchCut";
        case ErrorCode::UnitModulusRoot: return "UnitModulusRoot";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::WindingNonZero: return "WindingNonZero";
        case ErrorCode::VanishingSample: return "VanishingSample";
        case ErrorCode::RootSelectionAmbiguous: return "RootSelectionAmbiguous";
        case ErrorCode::PoleOnContour: return "PoleOnContour";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::ZqOnContour: return "ZqOnContour";
        case ErrorCode::ResonantIncidence: return "ResonantIncidence";
        case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
        case ErrorCode::IterationDivergence: return "IterationDivergence";
        case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

}  // namespace stagger
