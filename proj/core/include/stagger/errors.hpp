#pragma once

#include <stdexcept>
#include <string>

namespace stagger {

// Failure categories raised by the numerical pipeline.
enum class ErrorCode {
    InvalidScenario,
    NoConvergence,
    DegenerateAngle,
    EmptyAnnulus,
    NonFiniteSample,
    ZeroArgument,
    OnBranchCut,
    UnitModulusRoot,
    DivisionByZero,
    WindingNonZero,
    VanishingSample,
    RootSelectionAmbiguous,
    PoleOnContour,
    SingularSystem,
    ZqOnContour,
    ResonantIncidence,
    ResidualTooLarge,
    IterationDivergence,
    WindowTooSmall,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace stagger
