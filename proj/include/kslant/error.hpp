#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kslant {

enum class ErrorCode {
    OutOfDomain,
    OrderUnavailable,
    NonFiniteSample,
    IrregularCurve,
    InflectionPoint,
    NotSpherical,
    NotUnitSpeed,
    DegenerateLevel,
    DepthLimit,
    BadParams,
    RangeExceeded,
    ResonantParameters,
};

std::string_view to_string(ErrorCode code);

struct Error : std::runtime_error {
    Error(ErrorCode c, const std::string& what)
        : std::runtime_error(std::string(to_string(c)) + ": " + what), code(c) {}
    ErrorCode code;
};

}  // namespace kslant
