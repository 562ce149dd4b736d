#include "kslant/error.hpp"

namespace kslant {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::OrderUnavailable: return "OrderUnavailable";
        case ErrorCode::NonFiniteSample: return "NonFiniteSample";
        case ErrorCode::IrregularCurve: return "IrregularCurve";
        case ErrorCode::InflectionPoint: return "InflectionPoint";
        case ErrorCode::NotSpherical: return "NotSpherical";
        case ErrorCode::NotUnitSpeed: return "NotUnitSpeed";
        case ErrorCode::DegenerateLevel: return "DegenerateLevel";
        case ErrorCode::DepthLimit: return "DepthLimit";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::RangeExceeded: return "RangeExceeded";
        case ErrorCode::ResonantParameters: return "ResonantParameters";
    }
    return "Unknown";
}

}  // namespace kslant
