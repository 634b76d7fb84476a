#include "hsi/error.hpp"

namespace hsi {

std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::SingularLog: return "SingularLog";
        case Errc::UnknownGenerator: return "UnknownGenerator";
        case Errc::InvalidGenus: return "InvalidGenus";
        case Errc::UnsupportedCurve: return "UnsupportedCurve";
        case Errc::InvalidPoint: return "InvalidPoint";
        case Errc::MomentNotZero: return "MomentNotZero";
        case Errc::OnComplementCMinus: return "OnComplementCMinus";
        case Errc::ZeroSection: return "ZeroSection";
        case Errc::NoSolution: return "NoSolution";
        case Errc::InvalidProfile: return "InvalidProfile";
        case Errc::UnsupportedShape: return "UnsupportedShape";
        case Errc::GenusMismatch: return "GenusMismatch";
        case Errc::NotComposable: return "NotComposable";
        case Errc::PatternMismatch: return "PatternMismatch";
        case Errc::UnsupportedFamily: return "UnsupportedFamily";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::AdditivityFails: return "AdditivityFails";
        case Errc::NotATree: return "NotATree";
        case Errc::Overflow: return "Overflow";
        case Errc::Schema: return "Schema";
    }
    return "Unknown";
}

}  // namespace hsi
