#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hsi {

enum class Errc {
    SingularLog,
    UnknownGenerator,
    InvalidGenus,
    UnsupportedCurve,
    InvalidPoint,
    MomentNotZero,
    OnComplementCMinus,
    ZeroSection,
    NoSolution,
    InvalidProfile,
    UnsupportedShape,
    GenusMismatch,
    NotComposable,
    PatternMismatch,
    UnsupportedFamily,
    InvalidParams,
    AdditivityFails,
    NotATree,
    Overflow,
    Schema,
};

std::string_view errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace hsi
