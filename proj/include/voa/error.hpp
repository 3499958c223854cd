#pragma once

#include <stdexcept>
#include <string>

namespace voa {

enum class Errc {
    DivisionByZero,
    ZeroPolynomial,
    PoleAtPoint,
    NonHomogeneous,
    ZeroField,
    NonIntegralProduct,
    UnknownGenerator,
    MissingEntry,
    ChargeMismatch,
    ExcludedLevel,
    CutoffTooSmall,
    InvalidPresentation,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::ZeroPolynomial: return "ZeroPolynomial";
        case Errc::PoleAtPoint: return "PoleAtPoint";
        case Errc::NonHomogeneous: return "NonHomogeneous";
        case Errc::ZeroField: return "ZeroField";
        case Errc::NonIntegralProduct: return "NonIntegralProduct";
        case Errc::UnknownGenerator: return "UnknownGenerator";
        case Errc::MissingEntry: return "MissingEntry";
        case Errc::ChargeMismatch: return "ChargeMismatch";
        case Errc::ExcludedLevel: return "ExcludedLevel";
        case Errc::CutoffTooSmall: return "CutoffTooSmall";
        case Errc::InvalidPresentation: return "InvalidPresentation";
    }
    return "?";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace voa
