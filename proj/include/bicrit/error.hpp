#ifndef BICRIT_ERROR_HPP
#define BICRIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bicrit {

enum class Errc {
  DegenerateMap,
  ZeroScale,
  NotFixedPoint,
  ZeroMultiplier,
  ZeroAlpha,
  ZeroX,
  EvenDegree,
  OddDegree,
  PoleAtMinusOne,
  DegenerateConfiguration,
  IndexOutOfRange,
  ParabolicMultiplier,
  WrongDegree,
  InconsistentMultiplier,
  EqualMultipliers,
  ZeroProduct,
  RootFindFailure,
  NoConvergence,
  NotInParabolicBasin,
  DepthBudget,
  InvalidArgument,
};

inline const char* to_string(Errc e) {
  switch (e) {
    case Errc::DegenerateMap: return "DegenerateMap";
    case Errc::ZeroScale: return "ZeroScale";
    case Errc::NotFixedPoint: return "NotFixedPoint";
    case Errc::ZeroMultiplier: return "ZeroMultiplier";
    case Errc::ZeroAlpha: return "ZeroAlpha";
    case Errc::ZeroX: return "ZeroX";
    case Errc::EvenDegree: return "EvenDegree";
    case Errc::OddDegree: return "OddDegree";
    case Errc::PoleAtMinusOne: return "PoleAtMinusOne";
    case Errc::DegenerateConfiguration: return "DegenerateConfiguration";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ParabolicMultiplier: return "ParabolicMultiplier";
    case Errc::WrongDegree: return "WrongDegree";
    case Errc::InconsistentMultiplier: return "InconsistentMultiplier";
    case Errc::EqualMultipliers: return "EqualMultipliers";
    case Errc::ZeroProduct: return "ZeroProduct";
    case Errc::RootFindFailure: return "RootFindFailure";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NotInParabolicBasin: return "NotInParabolicBasin";
    case Errc::DepthBudget: return "DepthBudget";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Domain error raised by every module; `code()` is stable and machine-readable.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bicrit

#endif  // BICRIT_ERROR_HPP
