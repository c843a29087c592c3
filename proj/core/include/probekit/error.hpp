#pragma once

#include <stdexcept>
#include <string>

namespace probekit {

enum class Errc {
  DegenerateDirection,
  NotPrimitive,
  NotDelzant,
  DegeneratePolygon,
  OutOfRange,
  NotInward,
  InvalidProbe,
  NodeOnBoundary,
  CutCornerMissing,
  MutationBreaksConvexity,
  InvalidSlide,
  TradeBlocked,
  SolveFailed,
  NeedsWindow,
  ParseError,
  InvalidArgument,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DegenerateDirection: return "DegenerateDirection";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::NotDelzant: return "NotDelzant";
    case Errc::DegeneratePolygon: return "DegeneratePolygon";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::NotInward: return "NotInward";
    case Errc::InvalidProbe: return "InvalidProbe";
    case Errc::NodeOnBoundary: return "NodeOnBoundary";
    case Errc::CutCornerMissing: return "CutCornerMissing";
    case Errc::MutationBreaksConvexity: return "MutationBreaksConvexity";
    case Errc::InvalidSlide: return "InvalidSlide";
    case Errc::TradeBlocked: return "TradeBlocked";
    case Errc::SolveFailed: return "SolveFailed";
    case Errc::NeedsWindow: return "NeedsWindow";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace probekit
