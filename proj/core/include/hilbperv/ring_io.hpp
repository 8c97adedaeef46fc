#pragma once

#include <string>
#include <string_view>

#include "hilbperv/errors.hpp"

#include "hilbperv/report.hpp"
#include "hilbperv/surface_ring.hpp"

namespace hilbperv {

/// Ring document that parsed but failed validation; carries the report.
class RingValidationError : public DataError {
 public:
  RingValidationError(const std::string& what, CheckReport report) : DataError(what), report_(std::move(report)) {}
  const CheckReport& report() const noexcept { return report_; }

 private:
  CheckReport report_;
};

/// Parses a ring document without validating it.
/// Throws ParseError on syntax errors and ModeError when the pairing/diag2 data does not match the mode.
SurfaceRing parse_ring_document(std::string_view document);

/// Parses and validates; throws RingValidationError when any structural check fails.
SurfaceRing load_ring(std::string_view document);
/// Reads a file and calls load_ring.
SurfaceRing load_ring_file(const std::string& path);

/// Serializes a ring in the document format accepted by load_ring.
std::string save_ring(const SurfaceRing& ring);

}  // namespace hilbperv
