#include "dce/error.hpp"

namespace dce {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Range: return "range";
    case ErrorKind::Validation: return "validation";
  }
  return "unknown";
}

}  // namespace dce
