#include "aniso/error.hpp"

namespace aniso {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::io: return "io";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::structural: return "structural";
    case ErrorKind::range: return "range";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace aniso
