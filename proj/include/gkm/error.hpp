#ifndef GKM_ERROR_HPP
#define GKM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace gkm {

// Every failure raised by the toolkit carries a short machine-readable kind
// (e.g. "NoCandidate", "InconsistentHolonomy") and a witness describing the
// offending vertices/edges.
class Error : public std::runtime_error {
public:
  Error(std::string kind, std::string witness)
      : std::runtime_error(kind + ": " + witness), kind_(std::move(kind)),
        witness_(std::move(witness)) {}

  const std::string &kind() const { return kind_; }
  const std::string &witness() const { return witness_; }

private:
  std::string kind_;
  std::string witness_;
};

class ParseError : public Error {
public:
  explicit ParseError(std::string what) : Error("ParseError", std::move(what)) {}
};

} // namespace gkm

#endif
