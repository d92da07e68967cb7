#ifndef PROFMINE_ERROR_HPP
#define PROFMINE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace profmine {

/// Categories of failure raised by the pipeline stages.
enum class ErrorKind {
  Input,         ///< unreadable source
  Validation,    ///< e.g. duplicate record id
  Storage,       ///< persisted file I/O
  EmptyDocument, ///< zero terms after preprocessing
  Dimension,     ///< vector length mismatch or zero-length vectors
  Corpus,        ///< empty or invalid sample corpus
  Parameter,     ///< out-of-range knob such as k > corpus size
  Domain,        ///< value outside an operation's domain
  Encoding,      ///< dataset invariant violated at emission
  Parse,         ///< malformed ARFF / table / corpus text
  Report,        ///< mismatched distributions
  Chart,         ///< undefined chart geometry
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Storage: return "storage error";
    case ErrorKind::EmptyDocument: return "empty-document error";
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::Corpus: return "corpus error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Encoding: return "encoding error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Report: return "report error";
    case ErrorKind::Chart: return "chart error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace profmine

#endif  // PROFMINE_ERROR_HPP
