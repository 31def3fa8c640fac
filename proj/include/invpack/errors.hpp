#pragma once

#include <stdexcept>

namespace invpack {

/// Malformed input text: collection, permutation, or cube edge files.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An exhaustive routine was asked to run above its configured size cap.
class LimitExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace invpack
