#pragma once

#include <stdexcept>
#include <string>

namespace vcglearn {

// Malformed data handed to the library: bad indices, non-finite numbers,
// values outside their documented range, unparseable documents.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// API called in a state where the call is not allowed (e.g. recording a
// reward for a bidding agent, pricing an explore round).
class UsageError : public std::logic_error {
 public:
  explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

// A stated hypothesis of the operation does not hold (e.g. querying a
// confidence interval before any sample exists, or T <= 2K in a bound).
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

// The market instance itself is unusable (e.g. no explore schedule of the
// declared length covers every agent/allocation pair).
class InstanceError : public std::invalid_argument {
 public:
  explicit InstanceError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace vcglearn
