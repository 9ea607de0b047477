#pragma once

#include <stdexcept>
#include <string>

namespace balanced {

// Malformed input: bad indices, disconnected graphs, unparsable files.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A proven guarantee failed to hold. Seeing one of these means a bug.
class GuaranteeViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace balanced
