#pragma once

#include <stdexcept>
#include <string>

namespace btexp {

struct Bidegree {
    int hol = 0;
    int anti = 0;
    friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

std::string to_string(const Bidegree& b);

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: JSON schema violations, unparsable symbols, bad flags.
class SchemaError : public Error {
public:
    using Error::Error;
};

// A singular or otherwise inadmissible mathematical input.
class DomainError : public Error {
public:
    using Error::Error;
};

// A coefficient was requested beyond what the operands determine.
class TruncationError : public Error {
public:
    TruncationError(const std::string& where, Bidegree required, Bidegree available);
    Bidegree required() const { return required_; }
    Bidegree available() const { return available_; }

private:
    Bidegree required_;
    Bidegree available_;
};

} // namespace btexp
