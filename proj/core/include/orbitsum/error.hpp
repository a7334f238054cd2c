#pragma once

#include <stdexcept>
#include <string>

namespace orbitsum {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments or inconsistent input data.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A mathematical function was evaluated outside its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// A working buffer could not be allocated (the modulus is too large for this machine).
class ResourceError : public Error {
public:
    using Error::Error;
};

// Cache file I/O or format failure.
class StoreError : public Error {
public:
    using Error::Error;
};

} // namespace orbitsum
