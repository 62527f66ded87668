#pragma once

#include <stdexcept>
#include <string>

namespace cbc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class AmbientMismatch : public Error {
public:
    AmbientMismatch() : Error("submodules live in different ambient modules") {}
};

class NotSplit : public Error {
public:
    NotSplit() : Error("submodule is not a direct summand") {}
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace cbc
