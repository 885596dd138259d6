#pragma once

#include <stdexcept>
#include <string>

namespace mcwave {

// Every failure raised by the library derives from Error so callers can
// catch one type at scenario boundaries.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidLength : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class AllocationError : public Error {
public:
    using Error::Error;
};

class EqualizationSingular : public Error {
public:
    using Error::Error;
};

class FrameTooShort : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class ManifestError : public Error {
public:
    using Error::Error;
};

class ScenarioError : public Error {
public:
    using Error::Error;
};

} // namespace mcwave
