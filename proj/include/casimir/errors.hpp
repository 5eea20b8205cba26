#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Anything that makes the configuration physically unusable.
class PhysicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InadmissibleConfig : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class ZeroCrossing : public PhysicsError {
public:
    ZeroCrossing(const std::string& what, double z) : PhysicsError(what), location(z) {}
    double location;
};

class ZeroModeError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class DegenerateWall : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

class OutOfStrip : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ConvergenceFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MissingZetaData : public std::invalid_argument {
public:
    MissingZetaData(const std::string& what, int i) : std::invalid_argument(what), index(i) {}
    int index;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line_no) : std::runtime_error(what), line(line_no) {}
    int line;
};

class OrderingError : public std::runtime_error {
public:
    OrderingError(const std::string& what, int line_no) : std::runtime_error(what), line(line_no) {}
    int line;
};

}  // namespace casimir
