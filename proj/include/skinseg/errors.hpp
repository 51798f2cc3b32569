#pragma once

#include <stdexcept>
#include <string>

namespace skinseg {

// Base class for all library errors. Subclasses map 1:1 onto the CLI
// exit-code classes (see cli.hpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value fell outside its declared domain (channel, address, ...).
class OutOfRange : public Error {
public:
    using Error::Error;
};

// Frame/window geometry is invalid (even window, window larger than frame,
// majority threshold out of range, non-positive dimensions).
class BadGeometry : public Error {
public:
    using Error::Error;
};

// Two rasters that must agree in size do not.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Camera register file does not select a supported pixel format, or an
// input file is in a format this tool does not handle.
class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

// A camera byte stream lost pixel phase (an href-high run of odd length).
class PhaseError : public Error {
public:
    using Error::Error;
};

// A camera byte stream produced lines/frames of the wrong shape.
class FrameGeometryError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Behavioral and cycle-accurate outputs disagree.
class MismatchError : public Error {
public:
    using Error::Error;
};

// Bad flags, bad config file, conflicting options.
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace skinseg
