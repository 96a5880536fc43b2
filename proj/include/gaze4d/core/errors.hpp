#pragma once

#include <stdexcept>
#include <string>

namespace gaze4d {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Geometric preconditions: point behind camera, log near angle pi, ...
class GeometryError : public Error {
public:
  using Error::Error;
};

/// Gaze sample outside the image, texel outside the ID grid.
class InvalidSampleError : public Error {
public:
  using Error::Error;
};

/// No valid pixel overlap between live frame and keyframe.
class InsufficientOverlapError : public Error {
public:
  using Error::Error;
};

/// Optimization diverged or the scene carries no usable information.
class TrackingLostError : public Error {
public:
  using Error::Error;
};

/// Degenerate point configuration (collinear/coincident correspondences).
class RankError : public Error {
public:
  using Error::Error;
};

/// Trajectory association produced no pairs.
class NoOverlapError : public Error {
public:
  using Error::Error;
};

/// Malformed or non-monotonic input stream record.
class StreamError : public Error {
public:
  using Error::Error;
};

/// Bad configuration file or out-of-range parameter.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// File parse failure (OBJ, PNG, TUM, CSV, JSONL).
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace gaze4d
