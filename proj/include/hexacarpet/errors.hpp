#pragma once

#include <stdexcept>
#include <string>

namespace hexacarpet {

// Requested computation exceeds a documented level/size cap. The CLI maps
// this to its resource exit code.
struct ResourceLimitError : std::runtime_error {
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Stored payload does not match its checksum or declared shape.
struct ChecksumError : std::runtime_error {
  explicit ChecksumError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hexacarpet
