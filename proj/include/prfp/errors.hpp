#pragma once

#include <stdexcept>
#include <string>

namespace prfp {

// Malformed device, design, plan or parameter text. line() is 1-based; 0
// means the problem concerns the file as a whole.
class ParseError : public std::runtime_error
{
  public:
    ParseError(int line, const std::string &msg)
            : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line)
    {
    }
    int line() const { return line_; }

  private:
    int line_;
};

// The design cannot be floorplanned on the given fabric.
class InfeasibleError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace prfp
