#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace georeport {

// Base of every error the library throws.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An input value is outside its documented domain. `field` names the offending
// member with a dotted/bracketed path ("rmr_input.rqd_pct", "readings").
class ValidationError : public Error {
  public:
    ValidationError(std::string field, const std::string &what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

class InsufficientDataError : public Error {
  public:
    using Error::Error;
};

class EmptyInputError : public Error {
  public:
    using Error::Error;
};

// A prompt slot was not supplied, or the wrong number of images was attached.
class MissingSlotError : public Error {
  public:
    explicit MissingSlotError(std::string slot)
        : Error("missing prompt slot: " + slot), slot_(std::move(slot)) {}
    const std::string &slot() const noexcept { return slot_; }

  private:
    std::string slot_;
};

class ImageAttachmentError : public Error {
  public:
    using Error::Error;
};

class SequencingError : public Error {
  public:
    using Error::Error;
};

// Upstream output (stage-1 text, image, RMR input...) required by a section is absent.
class DependencyError : public Error {
  public:
    using Error::Error;
};

class AssemblyError : public Error {
  public:
    explicit AssemblyError(std::vector<std::string> gaps)
        : Error(describe(gaps)), gaps_(std::move(gaps)) {}
    const std::vector<std::string> &gaps() const noexcept { return gaps_; }

  private:
    static std::string describe(const std::vector<std::string> &gaps) {
        std::string out = "report is missing mandatory sections:";
        for (const auto &g : gaps) out += " " + g;
        return out;
    }
    std::vector<std::string> gaps_;
};

// Generated text could not be shaped into the section's structure
// (e.g. conclusions not numbered 4 to 6 items).
class FormatError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(std::string path, const std::string &what)
        : Error(path + ": " + what), path_(std::move(path)) {}
    const std::string &path() const noexcept { return path_; }

  private:
    std::string path_;
};

class SchemaError : public Error {
  public:
    explicit SchemaError(std::string column)
        : Error("missing column: " + column), column_(std::move(column)) {}
    const std::string &column() const noexcept { return column_; }

  private:
    std::string column_;
};

class IntegrityError : public Error {
  public:
    using Error::Error;
};

class NotFoundError : public Error {
  public:
    using Error::Error;
};

} // namespace georeport
