// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace reprokit {

// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A path referenced by a bundle or command does not exist.
struct MissingFile : Error {
    explicit MissingFile(const std::string& p): Error("missing file: " + p), path(p) {}
    std::string path;
};

// A manifest or annotation field is absent or has the wrong shape.
struct SchemaViolation : Error {
    explicit SchemaViolation(const std::string& f, const std::string& detail = ""):
        Error("schema violation in field '" + f + "'" + (detail.empty() ? "" : ": " + detail)),
        field(f) {}
    std::string field;
};

// Insertion sentinel absent, duplicated, or out of order.
struct MarkerError : Error {
    using Error::Error;
};

// Subject-language source failed to parse. Line is 1-based, col 0-based.
struct ParseError : Error {
    ParseError(const std::string& what, int line_, int col_):
        Error(what + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
        line(line_), col(col_) {}
    int line;
    int col;
};

// Annotated source contains no reasoning markers.
struct MissingAnnotations : Error {
    using Error::Error;
};

struct EmptyInput : Error {
    using Error::Error;
};

// The bundle's reference implementation is itself defective.
struct InvalidReference : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct NotFound : Error {
    using Error::Error;
};

// A path lookup tried to leave the indexed root.
struct PathEscape : Error {
    using Error::Error;
};

// The harness itself cannot run (missing interpreter, bad scratch dir);
// distinct from any candidate failure.
struct EnvironmentError : Error {
    using Error::Error;
};

struct MatcherUnavailable : Error {
    using Error::Error;
};

struct MalformedMatcherOutput : Error {
    using Error::Error;
};

struct LlmError : Error {
    using Error::Error;
};

// Retryable LLM failure (timeouts, 5xx); llm_complete retries these.
struct LlmTransient : LlmError {
    using LlmError::LlmError;
};

struct AuthError : Error {
    using Error::Error;
};

struct MalformedStep : Error {
    using Error::Error;
};

struct BackendUnavailable : Error {
    using Error::Error;
};

} // namespace reprokit
