// Copyright 2026 The dualverify Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <utility>

namespace dualverify {

// Base of every error raised by the library. Loaders attach the offending
// input line after the fact with set_line() and rethrow the same object.
class Error : public std::exception {
 public:
  explicit Error(std::string message) : message_(std::move(message)) {
    rebuild();
  }

  const char* what() const noexcept override { return what_.c_str(); }
  const std::string& message() const noexcept { return message_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

  void set_line(std::size_t line) {
    line_ = line;
    rebuild();
  }

 private:
  void rebuild() {
    what_ = line_ ? "line " + std::to_string(*line_) + ": " + message_
                  : message_;
  }

  std::string message_;
  std::optional<std::size_t> line_;
  std::string what_;
};

// Invariant violations on domain values.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class InvalidBox : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TokenMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownClass : public ValidationError {
 public:
  explicit UnknownClass(std::string value)
      : ValidationError("unknown manipulation class string '" + value + "'"),
        value_(std::move(value)) {}
  const std::string& value() const noexcept { return value_; }

 private:
  std::string value_;
};

// Malformed input: bad JSON, wrong field types, labels outside closed sets.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Backend failures. None of these is ever mapped to an NEI verdict.
class BackendError : public Error {
 public:
  using Error::Error;
  virtual const char* kind() const noexcept = 0;
};

class TimeoutError : public BackendError {
 public:
  using BackendError::BackendError;
  const char* kind() const noexcept override { return "timeout"; }
};

class ProtocolError : public BackendError {
 public:
  using BackendError::BackendError;
  const char* kind() const noexcept override { return "protocol_error"; }
};

class BackendUnavailable : public BackendError {
 public:
  using BackendError::BackendError;
  const char* kind() const noexcept override { return "backend_unavailable"; }
};

class BindError : public Error {
 public:
  using Error::Error;
};

class MissingManipulation : public Error {
 public:
  using Error::Error;
};

class EmptySet : public Error {
 public:
  EmptySet() : Error("empty record set") {}
};

class MissingGold : public Error {
 public:
  explicit MissingGold(std::string post_id)
      : Error("no gold label for post '" + post_id + "'"),
        post_id_(std::move(post_id)) {}
  const std::string& post_id() const noexcept { return post_id_; }

 private:
  std::string post_id_;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

}  // namespace dualverify
