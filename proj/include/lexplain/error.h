/*
 * Copyright 2026 The Lexplain Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LEXPLAIN_ERROR_H_
#define LEXPLAIN_ERROR_H_

#include <stdexcept>
#include <string>

namespace lexplain {

// Base class of every error raised by the library. Messages are meant to be
// shown to a user as-is.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or record. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(source),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace lexplain

#endif  // LEXPLAIN_ERROR_H_
