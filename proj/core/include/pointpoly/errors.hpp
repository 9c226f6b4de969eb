// Copyright 2026 The pointpoly Authors. All Rights Reserved.
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

#include <stdexcept>
#include <string>

namespace pointpoly {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents (bad PGM header, bad atlas, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Annotation manifest or report that violates the JSON schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class InvalidPolygon : public Error {
 public:
  using Error::Error;
};

class DegenerateRect : public Error {
 public:
  using Error::Error;
};

class PointOutOfBounds : public Error {
 public:
  using Error::Error;
};

class EmptyAnchorList : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class OracleUnregistered : public Error {
 public:
  using Error::Error;
};

class InstanceOutOfCanvas : public Error {
 public:
  using Error::Error;
};

class UnknownCharacter : public Error {
 public:
  using Error::Error;
};

}  // namespace pointpoly
