// Copyright 2026 The Formality Spectrum Authors.
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

#ifndef FORMALITY_ERROR_H_
#define FORMALITY_ERROR_H_

#include <stdexcept>
#include <string>

namespace formality {

// Root of every error the toolkit throws. The three direct subclasses map
// onto the CLI exit codes (1 usage, 2 data, 3 gateway).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

// Missing or malformed lexicon resources.
class LexiconError : public DataError {
 public:
  using DataError::DataError;
};

// A statistic whose value is mathematically undefined for the given input
// (formality score of a punctuation-only sentence, kappa with a single
// category, ...). Never silently mapped to a number.
class UndefinedStatistic : public DataError {
 public:
  using DataError::DataError;
};

class GatewayError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

// Network failure or 5xx after every attempt was used.
class TransportError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

// 4xx from the service; never retried.
class ClientError : public GatewayError {
 public:
  ClientError(int status, const std::string& what)
      : GatewayError(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class JudgeError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

class RewriteError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

}  // namespace formality

#endif  // FORMALITY_ERROR_H_
