// Copyright 2026 The mathemb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace mathemb {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MATHEMB_DEFINE_ERROR(Name)       \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

// math-tokenizer
MATHEMB_DEFINE_ERROR(MalformedMarkup);
MATHEMB_DEFINE_ERROR(EmptyInput);

// corpus-pipeline
MATHEMB_DEFINE_ERROR(MalformedDocument);
MATHEMB_DEFINE_ERROR(EmptyVocabulary);
MATHEMB_DEFINE_ERROR(DomainError);
MATHEMB_DEFINE_ERROR(DegenerateDistribution);

// embedding-trainer
MATHEMB_DEFINE_ERROR(DegenerateVocabulary);
MATHEMB_DEFINE_ERROR(IoFailure);
MATHEMB_DEFINE_ERROR(FormatError);
MATHEMB_DEFINE_ERROR(TrainingDiverged);

// semantic-query
MATHEMB_DEFINE_ERROR(ZeroVector);
MATHEMB_DEFINE_ERROR(IdentifierNotFound);
MATHEMB_DEFINE_ERROR(UnknownParagraph);

// projection
MATHEMB_DEFINE_ERROR(DegenerateData);
MATHEMB_DEFINE_ERROR(PerplexityTooLarge);
MATHEMB_DEFINE_ERROR(NonFiniteInput);

#undef MATHEMB_DEFINE_ERROR

/// Raised when a query names a token that is not in the model. `token()`
/// holds the token in corpus-file notation.
class UnknownToken : public Error {
 public:
  explicit UnknownToken(std::string token)
      : Error("unknown token: " + token), token_(std::move(token)) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

}  // namespace mathemb
