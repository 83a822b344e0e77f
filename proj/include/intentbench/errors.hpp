#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace intentbench {

// Error categories map 1:1 onto the CLI exit codes (config=2, data=3,
// provider=4, train=5).
enum class ErrorCategory { config, data, provider, train };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string message)
      : std::runtime_error(std::move(message)), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

// --- dataset ---

class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t record, std::string reason)
      : Error(ErrorCategory::data, "malformed record " + std::to_string(record) +
                                       ": " + reason),
        record_(record) {}
  std::size_t record() const { return record_; }

 private:
  std::size_t record_;
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(std::string label, std::size_t record = 0)
      : Error(ErrorCategory::data,
              record ? "unknown label \"" + label + "\" at record " +
                           std::to_string(record)
                     : "unknown label \"" + label + "\""),
        label_(std::move(label)) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class EmptyText : public Error {
 public:
  explicit EmptyText(std::size_t record = 0)
      : Error(ErrorCategory::data,
              record ? "empty text at record " + std::to_string(record)
                     : "empty text") {}
};

class ClassTooSmall : public Error {
 public:
  explicit ClassTooSmall(std::string message)
      : Error(ErrorCategory::data, std::move(message)) {}
};

class BadMix : public Error {
 public:
  explicit BadMix(std::string message)
      : Error(ErrorCategory::data, std::move(message)) {}
};

// --- embeddings ---

class TooLong : public Error {
 public:
  TooLong(std::size_t actual, std::size_t limit)
      : Error(ErrorCategory::data, "text of " + std::to_string(actual) +
                                       " characters exceeds provider limit of " +
                                       std::to_string(limit)),
        actual_(actual),
        limit_(limit) {}
  std::size_t actual() const { return actual_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t actual_;
  std::size_t limit_;
};

class ProviderUnavailable : public Error {
 public:
  ProviderUnavailable(int status, std::string body_excerpt)
      : Error(ErrorCategory::provider,
              "provider unavailable (status " + std::to_string(status) + "): " +
                  body_excerpt),
        status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class BadResponse : public Error {
 public:
  explicit BadResponse(std::string message)
      : Error(ErrorCategory::provider, std::move(message)) {}
};

// --- shared numeric contracts ---

class DimMismatch : public Error {
 public:
  explicit DimMismatch(std::string message)
      : Error(ErrorCategory::data, std::move(message)) {}
  DimMismatch(std::size_t expected, std::size_t got)
      : Error(ErrorCategory::data, "dimension mismatch: expected " +
                                       std::to_string(expected) + ", got " +
                                       std::to_string(got)) {}
};

class LengthMismatch : public Error {
 public:
  explicit LengthMismatch(std::string message)
      : Error(ErrorCategory::data, std::move(message)) {}
};

// --- classifiers ---

class KTooLarge : public Error {
 public:
  KTooLarge(std::size_t k, std::size_t n)
      : Error(ErrorCategory::train, "k=" + std::to_string(k) +
                                        " exceeds training size " +
                                        std::to_string(n)) {}
};

class SingleClass : public Error {
 public:
  SingleClass() : Error(ErrorCategory::train, "training set has a single class") {}
};

class ZeroCount : public Error {
 public:
  ZeroCount() : Error(ErrorCategory::data, "class count of zero") {}
};

class FoldTooSmall : public Error {
 public:
  explicit FoldTooSmall(std::string message)
      : Error(ErrorCategory::train, std::move(message)) {}
};

class ShapeMismatch : public Error {
 public:
  explicit ShapeMismatch(std::string message)
      : Error(ErrorCategory::train, std::move(message)) {}
};

class NonFiniteLoss : public Error {
 public:
  explicit NonFiniteLoss(std::size_t epoch)
      : Error(ErrorCategory::train,
              "non-finite loss at epoch " + std::to_string(epoch)),
        epoch_(epoch) {}
  std::size_t epoch() const { return epoch_; }

 private:
  std::size_t epoch_;
};

// --- llm router ---

class MissingExamples : public Error {
 public:
  MissingExamples()
      : Error(ErrorCategory::config,
              "augmented prompt variant requires selected examples") {}
};

class UnparseableResponse : public Error {
 public:
  explicit UnparseableResponse(std::string raw)
      : Error(ErrorCategory::provider, "no class verdict found in response"),
        raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

class TransportError : public Error {
 public:
  explicit TransportError(std::string message)
      : Error(ErrorCategory::provider, std::move(message)) {}
};

class ExhaustedRetries : public Error {
 public:
  explicit ExhaustedRetries(std::string last_raw)
      : Error(ErrorCategory::provider,
              "response unparseable after all retries"),
        last_raw_(std::move(last_raw)) {}
  const std::string& last_raw() const { return last_raw_; }

 private:
  std::string last_raw_;
};

// --- eval ---

class DegenerateData : public Error {
 public:
  explicit DegenerateData(std::string message)
      : Error(ErrorCategory::data, std::move(message)) {}
};

}  // namespace intentbench
