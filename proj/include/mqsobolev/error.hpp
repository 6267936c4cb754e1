// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace mqs {

enum class Errc {
  invalid_argument = 1,
  unsupported_dimension,
  size_mismatch,
  empty_set,
  precondition,
  io,
  resource,
};

/// Base exception for everything the toolkit throws. The code maps one to
/// one onto the status values of the C API.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace mqs
