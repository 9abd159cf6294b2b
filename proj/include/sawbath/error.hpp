// Copyright 2026 The sawbath Authors
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

namespace sawbath {

// Error categories double as the CLI exit codes, so keep the numeric values.
enum class ErrorKind : int {
    InvalidArgument = 1,
    Config = 2,
    Numerical = 3,
    Io = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
    throw Error(ErrorKind::InvalidArgument, what);
}

[[noreturn]] inline void throw_numerical(const std::string& what) {
    throw Error(ErrorKind::Numerical, what);
}

}  // namespace sawbath
