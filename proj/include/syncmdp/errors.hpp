/*
 * Copyright 2026 The syncmdp authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace syncmdp {

/// Malformed input: unknown state/action names, invalid distributions,
/// violated preconditions, unparsable files. CLI exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A configurable resource guard tripped (iteration cap, subset-enumeration
/// state cap, simulation horizon, oracle budget). CLI exit code 3.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Synthesis was requested for an instance the decider rejects. CLI exit code 4.
class NotWinningError : public std::runtime_error {
public:
    explicit NotWinningError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace syncmdp
