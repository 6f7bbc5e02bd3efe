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

#include <ostream>
#include <string>
#include <vector>

namespace syncmdp {

/// Exit codes of the command line interface.
///   0  decided / produced the requested artifact
///   2  input error (bad file, bad flag, malformed data)
///   3  resource cap exceeded
///   4  the instance is not winning in the requested mode (synthesize only)
///   1  internal error (invariant violation; indicates a bug)
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitNotWinning = 4;

/// Runs the command line interface on `args` (program name excluded).
/// Regular output goes to `out`, diagnostics to `err`; nothing but the
/// requested artifact is ever written on exit code 0, and no artifact is
/// written on a nonzero exit.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace syncmdp
