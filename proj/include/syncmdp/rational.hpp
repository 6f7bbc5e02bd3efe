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

#include <gmpxx.h>

#include <string>

namespace syncmdp {

/// Exact rational number. GMP keeps the value canonical (reduced, positive
/// denominator); all comparisons are exact. Never use floating point for
/// probability mass anywhere in this library.
using Rational = mpq_class;

/// Parse "num/den" or a bare integer "num". Throws InputError on malformed
/// input, zero denominators, or negative values where `require_nonnegative`.
Rational parse_fraction(const std::string& text, bool require_nonnegative = true);

/// Canonical "num/den" rendering; the denominator is always explicit ("1/1").
std::string fraction_string(const Rational& value);

} // namespace syncmdp
