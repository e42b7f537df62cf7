// Copyright 2026 The Wilks Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WILKS_FORMAT_H_
#define WILKS_FORMAT_H_

#include <span>
#include <string>

namespace wilks {

// Shortest decimal form that reads back to the same double, so emitted
// documents are exact and byte-stable for identical inputs.
std::string FormatExact(double x);
// Fixed-point with `digits` decimals.
std::string FormatFixed(double x, int digits);
// Comma-joined FormatExact values.
std::string JoinExact(std::span<const double> values);

}  // namespace wilks

#endif  // WILKS_FORMAT_H_
