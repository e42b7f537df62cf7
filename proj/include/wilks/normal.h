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

#ifndef WILKS_NORMAL_H_
#define WILKS_NORMAL_H_

namespace wilks {

// Standard normal CDF.
double NormalCdf(double z);
// 1 - Phi(z), accurate in the far upper tail.
double NormalUpperTail(double z);
// Phi^{-1}(p) for p in (0, 1).
double NormalQuantile(double p);

}  // namespace wilks

#endif  // WILKS_NORMAL_H_
