// Copyright 2026 The revgeo Authors
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

#ifndef REVGEO_TOOLS_CLI_HPP_
#define REVGEO_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace revgeo::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kSpecError = 2;
inline constexpr int kDomainError = 3;

// Runs the tool with args (without the program name). Primary data goes to
// `out` unless --out is given; diagnostics and summaries go to `err`, or to
// `out` when the data went to a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revgeo::cli

#endif  // REVGEO_TOOLS_CLI_HPP_
