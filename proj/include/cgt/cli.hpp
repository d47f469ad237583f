// Copyright 2026 The cgt Authors
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

#ifndef CGT_CLI_HPP_
#define CGT_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace cgt {

// Exit codes: 0 ok, 1 validation error, 2 enumeration limit exceeded,
// 3 IO/parse error, 4 concept/model mismatch, 5 zero-probability evidence.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// "%.6f" with negative zero normalized away.
std::string fmt6(double x);

}  // namespace cgt

#endif  // CGT_CLI_HPP_
