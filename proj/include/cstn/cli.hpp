/*
 * Copyright 2026 The cstn-dc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>

namespace cstn {

/// Exit codes: 0 positive/valid/verified, 1 negative, 2 input error, 3 capacity or overflow, 4 internal.
int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace cstn
