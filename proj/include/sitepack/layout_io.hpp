// Copyright 2026 The sitepack Authors
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

#ifndef SITEPACK_LAYOUT_IO_HPP_
#define SITEPACK_LAYOUT_IO_HPP_

#include <string>
#include <string_view>

#include "sitepack/core.hpp"

namespace sitepack {

// Placed (and optionally routed) layout as JSON. Output is canonical: equal
// layouts serialize to equal bytes.
std::string layout_to_json(const Layout& layout);
// Throws ConfigError on malformed or inconsistent input.
Layout layout_from_json(std::string_view text, std::string_view source = "<layout>");

}  // namespace sitepack

#endif  // SITEPACK_LAYOUT_IO_HPP_
