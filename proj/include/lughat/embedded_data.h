// Copyright 2026 The Lughat Authors
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

#ifndef LUGHAT_EMBEDDED_DATA_H_
#define LUGHAT_EMBEDDED_DATA_H_

#include <string_view>

namespace lughat::embedded {

// Contents of data/sindhi.repertoire at build time.
std::string_view repertoire_text();
// Contents of data/keyboard.json at build time.
std::string_view keyboard_text();

}  // namespace lughat::embedded

#endif  // LUGHAT_EMBEDDED_DATA_H_
