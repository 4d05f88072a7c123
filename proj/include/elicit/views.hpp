// Copyright 2026 The elicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "elicit/engine.hpp"
#include "elicit/scenario.hpp"
#include "json.hpp"

namespace elicit {

// JSON shapes shared by the HTTP service and the C API.

nlohmann::ordered_json to_json(const ValidationReport& report);
nlohmann::ordered_json to_json(const Prompt& prompt);

// Phase-dependent snapshot: "prompt" in INTERVIEW, "feedback" in FEEDBACK,
// "summary" in SUMMARY/ENDED. Never carries mistake annotations of options
// the trainee has not been evaluated on.
nlohmann::ordered_json state_json(const Session& session);

}  // namespace elicit
