// Copyright 2026 The pairguide Authors
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

#pragma once

#include <cstdint>

namespace pairguide {

// Virtual time, in milliseconds since the start of a simulation.
using TimeMs = std::uint64_t;
using DurationMs = std::uint64_t;

using ClipId = std::uint16_t;
using DeviceId = std::uint32_t;
using GroupId = std::uint32_t;
using Seq = std::uint32_t;

}  // namespace pairguide
