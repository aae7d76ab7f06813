// Copyright 2026 The dualverify Authors.
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

#include "dualverify/error.hpp"
#include "dualverify/eval.hpp"
#include "dualverify/fusion.hpp"
#include "dualverify/hash.hpp"
#include "dualverify/ingest.hpp"
#include "dualverify/json_io.hpp"
#include "dualverify/labels.hpp"
#include "dualverify/mock_server.hpp"
#include "dualverify/pipeline.hpp"
#include "dualverify/protocol.hpp"
#include "dualverify/report.hpp"
#include "dualverify/types.hpp"
