// Copyright 2026 The qotoc Authors
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


#pragma once

#include <qotoc/core.hpp>
#include <qotoc/pauli.hpp>
#include <qotoc/gates.hpp>
#include <qotoc/measurement.hpp>
#include <qotoc/synthesis.hpp>
#include <qotoc/dynamics.hpp>
#include <qotoc/random.hpp>
#include <qotoc/protocols.hpp>
#include <qotoc/oracle.hpp>
#include <qotoc/experiment.hpp>
#include <qotoc/verify.hpp>
