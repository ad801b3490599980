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

#include "league_ledger/alias.hpp"
#include "league_ledger/compare.hpp"
#include "league_ledger/correlation.hpp"
#include "league_ledger/country.hpp"
#include "league_ledger/csv.hpp"
#include "league_ledger/errors.hpp"
#include "league_ledger/ingest.hpp"
#include "league_ledger/model.hpp"
#include "league_ledger/report.hpp"
#include "league_ledger/scoring.hpp"
#include "league_ledger/version.hpp"
