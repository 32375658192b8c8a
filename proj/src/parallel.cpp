/*
   Copyright 2026 The ellorth Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ellorth/parallel.hpp"

namespace ellorth {

namespace {
std::atomic<int> configured_jobs{0};
}

int default_jobs() {
    const int j = configured_jobs.load();
    if (j > 0) return j;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void set_default_jobs(int jobs) { configured_jobs.store(jobs > 0 ? jobs : 0); }

}  // namespace ellorth
