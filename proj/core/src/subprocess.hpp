/*
 * Copyright 2026 the motune authors
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

// POSIX child-process runner with a hard deadline. Internal, not installed.

#ifndef MOTUNE_SRC_SUBPROCESS_HPP
#define MOTUNE_SRC_SUBPROCESS_HPP

#include <string>
#include <utility>
#include <vector>

namespace motune::detail {

struct CommandOutcome {
    int exit_code = -1;
    bool timed_out = false;
    bool spawn_failed = false;
    std::string stdout_data;
    std::string error;

    bool ok() const { return !timed_out && !spawn_failed && exit_code == 0; }
};

/// Runs argv with `input` on its stdin and captures stdout. The child is
/// SIGKILLed once timeout_s elapses; the call never blocks much past the
/// deadline. extra_env entries are added to the child environment.
CommandOutcome run_command(const std::vector<std::string>& argv, const std::string& input,
                           double timeout_s,
                           const std::vector<std::pair<std::string, std::string>>& extra_env);

/// Whitespace tokenizer with single/double quote support, for turning a
/// command-line string into argv.
std::vector<std::string> split_command_line(const std::string& command);

} // namespace motune::detail

#endif
