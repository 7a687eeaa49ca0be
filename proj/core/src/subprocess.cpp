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

#include "subprocess.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <mutex>
#include <stdexcept>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace motune::detail {

namespace {

void kill_group(pid_t pid) {
    if (::kill(-pid, SIGKILL) != 0) {
        ::kill(pid, SIGKILL);
    }
}

void ignore_sigpipe_once() {
    static std::once_flag flag;
    std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

std::vector<std::string> split_command_line(const std::string& command) {
    std::vector<std::string> argv;
    std::string token;
    bool in_token = false;
    char quote = '\0';
    for (char c : command) {
        if (quote != '\0') {
            if (c == quote) {
                quote = '\0';
            } else {
                token.push_back(c);
            }
            continue;
        }
        if (c == '\'' || c == '"') {
            quote = c;
            in_token = true;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\n') {
            if (in_token) {
                argv.push_back(std::move(token));
                token.clear();
                in_token = false;
            }
            continue;
        }
        token.push_back(c);
        in_token = true;
    }
    if (quote != '\0') {
        throw std::invalid_argument("command line: unterminated quote");
    }
    if (in_token) {
        argv.push_back(std::move(token));
    }
    return argv;
}

CommandOutcome run_command(const std::vector<std::string>& argv, const std::string& input,
                           double timeout_s,
                           const std::vector<std::pair<std::string, std::string>>& extra_env) {
    CommandOutcome outcome;
    if (argv.empty()) {
        outcome.spawn_failed = true;
        outcome.error = "empty argv";
        return outcome;
    }
    ignore_sigpipe_once();

    int in_pipe[2];  // parent writes -> child stdin
    int out_pipe[2]; // child stdout -> parent reads
    if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0) {
        outcome.spawn_failed = true;
        outcome.error = std::string("pipe: ") + std::strerror(errno);
        return outcome;
    }

    const pid_t pid = ::fork();
    if (pid < 0) {
        outcome.spawn_failed = true;
        outcome.error = std::string("fork: ") + std::strerror(errno);
        for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) {
            ::close(fd);
        }
        return outcome;
    }
    if (pid == 0) {
        ::setpgid(0, 0); // own process group, so a timeout kill reaps grandchildren too
        ::dup2(in_pipe[0], STDIN_FILENO);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) {
            ::close(fd);
        }
        for (const auto& [key, value] : extra_env) {
            ::setenv(key.c_str(), value.c_str(), 1);
        }
        std::vector<char*> args;
        args.reserve(argv.size() + 1);
        for (const std::string& a : argv) {
            args.push_back(const_cast<char*>(a.c_str()));
        }
        args.push_back(nullptr);
        ::execvp(args[0], args.data());
        ::_exit(127);
    }

    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    ::setpgid(pid, pid); // mirror the child's call; whoever runs first wins

    const auto start = std::chrono::steady_clock::now();

    // Requests are one short line; a single write is expected to succeed.
    // EPIPE just means the child exited without reading, which the exit
    // status will report.
    std::size_t written = 0;
    while (written < input.size()) {
        const ssize_t n = ::write(in_pipe[1], input.data() + written, input.size() - written);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            break;
        }
        written += static_cast<std::size_t>(n);
    }
    ::close(in_pipe[1]);

    char buffer[4096];
    bool killed = false;
    while (true) {
        const double remaining = timeout_s - seconds_since(start);
        if (remaining <= 0.0) {
            kill_group(pid);
            killed = true;
            break;
        }
        struct pollfd pfd{out_pipe[0], POLLIN, 0};
        const int timeout_ms = static_cast<int>(remaining * 1000.0) + 1;
        const int rc = ::poll(&pfd, 1, timeout_ms);
        if (rc < 0) {
            if (errno == EINTR) {
                continue;
            }
            outcome.error = std::string("poll: ") + std::strerror(errno);
            kill_group(pid);
            killed = true;
            break;
        }
        if (rc == 0) {
            continue; // re-check the deadline
        }
        const ssize_t n = ::read(out_pipe[0], buffer, sizeof(buffer));
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            outcome.error = std::string("read: ") + std::strerror(errno);
            kill_group(pid);
            killed = true;
            break;
        }
        if (n == 0) {
            break; // EOF: child closed stdout
        }
        outcome.stdout_data.append(buffer, static_cast<std::size_t>(n));
    }
    ::close(out_pipe[0]);

    // Reap with the same deadline: a child that closed stdout but keeps
    // running must not stall the caller.
    int status = 0;
    if (killed) {
        ::waitpid(pid, &status, 0); // SIGKILLed, reaps promptly
    } else {
        while (true) {
            const pid_t r = ::waitpid(pid, &status, WNOHANG);
            if (r == pid || (r < 0 && errno != EINTR)) {
                break;
            }
            if (seconds_since(start) > timeout_s) {
                kill_group(pid);
                killed = true;
                if (outcome.error.empty()) {
                    outcome.error = "timed out waiting for exit";
                }
                ::waitpid(pid, &status, 0);
                break;
            }
            ::usleep(1000);
        }
    }
    outcome.timed_out = killed;
    if (killed) {
        if (outcome.error.empty()) {
            outcome.error = "timed out after " + std::to_string(timeout_s) + "s";
        }
        outcome.exit_code = -1;
        return outcome;
    }
    if (WIFEXITED(status)) {
        outcome.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        outcome.exit_code = 128 + WTERMSIG(status);
        outcome.error = "terminated by signal " + std::to_string(WTERMSIG(status));
    }
    return outcome;
}

} // namespace motune::detail
